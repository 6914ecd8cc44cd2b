from __future__ import annotations

from mistforge.code_model import Language
from mistforge.fixtures import fixture_corpus, generate_corpus, training_corpus
from mistforge.style_profile import OriginLabel

from .conftest import run_python


def test_size_and_split():
    corpus = fixture_corpus()
    by_lang = {lang: [s for s in corpus if s.language is lang]
               for lang in Language}
    assert len(by_lang[Language.PYTHON]) == 50
    assert len(by_lang[Language.JAVA]) == 50
    for lang, samples in by_lang.items():
        llm = sum(1 for s in samples if s.label is OriginLabel.LLM)
        assert llm == 25


def test_every_sample_parses():
    for sample in fixture_corpus() + training_corpus():
        assert sample.snippet().parse_ok, sample.id


def test_ids_unique():
    corpus = fixture_corpus() + training_corpus()
    ids = [s.id for s in corpus]
    assert len(ids) == len(set(ids))


def test_generation_is_deterministic():
    first = generate_corpus(Language.PYTHON, 20, seed=3)
    second = generate_corpus(Language.PYTHON, 20, seed=3)
    assert [s.code for s in first] == [s.code for s in second]
    different = generate_corpus(Language.PYTHON, 20, seed=4)
    assert [s.code for s in first] != [s.code for s in different]


def test_python_fixtures_execute_deterministically():
    python_samples = [s for s in fixture_corpus()
                      if s.language is Language.PYTHON]
    for sample in python_samples:
        out1, code1 = run_python(sample.code)
        out2, code2 = run_python(sample.code)
        assert code1 == code2 == 0, sample.id
        assert out1 == out2
        assert out1.strip(), sample.id  # prints something


def test_planted_structural_signal_separates_origins(style_table):
    from mistforge.rule_types import Rule

    for lang in Language:
        human = style_table.cell(lang, OriginLabel.HUMAN, Rule.LOOP_FOR_WHILE)
        llm = style_table.cell(lang, OriginLabel.LLM, Rule.LOOP_FOR_WHILE)
        assert human.p_a > 0.9   # humans lean while
        assert llm.p_a < 0.1     # llm leans for


def test_source_file_loading(tmp_path):
    import pytest

    from mistforge.corpus import sample_from_file
    from mistforge.errors import InputError

    py = tmp_path / "snippet.py"
    py.write_text("def f(a):\n    return a\n")
    sample = sample_from_file(py, OriginLabel.HUMAN)
    assert sample.language is Language.PYTHON
    assert sample.id == "snippet"
    assert sample.snippet().parse_ok

    java = tmp_path / "Thing.java"
    java.write_text("class Thing { int f; }")
    sample = sample_from_file(java, OriginLabel.LLM, sample_id="x1")
    assert sample.language is Language.JAVA
    assert sample.id == "x1"

    other = tmp_path / "notes.txt"
    other.write_text("hello")
    with pytest.raises(InputError):
        sample_from_file(other, OriginLabel.HUMAN)
