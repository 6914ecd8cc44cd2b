from __future__ import annotations

import pytest

from mistforge.code_model import (
    Language,
    TokenEdit,
    apply_edits,
    extract_identifiers,
    is_valid_identifier,
    parse,
)
from mistforge.errors import InputError, PreconditionError

from .oracles import regex_identifier_count, regex_occurrences


class TestParse:
    def test_minimal_python_function(self):
        snippet = parse("def f(a):\n    return a", Language.PYTHON)
        assert snippet.parse_ok
        assert snippet.identifiers.names() == ["f", "a"]

    def test_java_syntax_error(self):
        assert not parse("int x = ;", Language.JAVA).parse_ok

    def test_python_syntax_error(self):
        assert not parse("def f(:\n  pass", Language.PYTHON).parse_ok

    def test_identifier_count_matches_regex_oracle(self):
        source = (
            "public class Counter {\n"
            "    public static int tally(int[] items, int floor) {\n"
            "        int total = 0;\n"
            "        int pos = 0;\n"
            "        while (pos < items.length) {\n"
            "            if (items[pos] > floor) {\n"
            "                total = total + 1;\n"
            "            }\n"
            "            pos = pos + 1;\n"
            "        }\n"
            "        return total;\n"
            "    }\n"
            "}\n"
        )
        snippet = parse(source, Language.JAVA)
        assert snippet.parse_ok
        assert snippet.identifiers.n_var == regex_identifier_count(source) == 6

    def test_unparsed_snippet_has_empty_table(self):
        snippet = parse("while (", Language.JAVA)
        assert not snippet.parse_ok
        assert len(snippet.identifiers) == 0


class TestExtractIdentifiers:
    def test_first_occurrence_order(self):
        snippet = parse("v1 = 1\nv2 = v1 + 1\nv3 = v2 + v1\n", Language.PYTHON)
        assert snippet.identifiers.names() == ["v1", "v2", "v3"]

    def test_no_identifiers(self):
        snippet = parse("pass", Language.PYTHON)
        assert snippet.identifiers.names() == []

    def test_name_reused_across_scopes_collects_all_spans(self):
        source = (
            "def first(count):\n"
            "    return count + 1\n"
            "\n"
            "def second(count):\n"
            "    return count * 2\n"
        )
        snippet = parse(source, Language.PYTHON)
        entry = snippet.identifiers.get("count")
        assert entry is not None
        assert len(entry.spans) == regex_occurrences(source, "count") == 4

    def test_requires_parse_ok(self):
        snippet = parse("int x = ;", Language.JAVA)
        with pytest.raises(PreconditionError):
            extract_identifiers(snippet)

    def test_keywords_builtins_and_imports_excluded(self):
        source = (
            "import math\n"
            "\n"
            "def area(radius):\n"
            "    return math.pi * radius * radius\n"
        )
        names = parse(source, Language.PYTHON).identifiers.names()
        assert names == ["area", "radius"]

    def test_external_attribute_names_excluded_in_java(self):
        source = (
            "public class A {\n"
            "    public static int size(int[] xs) {\n"
            "        System.out.println(\"x\");\n"
            "        return xs.length;\n"
            "    }\n"
            "}\n"
        )
        names = parse(source, Language.JAVA).identifiers.names()
        assert names == ["A", "size", "xs"]

    def test_declared_field_renames_through_this(self):
        source = (
            "public class Acc {\n"
            "    private int total;\n"
            "    public void add(int v) {\n"
            "        this.total = this.total + v;\n"
            "    }\n"
            "}\n"
        )
        snippet = parse(source, Language.JAVA)
        entry = snippet.identifiers.get("total")
        assert len(entry.spans) == 3


class TestApplyEdits:
    def test_rename_every_span(self):
        snippet = parse("a = a + 1", Language.PYTHON)
        entry = snippet.identifiers.get("a")
        edited = apply_edits(snippet, [TokenEdit(s, "b") for s in entry.spans])
        assert edited.source == "b = b + 1"
        assert edited.parse_ok

    def test_empty_edit_list_is_identity(self):
        snippet = parse("x = 1\n", Language.PYTHON)
        assert apply_edits(snippet, []).source == snippet.source

    def test_edit_to_invalid_source_reports_parse_failure(self):
        snippet = parse("for i in range(3):\n    pass\n", Language.PYTHON)
        bad = apply_edits(snippet, [TokenEdit((0, 3), "for for")])
        assert not bad.parse_ok

    def test_overlapping_spans_rejected(self):
        snippet = parse("abcd = 1", Language.PYTHON)
        with pytest.raises(InputError):
            apply_edits(snippet, [TokenEdit((0, 3), "x"), TokenEdit((2, 4), "y")])


class TestInvariants:
    def test_spans_slice_to_names_across_fixture_corpus(self, fixtures_100):
        for sample in fixtures_100:
            snippet = sample.snippet()
            assert snippet.parse_ok, sample.id
            for entry in snippet.identifiers.entries:
                for span in entry.spans:
                    assert snippet.slice(span) == entry.name

    def test_extraction_is_deterministic(self, fixtures_100):
        for sample in fixtures_100[:10]:
            snippet = sample.snippet()
            first = extract_identifiers(snippet)
            second = extract_identifiers(snippet)
            assert first == second

    def test_identity_reparse_across_corpus(self, fixtures_100):
        for sample in fixtures_100:
            snippet = sample.snippet()
            assert apply_edits(snippet, []).parse_ok


class TestIdentifierValidity:
    @pytest.mark.parametrize("name,language,ok", [
        ("count", Language.PYTHON, True),
        ("for", Language.PYTHON, False),
        ("2bad", Language.PYTHON, False),
        ("_x9", Language.PYTHON, True),
        ("value$", Language.JAVA, True),
        ("class", Language.JAVA, False),
        ("null", Language.JAVA, False),
        ("", Language.JAVA, False),
    ])
    def test_lexical_rule(self, name, language, ok):
        assert is_valid_identifier(name, language) is ok
