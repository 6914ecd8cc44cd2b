from __future__ import annotations

import subprocess
import sys

import pytest

from mistforge.code_model import Language
from mistforge.engine import AttackResources
from mistforge.fixtures import fixture_corpus, training_corpus
from mistforge.identifier_attack import FrequencyCandidateProvider
from mistforge.model_interface import train_reference
from mistforge.objectives import TrigramEmbedder
from mistforge.style_profile import build_style_table


@pytest.fixture(scope="session")
def train_corpus():
    return training_corpus()


@pytest.fixture(scope="session")
def train_pairs(train_corpus):
    return [(s.snippet(), s.label) for s in train_corpus]


@pytest.fixture(scope="session")
def reference_model(train_pairs):
    model, report = train_reference(train_pairs)
    assert report.accuracy >= 0.95
    return model


@pytest.fixture(scope="session")
def style_table(train_pairs):
    return build_style_table(train_pairs)


@pytest.fixture(scope="session")
def embedder():
    return TrigramEmbedder()


@pytest.fixture(scope="session")
def providers(train_pairs):
    snippets = [snippet for snippet, _ in train_pairs]
    return {lang: FrequencyCandidateProvider(snippets, lang)
            for lang in Language}


@pytest.fixture(scope="session")
def resources(reference_model, style_table, providers, embedder):
    return {lang: AttackResources(reference_model, style_table,
                                  providers[lang], embedder)
            for lang in Language}


@pytest.fixture(scope="session")
def fixtures_100():
    return fixture_corpus()


def run_python(source: str, timeout: float = 10.0) -> tuple[str, int]:
    proc = subprocess.run([sys.executable, "-c", source], capture_output=True,
                          text=True, timeout=timeout)
    return proc.stdout, proc.returncode
