from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mistforge.code_model import Language, parse
from mistforge.identifier_attack import RenameMap, RenamePair
from mistforge.objectives import (
    ObjectiveVector,
    adversarial_loss,
    cosine,
    dominates,
    edit_distance,
    levenshtein,
    semantic_distance,
)
from mistforge.style_profile import OriginLabel

from .oracles import dp_levenshtein

vectors = st.builds(
    ObjectiveVector,
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 10, allow_nan=False),
    st.integers(0, 500),
)


class TestDominates:
    def test_strictly_better_in_one(self):
        assert dominates(ObjectiveVector(0.1, 0.2, 3), ObjectiveVector(0.2, 0.2, 3))

    def test_incomparable(self):
        assert not dominates(ObjectiveVector(0.1, 0.5, 3), ObjectiveVector(0.2, 0.2, 3))
        assert not dominates(ObjectiveVector(0.2, 0.2, 3), ObjectiveVector(0.1, 0.5, 3))

    @given(vectors)
    def test_irreflexive(self, v):
        assert not dominates(v, v)

    @given(vectors, vectors, vectors)
    def test_transitive(self, a, b, c):
        if dominates(a, b) and dominates(b, c):
            assert dominates(a, c)

    @given(vectors, vectors)
    def test_asymmetric(self, a, b):
        if dominates(a, b):
            assert not dominates(b, a)


class TestEditDistance:
    def test_identical(self):
        assert edit_distance("same text", "same text") == 0

    def test_kitten_sitting(self):
        assert edit_distance("kitten", "sitting") == dp_levenshtein("kitten", "sitting") == 3

    def test_compound_assign_pair(self):
        # full-matrix DP gives 3 for this pair: substitute '+'->'=',
        # substitute '='->'x', insert '+'
        assert edit_distance("x+=y", "x=x+y") == dp_levenshtein("x+=y", "x=x+y") == 3

    def test_matches_dp_oracle_on_random_pairs(self):
        rng = random.Random(17)
        alphabet = "ab(){};=+ \n"
        for _ in range(300):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            assert levenshtein(a, b) == dp_levenshtein(a, b), (a, b)

    def test_metric_properties_on_random_triples(self):
        rng = random.Random(23)
        words = ["".join(rng.choice("xyz_01") for _ in range(rng.randint(0, 12)))
                 for _ in range(30)]
        for _ in range(200):
            a, b, c = rng.choice(words), rng.choice(words), rng.choice(words)
            assert levenshtein(a, b) == levenshtein(b, a)
            assert (levenshtein(a, b) == 0) == (a == b)
            assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)

    def test_unicode_counts_characters(self):
        assert levenshtein("café", "cafe") == 1


class TestSemanticDistance:
    def test_identity_gene_is_exactly_zero(self, embedder):
        snippet = parse("def f(a, b):\n    return a + b\n", Language.PYTHON)
        gene = RenameMap.identity(snippet.identifiers)
        assert semantic_distance(snippet, gene, embedder) == 0.0

    def test_orthogonal_embeddings_cost_one(self):
        class AxisEmbedder:
            dimension = 2

            def embed(self, token):
                return np.array([1.0, 0.0]) if token == "a" else np.array([0.0, 1.0])

        snippet = parse("a = 1\n", Language.PYTHON)
        gene = RenameMap(pairs=(RenamePair("a", "b"),))
        assert semantic_distance(snippet, gene, AxisEmbedder()) == pytest.approx(1.0)

    def test_trigram_value_matches_manual_dot_product(self, embedder):
        snippet = parse("count = 1\nprint(count)\n", Language.PYTHON)
        gene = RenameMap(pairs=(RenamePair("count", "counter"),))
        got = semantic_distance(snippet, gene, embedder)
        u = embedder.embed("count")
        v = embedder.embed("counter")
        manual = 1.0 - float(sum(ui * vi for ui, vi in zip(u, v))) / (
            math.sqrt(float(sum(ui * ui for ui in u)))
            * math.sqrt(float(sum(vi * vi for vi in v)))
        )
        assert got == pytest.approx(manual, abs=1e-12)

    def test_similar_names_closer_than_unrelated(self, embedder):
        close = cosine(embedder.embed("count"), embedder.embed("counter"))
        far = cosine(embedder.embed("count"), embedder.embed("zebra"))
        assert close > far

    def test_embedder_is_deterministic_and_normalized(self, embedder):
        for token in ("i", "value", "total_sum", "x9"):
            v1 = embedder.embed(token)
            v2 = embedder.embed(token)
            assert (v1 == v2).all()
            assert np.linalg.norm(v1) == pytest.approx(1.0)
            assert v1.shape == (embedder.dimension,)


class _StubModel:
    def __init__(self, prob_llm):
        self._p = prob_llm
        self.query_count = 0

    def classify(self, language, source):
        from mistforge.model_interface import ClassifierVerdict

        self.query_count += 1
        return ClassifierVerdict(prob_human=1 - self._p, prob_llm=self._p)


class TestAdversarialLoss:
    def test_uniform_model_gives_half(self):
        snippet = parse("x = 1\n", Language.PYTHON)
        model = _StubModel(0.5)
        assert adversarial_loss(model, snippet, OriginLabel.LLM) == 0.5
        assert adversarial_loss(model, snippet, OriginLabel.HUMAN) == 0.5

    def test_misclassified_is_complement(self):
        snippet = parse("x = 1\n", Language.PYTHON)
        model = _StubModel(0.01)  # confident human
        assert adversarial_loss(model, snippet, OriginLabel.LLM) == pytest.approx(0.01)

    def test_high_confidence_flip_scenario(self):
        # modified code judged human-written at 99.90% while y_truth is llm
        snippet = parse("x = 1\n", Language.PYTHON)
        model = _StubModel(0.001)
        assert adversarial_loss(model, snippet, OriginLabel.LLM) == pytest.approx(0.001)

    def test_one_query_per_call(self):
        snippet = parse("x = 1\n", Language.PYTHON)
        model = _StubModel(0.5)
        adversarial_loss(model, snippet, OriginLabel.LLM)
        adversarial_loss(model, snippet, OriginLabel.LLM)
        assert model.query_count == 2
