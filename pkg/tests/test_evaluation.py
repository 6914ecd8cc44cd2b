from __future__ import annotations

import random

import pytest

from mistforge.code_model import Language, parse
from mistforge.corpus import CorpusSample
from mistforge.engine import AttackOutcome, AttackResources, EngineConfig, Individual
from mistforge.errors import InputError
from mistforge.evaluation import (
    ASR_PRIORITY_WEIGHTS,
    EQUAL_WEIGHTS,
    TopsisInput,
    attack_samples,
    build_augmented_set,
    compute_metrics,
    filter_subset_x,
    metrics_from_records,
    rq3_protocol,
    split_halves,
    topsis_rank,
)
from mistforge.identifier_attack import RenameMap, RenamePair
from mistforge.model_interface import ClassifierVerdict
from mistforge.objectives import ObjectiveVector
from mistforge.style_profile import OriginLabel

from .oracles import topsis_worksheet


class OracleModel:
    """Predicts the planted label by name pool membership; query-counted."""

    def __init__(self):
        self.query_count = 0

    def classify(self, language, source):
        self.query_count += 1
        p = 0.9 if "_" in source or any(
            tok in source for tok in ("Value", "Total", "Items")) else 0.1
        return ClassifierVerdict(prob_human=1 - p, prob_llm=p)


class TestFilterSubsetX:
    def test_reasons(self, reference_model):
        samples = [
            CorpusSample("bad-parse", Language.JAVA, OriginLabel.LLM, "int x = ;"),
            CorpusSample("no-ident", Language.PYTHON, OriginLabel.LLM, "pass\n"),
        ]
        pairs = [(s, s.snippet()) for s in samples]
        kept, excluded = filter_subset_x(pairs, reference_model)
        assert not kept
        assert {e.sample_id: e.reason for e in excluded} == {
            "bad-parse": "parse", "no-ident": "no-identifier"}

    def test_misclassified_excluded(self, reference_model, fixtures_100):
        sample = fixtures_100[0]
        wrong = CorpusSample(sample.id, sample.language,
                             sample.label.opposite, sample.code)
        kept, excluded = filter_subset_x([(wrong, wrong.snippet())],
                                         reference_model)
        assert not kept
        assert excluded[0].reason == "wrong-prediction"

    def test_planted_corpus_passes(self, reference_model, fixtures_100):
        pairs = [(s, s.snippet()) for s in fixtures_100]
        kept, excluded = filter_subset_x(pairs, reference_model)
        assert len(kept) >= 95


def _outcome(success, n_var=8, changed=2, queries=50, sd=0.5, ed=12):
    snippet = parse("x = 1\n", Language.PYTHON)
    gene = RenameMap(pairs=tuple(
        RenamePair(f"v{i}", f"w{i}" if i < changed else f"v{i}")
        for i in range(n_var)))
    ind = Individual(snippet=snippet, gene=gene,
                     objectives=ObjectiveVector(0.2, sd, ed))
    return AttackOutcome(
        success=success,
        adversarial=snippet if success else None,
        queries_to_first_success=queries if success else None,
        total_queries=queries + 10,
        best_confidence_drop=0.4,
        final_population=[ind],
        first_success_individual=ind if success else None,
        best_individual=ind,
        n_var=n_var,
    )


class TestComputeMetrics:
    def test_asr_three_of_five(self):
        outcomes = [_outcome(True), _outcome(True), _outcome(True),
                    _outcome(False), _outcome(False)]
        originals = [o.final_population[0].snippet for o in outcomes]
        report = compute_metrics(outcomes, originals)
        assert report.asr == pytest.approx(0.6)
        assert report.n_success == 3

    def test_icr_quarter(self):
        outcomes = [_outcome(True, n_var=8, changed=2)]
        report = compute_metrics(outcomes, [outcomes[0].final_population[0].snippet])
        assert report.icr == pytest.approx(0.25)

    def test_amq_over_successes_only(self):
        outcomes = [_outcome(True, queries=10), _outcome(False, queries=99),
                    _outcome(True, queries=30)]
        report = compute_metrics(outcomes, [None, None, None])
        assert report.amq == pytest.approx(20.0)

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            compute_metrics([], [])

    def test_records_roundtrip_matches_independent_aggregation(self):
        # oracle: plain-dict re-aggregation, written against the JSONL schema
        records = [
            {"skipped": False, "success": True, "queries_to_first_success": 12,
             "icr": 0.25, "sd": 0.5, "ed": 10},
            {"skipped": False, "success": True, "queries_to_first_success": 20,
             "icr": 0.75, "sd": 1.5, "ed": 30},
            {"skipped": False, "success": False},
            {"skipped": True, "reason": "parse"},
        ]
        report = metrics_from_records(records)
        ok = [r for r in records if not r.get("skipped")]
        wins = [r for r in ok if r.get("success")]
        assert report.asr == len(wins) / len(ok)
        assert report.amq == sum(r["queries_to_first_success"] for r in wins) / len(wins)
        assert report.icr == sum(r["icr"] for r in wins) / len(wins)
        assert report.sd_mean == sum(r["sd"] for r in wins) / len(wins)
        assert report.ed_mean == sum(r["ed"] for r in wins) / len(wins)
        assert report.n_skipped == 1


HAND_ROWS = [("alpha", 0.60, 0.20, 0.50, 100.0, 60.0),
             ("beta", 0.40, 0.10, 0.30, 80.0, 40.0),
             ("gamma", 0.20, 0.40, 0.90, 150.0, 200.0)]

# frozen from the plain-python worksheet (see oracles.topsis_worksheet)
HAND_EQUAL = {"alpha": 0.768045483531, "beta": 0.821134246533, "gamma": 0.0}
HAND_ASR = {"alpha": 0.912755089575, "beta": 0.555171514885, "gamma": 0.0}


class TestTopsis:
    def test_hand_matrix_equal_weights(self):
        scores = {name: score for name, score, _ in
                  topsis_rank(TopsisInput(HAND_ROWS, EQUAL_WEIGHTS))}
        for name, expected in HAND_EQUAL.items():
            assert scores[name] == pytest.approx(expected, abs=1e-9)

    def test_hand_matrix_asr_priority(self):
        scores = {name: score for name, score, _ in
                  topsis_rank(TopsisInput(HAND_ROWS, ASR_PRIORITY_WEIGHTS))}
        for name, expected in HAND_ASR.items():
            assert scores[name] == pytest.approx(expected, abs=1e-9)

    def test_matches_worksheet_oracle_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(50):
            rows = [(f"m{i}", rng.uniform(0.05, 1), rng.uniform(0.05, 1),
                     rng.uniform(0.05, 2), rng.uniform(1, 300),
                     rng.uniform(1, 400)) for i in range(4)]
            got = {n: s for n, s, _ in topsis_rank(TopsisInput(rows, EQUAL_WEIGHTS))}
            expected = topsis_worksheet(rows, EQUAL_WEIGHTS,
                                        (True, False, False, False, False))
            for (name, *_), want in zip(rows, expected):
                assert got[name] == pytest.approx(want, abs=1e-12)

    def test_two_alternative_domination_gives_one_and_zero(self):
        rows = [("winner", 0.9, 0.1, 0.2, 10.0, 5.0),
                ("loser", 0.1, 0.9, 1.5, 200.0, 300.0)]
        scores = {n: s for n, s, _ in topsis_rank(TopsisInput(rows, EQUAL_WEIGHTS))}
        assert scores["winner"] == pytest.approx(1.0)
        assert scores["loser"] == pytest.approx(0.0)

    def test_rank_invariant_under_positive_column_scaling(self):
        rng = random.Random(19)
        rows = [(f"m{i}", rng.uniform(0.1, 1), rng.uniform(0.1, 1),
                 rng.uniform(0.1, 2), rng.uniform(1, 300), rng.uniform(1, 400))
                for i in range(5)]
        base_ranks = {n: r for n, _, r in topsis_rank(TopsisInput(rows, EQUAL_WEIGHTS))}
        scaled = [(n, a * 3.7, i, s * 0.25, e * 11.0, q) for n, a, i, s, e, q in rows]
        scaled_ranks = {n: r for n, _, r in topsis_rank(TopsisInput(scaled, EQUAL_WEIGHTS))}
        assert base_ranks == scaled_ranks

    def test_permutation_invariance(self):
        ranking_a = topsis_rank(TopsisInput(HAND_ROWS, EQUAL_WEIGHTS))
        ranking_b = topsis_rank(TopsisInput(list(reversed(HAND_ROWS)), EQUAL_WEIGHTS))
        assert dict((n, s) for n, s, _ in ranking_a) == \
            dict((n, s) for n, s, _ in ranking_b)

    def test_all_zero_column_rejected(self):
        rows = [("a", 0.5, 0.0, 0.5, 10.0, 5.0), ("b", 0.7, 0.0, 0.2, 8.0, 4.0)]
        with pytest.raises(InputError, match="icr"):
            topsis_rank(TopsisInput(rows, EQUAL_WEIGHTS))

    def test_weights_must_sum_to_one(self):
        with pytest.raises(InputError):
            TopsisInput(HAND_ROWS, (0.5, 0.5, 0.5, 0.5, 0.5))


class TestSplit:
    def test_halves_are_disjoint_and_stratified(self, fixtures_100):
        s1, s2 = split_halves(fixtures_100, seed=7)
        assert not ({s.id for s in s1} & {s.id for s in s2})
        assert len(s1) + len(s2) == len(fixtures_100)
        for half in (s1, s2):
            llm = sum(1 for s in half if s.label is OriginLabel.LLM)
            assert abs(llm - len(half) / 2) <= 1

    def test_split_is_seeded(self, fixtures_100):
        a1, a2 = split_halves(fixtures_100, seed=7)
        b1, b2 = split_halves(fixtures_100, seed=7)
        assert [s.id for s in a1] == [s.id for s in b1]


@pytest.fixture(scope="module")
def small_attack_setup(reference_model, style_table, providers, embedder,
                       fixtures_100):
    resources = {lang: AttackResources(reference_model, style_table,
                                       providers[lang], embedder)
                 for lang in Language}
    samples = [s for s in fixtures_100 if s.language is Language.PYTHON][:10]
    return resources, samples


class TestAttackSamples:
    def test_results_keep_input_order_and_are_job_invariant(self, small_attack_setup):
        resources, samples = small_attack_setup
        pairs = [(s, s.snippet()) for s in samples]
        seq, _ = attack_samples(pairs, EngineConfig(), resources, seed=7, jobs=1)
        par, _ = attack_samples(pairs, EngineConfig(), resources, seed=7, jobs=4)
        assert [s.id for s, _ in seq] == [s.id for s, _ in par]
        assert [o.total_queries for _, o in seq] == [o.total_queries for _, o in par]
        assert [o.adversarial.source if o.adversarial else None for _, o in seq] == \
            [o.adversarial.source if o.adversarial else None for _, o in par]


class TestAugmentedSet:
    def test_mix_arithmetic(self):
        # 100 adversarial -> round(7/3 * 100) = 233 originals
        assert round(7.0 / 3.0 * 100) == 233

    def test_small_real_run(self, small_attack_setup, fixtures_100):
        resources, _ = small_attack_setup
        train = [s for s in fixtures_100 if s.language is Language.PYTHON][:30]
        result = build_augmented_set(train, EngineConfig(), resources, seed=7,
                                     attack_fraction=0.2)
        assert result.n_adversarial >= 1
        assert result.n_original == min(
            round(7 / 3 * result.n_adversarial), len(train))
        by_id = {s.id: s for s in train}
        for sample in result.samples:
            if sample.id.endswith("-adv"):
                source = by_id[sample.id[:-4]]
                assert sample.label is source.label  # label preserved
                assert sample.code != source.code

    def test_deterministic(self, small_attack_setup, fixtures_100):
        resources, _ = small_attack_setup
        train = [s for s in fixtures_100 if s.language is Language.PYTHON][:20]
        first = build_augmented_set(train, EngineConfig(), resources, seed=7,
                                    attack_fraction=0.2)
        second = build_augmented_set(train, EngineConfig(), resources, seed=7,
                                     attack_fraction=0.2)
        assert [s.code for s in first.samples] == [s.code for s in second.samples]


@pytest.fixture(scope="module")
def matrix_pair(reference_model, style_table, providers, embedder,
                fixtures_100):
    samples = [s for s in fixtures_100 if s.language is Language.PYTHON][:12]

    def resources_for(cfg):
        return {lang: AttackResources(reference_model, style_table,
                                      providers[lang], embedder)
                for lang in Language}

    attackers = {"mist": EngineConfig(),
                 "rename-only": EngineConfig(rename_rate=1.0)}
    run = lambda: rq3_protocol(samples, attackers, reference_model,
                               resources_for, seed=7)
    return run(), run()


class TestRq3:

    def test_base_row_is_zero_by_construction(self, matrix_pair):
        matrix, _ = matrix_pair
        for attacker in matrix.attackers:
            value = matrix.rows["base"][attacker]
            assert value == 0.0 or value is None

    def test_M_plus_improves_on_own_attack(self, matrix_pair):
        matrix, _ = matrix_pair
        assert matrix.rows["mist"]["mist"] is not None
        assert matrix.rows["mist"]["mist"] > 0.0

    def test_bit_exact_reproducibility(self, matrix_pair):
        first, second = matrix_pair
        assert first.to_csv() == second.to_csv()

    def test_csv_shape(self, matrix_pair):
        matrix, _ = matrix_pair
        lines = matrix.to_csv().strip().splitlines()
        assert lines[0] == "train_source,mist,rename-only"
        assert [line.split(",")[0] for line in lines[1:]] == \
            ["base", "mist", "rename-only"]
