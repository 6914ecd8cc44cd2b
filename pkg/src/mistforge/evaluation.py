"""Attack metrics, TOPSIS ranking, cross-attack robustness protocol, and
the adversarial-training data pipeline.

Metric definitions: ASR is the success fraction over the eligible subset;
AMQ averages queries-to-first-success over successful attacks only (and
includes the importance-scoring queries spent before the search loop);
ICR/SD/ED average over successful adversarial samples against their
originals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .code_model import CodeSnippet, Language
from .corpus import CorpusSample
from .engine import (
    AttackOutcome,
    AttackResources,
    EngineConfig,
    SkippedSample,
    attack,
    select_training_sample,
)
from .errors import InputError
from .model_interface import TargetModel, accuracy_on, fine_tune_reference
from .style_profile import OriginLabel

Resources = Union[AttackResources, Mapping[Language, AttackResources]]


def resolve_resources(res: Resources, language: Language) -> AttackResources:
    if isinstance(res, AttackResources):
        return res
    try:
        return res[language]
    except KeyError as exc:
        raise InputError(f"no attack resources for {language.value}") from exc


# ---------------------------------------------------------------------------
# Subset-X filtering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Exclusion:
    sample_id: str
    reason: str  # parse | no-identifier | wrong-prediction


def filter_subset_x(
    test_set: list[tuple[CorpusSample, CodeSnippet]], model: TargetModel
) -> tuple[list[tuple[CorpusSample, CodeSnippet]], list[Exclusion]]:
    """Keep samples that parse, contain at least one identifier, and are
    correctly predicted by the target model."""
    kept: list[tuple[CorpusSample, CodeSnippet]] = []
    excluded: list[Exclusion] = []
    for sample, snippet in test_set:
        if not snippet.parse_ok:
            excluded.append(Exclusion(sample.id, "parse"))
            continue
        if len(snippet.identifiers) == 0:
            excluded.append(Exclusion(sample.id, "no-identifier"))
            continue
        verdict = model.classify(snippet.language, snippet.source)
        if verdict.predicted is not sample.label:
            excluded.append(Exclusion(sample.id, "wrong-prediction"))
            continue
        kept.append((sample, snippet))
    return kept, excluded


# ---------------------------------------------------------------------------
# Metrics aggregation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricsReport:
    asr: float
    amq: float
    icr: float
    sd_mean: float
    ed_mean: float
    n_samples: int
    n_success: int
    n_skipped: int

    def to_dict(self) -> dict:
        return {
            "asr": self.asr, "amq": self.amq, "icr": self.icr,
            "sd_mean": self.sd_mean, "ed_mean": self.ed_mean,
            "n_samples": self.n_samples, "n_success": self.n_success,
            "n_skipped": self.n_skipped,
        }


def compute_metrics(outcomes: Sequence[AttackOutcome],
                    originals: Sequence[CodeSnippet],
                    n_skipped: int = 0) -> MetricsReport:
    if not outcomes:
        raise InputError("no outcomes to aggregate")
    if len(outcomes) != len(originals):
        raise InputError("outcomes and originals are misaligned")
    successes = [o for o in outcomes if o.success]
    icr_values: list[float] = []
    sd_values: list[float] = []
    ed_values: list[float] = []
    amq_values: list[float] = []
    for outcome in successes:
        ind = outcome.first_success_individual
        icr_values.append(ind.gene.changed_count / outcome.n_var)
        sd_values.append(ind.objectives.f2_semantic_distance)
        ed_values.append(float(ind.objectives.f3_edit_distance))
        amq_values.append(float(outcome.queries_to_first_success))
    mean = lambda xs: sum(xs) / len(xs) if xs else 0.0
    return MetricsReport(
        asr=len(successes) / len(outcomes),
        amq=mean(amq_values),
        icr=mean(icr_values),
        sd_mean=mean(sd_values),
        ed_mean=mean(ed_values),
        n_samples=len(outcomes),
        n_success=len(successes),
        n_skipped=n_skipped,
    )


def metrics_from_records(records: Sequence[dict]) -> MetricsReport:
    """Aggregate an attack-outcome JSONL stream (the CLI wire format)."""
    attacked = [r for r in records if not r.get("skipped")]
    skipped = [r for r in records if r.get("skipped")]
    if not attacked:
        raise InputError("no attack outcomes in the record stream")
    successes = [r for r in attacked if r.get("success")]
    mean = lambda xs: sum(xs) / len(xs) if xs else 0.0
    return MetricsReport(
        asr=len(successes) / len(attacked),
        amq=mean([float(r["queries_to_first_success"]) for r in successes]),
        icr=mean([float(r["icr"]) for r in successes]),
        sd_mean=mean([float(r["sd"]) for r in successes]),
        ed_mean=mean([float(r["ed"]) for r in successes]),
        n_samples=len(attacked),
        n_success=len(successes),
        n_skipped=len(skipped),
    )


# ---------------------------------------------------------------------------
# TOPSIS
# ---------------------------------------------------------------------------

EQUAL_WEIGHTS = (0.2, 0.2, 0.2, 0.2, 0.2)
ASR_PRIORITY_WEIGHTS = (0.6, 0.1, 0.1, 0.1, 0.1)

METRIC_COLUMNS = ("asr", "icr", "sd", "ed", "amq")
# ASR is a benefit column; everything else is a cost
BENEFIT = (True, False, False, False, False)


@dataclass(frozen=True)
class TopsisInput:
    alternatives: list[tuple[str, float, float, float, float, float]]
    weights: tuple[float, ...] = EQUAL_WEIGHTS

    def __post_init__(self):
        if len(self.weights) != 5:
            raise InputError("TOPSIS needs exactly 5 weights")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise InputError("TOPSIS weights must sum to 1")


def topsis_rank(inp: TopsisInput) -> list[tuple[str, float, int]]:
    """Vector-normalize columns, weight, score by closeness to the ideal:
    score = D- / (D+ + D-), ranked descending."""
    if len(inp.alternatives) < 2:
        raise InputError("TOPSIS needs at least 2 alternatives")
    names = [a[0] for a in inp.alternatives]
    matrix = np.asarray([a[1:] for a in inp.alternatives], dtype=np.float64)
    norms = np.sqrt((matrix ** 2).sum(axis=0))
    for j, norm in enumerate(norms):
        if norm == 0.0:
            raise InputError(f"column {METRIC_COLUMNS[j]!r} is all zeros")
    weighted = matrix / norms * np.asarray(inp.weights)
    pis = np.where(BENEFIT, weighted.max(axis=0), weighted.min(axis=0))
    nis = np.where(BENEFIT, weighted.min(axis=0), weighted.max(axis=0))
    d_plus = np.sqrt(((weighted - pis) ** 2).sum(axis=1))
    d_minus = np.sqrt(((weighted - nis) ** 2).sum(axis=1))
    scores = d_minus / (d_plus + d_minus)
    order = sorted(range(len(names)), key=lambda i: (-scores[i], names[i]))
    ranks = {idx: rank + 1 for rank, idx in enumerate(order)}
    return [(names[i], float(scores[i]), ranks[i]) for i in range(len(names))]


# ---------------------------------------------------------------------------
# Attack sweep helpers
# ---------------------------------------------------------------------------

def derive_seed(seed: int, sample_id: str) -> int:
    import hashlib

    digest = hashlib.sha256(f"{seed}:{sample_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def attack_samples(
    samples: list[tuple[CorpusSample, CodeSnippet]],
    cfg: EngineConfig,
    res: Resources,
    seed: int,
    on_outcome: Optional[Callable[[CorpusSample, AttackOutcome], None]] = None,
    jobs: int = 1,
) -> tuple[list[tuple[CorpusSample, AttackOutcome]], list[Exclusion]]:
    """Attack each sample with a per-sample RNG stream derived from
    (seed, sample id); skipped samples are reported, not raised. Results
    keep input order regardless of worker count, so artifacts are stable
    under any --jobs setting."""

    def run_one(item: tuple[CorpusSample, CodeSnippet]):
        sample, snippet = item
        sample_cfg = EngineConfig(
            population_size=cfg.population_size, max_iter=cfg.max_iter,
            rename_rate=cfg.rename_rate, top_k=cfg.top_k,
            rng_seed=derive_seed(seed, sample.id),
            stop_on_first_success=cfg.stop_on_first_success,
        )
        try:
            sample_res = resolve_resources(res, sample.language)
            return sample, attack(snippet, sample.label, sample_cfg, sample_res), None
        except SkippedSample as skip:
            return sample, None, skip.reason

    if jobs > 1 and len(samples) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, samples))
    else:
        results = [run_one(item) for item in samples]

    outcomes: list[tuple[CorpusSample, AttackOutcome]] = []
    skipped: list[Exclusion] = []
    for sample, outcome, reason in results:
        if outcome is None:
            skipped.append(Exclusion(sample.id, reason))
            continue
        outcomes.append((sample, outcome))
        if on_outcome is not None:
            on_outcome(sample, outcome)
    return outcomes, skipped


# ---------------------------------------------------------------------------
# Adversarial-training data pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AugmentedSet:
    samples: list[CorpusSample]          # mixed training records
    n_adversarial: int
    n_original: int
    warning: Optional[str] = None


def build_augmented_set(
    training_set: list[CorpusSample],
    cfg: EngineConfig,
    res: Resources,
    seed: int,
    attack_fraction: float = 0.1,
    original_per_adversarial: float = 7.0 / 3.0,
) -> AugmentedSet:
    """Attack a seeded 10% sample of the training set, keep one
    adversarial sample per target (first success, else max confidence
    drop), then mix with randomly drawn originals at 70/30."""
    rng = random.Random(seed)
    targets = list(training_set)
    rng.shuffle(targets)
    n_targets = max(1, round(len(training_set) * attack_fraction))
    targets = targets[:n_targets]
    pairs = [(s, s.snippet()) for s in targets]
    outcomes, _skipped = attack_samples(pairs, cfg, res, seed)
    adversarial: list[CorpusSample] = []
    for sample, outcome in outcomes:
        chosen = select_training_sample(outcome)
        if chosen is None or chosen.snippet.source == sample.code:
            continue
        adversarial.append(CorpusSample(
            id=f"{sample.id}-adv",
            language=sample.language,
            label=sample.label,  # adversarial keeps the original's label
            code=chosen.snippet.source,
        ))
    if not adversarial:
        return AugmentedSet(samples=list(training_set), n_adversarial=0,
                            n_original=len(training_set),
                            warning="no adversarial samples were generated")
    n_original = round(original_per_adversarial * len(adversarial))
    pool = list(training_set)
    rng.shuffle(pool)
    originals = pool[: min(n_original, len(pool))]
    mixed = adversarial + originals
    return AugmentedSet(samples=mixed, n_adversarial=len(adversarial),
                        n_original=len(originals))


# ---------------------------------------------------------------------------
# Cross-attack robustness protocol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RobustnessMatrix:
    attackers: list[str]
    # rows: "base" + one per training source; columns: one per eval source
    rows: dict[str, dict[str, Optional[float]]]
    eval_sizes: dict[str, int]

    def to_csv(self) -> str:
        header = "train_source," + ",".join(self.attackers)
        lines = [header]
        for row_name in ["base"] + self.attackers:
            cells = []
            for col in self.attackers:
                value = self.rows[row_name].get(col)
                cells.append("" if value is None else f"{value:.6f}")
            lines.append(f"{row_name}," + ",".join(cells))
        return "\n".join(lines) + "\n"


def split_halves(samples: list[CorpusSample],
                 seed: int) -> tuple[list[CorpusSample], list[CorpusSample]]:
    """Seeded, label-stratified split into two equal halves."""
    rng = random.Random(seed)
    by_label: dict[OriginLabel, list[CorpusSample]] = {}
    for sample in samples:
        by_label.setdefault(sample.label, []).append(sample)
    s1: list[CorpusSample] = []
    s2: list[CorpusSample] = []
    for label in sorted(by_label, key=lambda l: l.value):
        bucket = by_label[label]
        rng.shuffle(bucket)
        half = len(bucket) // 2
        s1.extend(bucket[:half])
        s2.extend(bucket[half:])
    return s1, s2


def rq3_protocol(
    test_set: list[CorpusSample],
    attackers: dict[str, EngineConfig],
    model,
    resources_for: Callable[[EngineConfig], Resources],
    seed: int,
    fine_tune_epochs: int = 1,
) -> RobustnessMatrix:
    """Split-train-eval robustness comparison.

    S1 provides one adversarial sample per target per attacker (first
    success or max drop) as that attacker's fine-tuning set; S2's
    successful adversarial samples form that attacker's evaluation set,
    on which the un-fine-tuned model scores 0 by construction.
    """
    s1, s2 = split_halves(test_set, seed)
    assert not ({s.id for s in s1} & {s.id for s in s2})
    train_sets: dict[str, list[tuple[CodeSnippet, OriginLabel]]] = {}
    eval_sets: dict[str, list[tuple[CodeSnippet, OriginLabel]]] = {}
    for name in sorted(attackers):
        cfg = attackers[name]
        res = resources_for(cfg)
        s1_pairs = [(s, s.snippet()) for s in s1]
        s1_outcomes, _ = attack_samples(s1_pairs, cfg, res, derive_seed(seed, f"{name}-s1"))
        train_sets[name] = [
            (chosen.snippet, sample.label)
            for sample, outcome in s1_outcomes
            if (chosen := select_training_sample(outcome)) is not None
        ]
        s2_pairs = [(s, s.snippet()) for s in s2]
        s2_outcomes, _ = attack_samples(s2_pairs, cfg, res, derive_seed(seed, f"{name}-s2"))
        eval_sets[name] = [
            (outcome.adversarial, sample.label)
            for sample, outcome in s2_outcomes
            if outcome.success
        ]
    names = sorted(attackers)
    rows: dict[str, dict[str, Optional[float]]] = {}
    rows["base"] = {
        name: (accuracy_on(model, eval_sets[name]) if eval_sets[name] else None)
        for name in names
    }
    for train_name in names:
        tuned = fine_tune_reference(model, train_sets[train_name],
                                    epochs=fine_tune_epochs)
        rows[train_name] = {
            name: (accuracy_on(tuned, eval_sets[name]) if eval_sets[name] else None)
            for name in names
        }
    return RobustnessMatrix(
        attackers=names, rows=rows,
        eval_sizes={name: len(eval_sets[name]) for name in names},
    )
