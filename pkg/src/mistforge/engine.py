"""The multi-objective attack engine.

One attack on one snippet: score identifier importance once, seed a
population with independent mutations of the original, then iterate
gene crossover, mixed mutation (rename with probability r, style-guided
structure transformation otherwise) and elitist NSGA-II selection over
parents plus children, minimizing (true-class confidence, semantic
drift, edit distance) jointly.

Candidate evaluations are cached by exact source text; only real model
invocations count as queries. Everything is driven by one seeded RNG
stream, so identical inputs reproduce identical outcomes bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Optional

from .code_model import CodeSnippet
from .errors import AttackStepSkipped, MistforgeError, PreconditionError, TransformFailed
from .identifier_attack import (
    CandidateProvider,
    ImportanceVector,
    RenameMap,
    importance_scores,
    propose_candidates,
    rename,
    sample_rename_target,
)
from .model_interface import ClassifierVerdict, TargetModel
from .objectives import EmbeddingProvider, ObjectiveVector, dominates, edit_distance, semantic_distance
from .rule_types import StructureEdit
from .style_profile import OriginLabel, StyleTable, site_probability
from .transform_rules import apply_site_by_ordinal, enumerate_sites

__all__ = [
    "Individual", "EngineConfig", "AttackOutcome", "AttackResources",
    "SkippedSample", "attack", "crossover", "mutate", "select",
    "select_training_sample",
]


class SkippedSample(MistforgeError):
    """The sample fails an attack precondition (parse / identifiers /
    correct prediction); it is excluded rather than attacked."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class Individual:
    snippet: CodeSnippet
    gene: RenameMap
    structure_log: tuple[StructureEdit, ...] = ()
    objectives: Optional[ObjectiveVector] = None
    first_flip: bool = False


@dataclass(frozen=True)
class EngineConfig:
    population_size: int = 30
    max_iter: Optional[int] = None  # defaults to 5 * N_var at attack time
    rename_rate: float = 0.5
    top_k: int = 40
    rng_seed: int = 7
    stop_on_first_success: bool = True

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2:
            raise PreconditionError("population size must be even and >= 2")
        if not 0.0 <= self.rename_rate <= 1.0:
            raise PreconditionError("rename rate must be in [0, 1]")

    def resolved_max_iter(self, n_var: int) -> int:
        return self.max_iter if self.max_iter is not None else 5 * n_var


@dataclass(frozen=True)
class AttackResources:
    model: TargetModel
    style: StyleTable
    provider: CandidateProvider
    embedder: EmbeddingProvider


@dataclass
class AttackOutcome:
    success: bool
    adversarial: Optional[CodeSnippet]
    queries_to_first_success: Optional[int]
    total_queries: int
    best_confidence_drop: float
    final_population: list[Individual]
    first_success_individual: Optional[Individual] = None
    best_individual: Optional[Individual] = None
    evaluated_sources: list[str] = field(default_factory=list)
    n_var: int = 0
    iterations: int = 0


def select_training_sample(outcome: AttackOutcome) -> Optional[Individual]:
    """First successful adversarial sample; when the attack failed, the
    candidate that dropped the true-class confidence the most."""
    if outcome.first_success_individual is not None:
        return outcome.first_success_individual
    return outcome.best_individual


class _AttackState:
    def __init__(self, original: CodeSnippet, y_truth: OriginLabel,
                 cfg: EngineConfig, res: AttackResources):
        self.original = original
        self.y_truth = y_truth
        self.cfg = cfg
        self.res = res
        self.rng = random.Random(cfg.rng_seed)
        self.cache: dict[str, ClassifierVerdict] = {}
        self.queries = 0
        self.importance: Optional[ImportanceVector] = None
        self.first_success: Optional[Individual] = None
        self.queries_at_first: Optional[int] = None
        self.best: Optional[Individual] = None
        self.evaluated_sources: list[str] = []
        self.orig_confidence = 0.0

    def classify(self, source: str) -> ClassifierVerdict:
        verdict = self.cache.get(source)
        if verdict is None:
            verdict = self.res.model.classify(self.original.language, source)
            self.cache[source] = verdict
            self.queries += 1
        return verdict

    def evaluate(self, ind: Individual) -> Individual:
        verdict = self.classify(ind.snippet.source)
        f1 = verdict.prob_for(self.y_truth)
        f2 = semantic_distance(self.original, ind.gene, self.res.embedder)
        f3 = edit_distance(self.original.source, ind.snippet.source)
        flipped = verdict.predicted is not self.y_truth
        evaluated = replace(
            ind,
            objectives=ObjectiveVector(f1, f2, f3),
            first_flip=flipped and self.first_success is None,
        )
        self.evaluated_sources.append(ind.snippet.source)
        if flipped and self.first_success is None:
            self.first_success = evaluated
            self.queries_at_first = self.queries
        if self.best is None or f1 < self.best.objectives.f1_adversarial_loss:
            self.best = evaluated
        return evaluated

    @property
    def flipped(self) -> bool:
        return self.first_success is not None


# ---------------------------------------------------------------------------
# Mutation (one rename or one style-guided structure transformation)
# ---------------------------------------------------------------------------

def mutate(ind: Individual, state: _AttackState, rng: random.Random) -> Individual:
    if rng.random() < state.cfg.rename_rate:
        return _rename_mutation(ind, state, rng)
    mutated = _structure_mutation(ind, state, rng)
    if mutated is None:  # no applicable sites at all: fall back to rename
        return _rename_mutation(ind, state, rng)
    return mutated


def _rename_mutation(ind: Individual, state: _AttackState,
                     rng: random.Random) -> Individual:
    try:
        index = sample_rename_target(state.importance, rng)
        current_name = ind.gene.pairs[index].replacement
        table = ind.snippet.identifiers
        current_index = next(
            (i for i, e in enumerate(table.entries) if e.name == current_name),
            None,
        )
        if current_index is None:
            # a structure edit eliminated this identifier's occurrences
            raise AttackStepSkipped("rename target no longer present")
        candidates = propose_candidates(ind.snippet, current_index,
                                        state.res.provider, k=state.cfg.top_k)
        # a replacement may equal neither another replacement, nor any
        # identifier of the original snippet (even one renamed away)
        taken = set(ind.gene.replacements())
        taken.update(pair.original for pair in ind.gene.pairs)
        for _ in range(state.cfg.top_k):
            pick = rng.choice(candidates)
            if pick in taken or pick == current_name:
                continue
            try:
                new_snippet, _pair = rename(ind.snippet, current_index, pick)
            except MistforgeError:
                continue
            return replace(ind, snippet=new_snippet, objectives=None,
                           first_flip=False,
                           gene=ind.gene.with_replacement(index, pick))
        raise AttackStepSkipped("no admissible candidate after top_k draws")
    except AttackStepSkipped:
        return ind


def _structure_mutation(ind: Individual, state: _AttackState,
                        rng: random.Random) -> Optional[Individual]:
    sites = enumerate_sites(ind.snippet)
    if not sites:
        return None
    order = list(sites)
    rng.shuffle(order)
    for site in order:
        p_apply = site_probability(state.res.style, ind.snippet.language,
                                   state.y_truth, site.rule, site.direction)
        if rng.random() >= p_apply:
            continue
        try:
            result = apply_site_by_ordinal(ind.snippet, site.rule,
                                           site.direction, site.ordinal)
        except TransformFailed:
            continue
        if result is None:
            continue
        new_snippet, used_edit = result
        return replace(ind, snippet=new_snippet, objectives=None,
                       first_flip=False,
                       structure_log=ind.structure_log + (used_edit,))
    return ind  # sites existed but none fired


# ---------------------------------------------------------------------------
# Crossover (identifier genes only; structure log inherited per parent)
# ---------------------------------------------------------------------------

def crossover(a: Individual, b: Individual, state: _AttackState,
              rng: random.Random) -> tuple[Individual, Individual]:
    n = len(a.gene.pairs)
    if n < 2:
        return a, b
    h = rng.randint(1, n - 1)
    gene_a = RenameMap(pairs=a.gene.pairs[:h] + b.gene.pairs[h:])
    gene_b = RenameMap(pairs=b.gene.pairs[:h] + a.gene.pairs[h:])
    child_a = _rebuild(gene_a, a.structure_log, state)
    child_b = _rebuild(gene_b, b.structure_log, state)
    return child_a, child_b


def _rebuild(gene: RenameMap, structure_log: tuple[StructureEdit, ...],
             state: _AttackState) -> Individual:
    """Reconstruct an individual from the original: replay the structure
    log (sites matched by rule + ordinal, spans free to shift), then apply
    the gene, reverting colliding pairs to identity."""
    snippet = state.original
    replayed: list[StructureEdit] = []
    for edit in structure_log:
        try:
            result = apply_site_by_ordinal(snippet, edit.site.rule,
                                           edit.site.direction,
                                           edit.site.ordinal,
                                           edit.fresh_names)
        except TransformFailed:
            continue
        if result is None:
            continue
        snippet, used = result
        replayed.append(used)
    repaired = list(gene.pairs)
    for i, pair in enumerate(repaired):
        if pair.is_identity:
            continue
        table = snippet.identifiers
        current = next(
            (j for j, e in enumerate(table.entries) if e.name == pair.original),
            None,
        )
        if current is None:
            repaired[i] = replace(pair, replacement=pair.original)
            continue
        try:
            snippet, _ = rename(snippet, current, pair.replacement)
        except MistforgeError:
            repaired[i] = replace(pair, replacement=pair.original)
    return Individual(snippet=snippet, gene=RenameMap(pairs=tuple(repaired)),
                      structure_log=tuple(replayed))


# ---------------------------------------------------------------------------
# NSGA-II selection
# ---------------------------------------------------------------------------

def fast_non_dominated_sort(objectives: list[ObjectiveVector]) -> list[list[int]]:
    n = len(objectives)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    domination_count = [0] * n
    fronts: list[list[int]] = [[]]
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            if dominates(objectives[p], objectives[q]):
                dominated_by[p].append(q)
            elif dominates(objectives[q], objectives[p]):
                domination_count[p] += 1
        if domination_count[p] == 0:
            fronts[0].append(p)
    i = 0
    while fronts[i]:
        nxt: list[int] = []
        for p in fronts[i]:
            for q in dominated_by[p]:
                domination_count[q] -= 1
                if domination_count[q] == 0:
                    nxt.append(q)
        i += 1
        fronts.append(nxt)
    fronts.pop()
    return fronts


def crowding_distance(objectives: list[ObjectiveVector],
                      front: list[int]) -> dict[int, float]:
    if not front:
        return {}
    dist = {idx: 0.0 for idx in front}
    n_objs = 3
    for m in range(n_objs):
        # ties ordered by index so the result is independent of front order
        ordered = sorted(front, key=lambda i: (objectives[i].as_tuple()[m], i))
        lo = objectives[ordered[0]].as_tuple()[m]
        hi = objectives[ordered[-1]].as_tuple()[m]
        if hi == lo:
            continue  # degenerate column carries no diversity signal
        dist[ordered[0]] = float("inf")
        dist[ordered[-1]] = float("inf")
        for k in range(1, len(ordered) - 1):
            prev_v = objectives[ordered[k - 1]].as_tuple()[m]
            next_v = objectives[ordered[k + 1]].as_tuple()[m]
            dist[ordered[k]] += (next_v - prev_v) / (hi - lo)
    return dist


def select(pool: list[Individual], n: int) -> list[Individual]:
    """Elitist environmental selection: fill by front rank, break the
    boundary front by crowding distance (larger kept), ties by insertion
    order. Returns all when the pool is smaller than n."""
    if any(ind.objectives is None for ind in pool):
        raise PreconditionError("selection requires evaluated individuals")
    if len(pool) <= n:
        return list(pool)
    objs = [ind.objectives for ind in pool]
    chosen: list[int] = []
    for front in fast_non_dominated_sort(objs):
        if len(chosen) + len(front) <= n:
            chosen.extend(front)
            if len(chosen) == n:
                break
            continue
        crowd = crowding_distance(objs, front)
        boundary = sorted(front, key=lambda i: (-crowd[i], i))
        chosen.extend(boundary[: n - len(chosen)])
        break
    return [pool[i] for i in sorted(chosen)]


# ---------------------------------------------------------------------------
# Full attack (population init, GA loop, outcome assembly)
# ---------------------------------------------------------------------------

def attack(original: CodeSnippet, y_truth: OriginLabel, cfg: EngineConfig,
           res: AttackResources) -> AttackOutcome:
    if not original.parse_ok:
        raise SkippedSample("parse")
    if len(original.identifiers) == 0:
        raise SkippedSample("no-identifier")
    state = _AttackState(original, y_truth, cfg, res)
    base = state.classify(original.source)
    if base.predicted is not y_truth:
        raise SkippedSample("wrong-prediction")
    # the importance pass reuses the cached base verdict, so a non-skipped
    # attack costs exactly 1 + N_var queries before any candidate is scored
    state.importance = importance_scores(original, res.model, y_truth,
                                         classify=state.classify)
    state.orig_confidence = base.prob_for(y_truth)

    n_var = len(original.identifiers)
    max_iter = cfg.resolved_max_iter(n_var)
    seed_individual = Individual(snippet=original,
                                 gene=RenameMap.identity(original.identifiers))
    population = [
        state.evaluate(mutate(seed_individual, state, state.rng))
        for _ in range(cfg.population_size)
    ]

    iterations = 0
    while iterations < max_iter and not (cfg.stop_on_first_success
                                         and state.flipped):
        children: list[Individual] = []
        for _ in range(cfg.population_size // 2):
            i, j = state.rng.sample(range(len(population)), 2)
            child_a, child_b = crossover(population[i], population[j],
                                         state, state.rng)
            children.append(child_a)
            children.append(child_b)
        children = [state.evaluate(mutate(c, state, state.rng))
                    for c in children]
        population = select(population + children, cfg.population_size)
        iterations += 1

    best = state.best
    drop = state.orig_confidence - best.objectives.f1_adversarial_loss \
        if best is not None else 0.0
    return AttackOutcome(
        success=state.flipped,
        adversarial=state.first_success.snippet if state.first_success else None,
        queries_to_first_success=state.queries_at_first,
        total_queries=state.queries,
        best_confidence_drop=max(drop, 0.0),
        final_population=population,
        first_success_individual=state.first_success,
        best_individual=best,
        evaluated_sources=state.evaluated_sources,
        n_var=n_var,
        iterations=iterations,
    )
