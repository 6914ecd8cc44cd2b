"""Importance-guided identifier renaming.

Which identifier to rename: mask each one with ``<UNK>`` and measure the
drop in the model's confidence on the true class; the drops, clamped at
zero and normalized, give the selection distribution (uniform when no
identifier helps the model). What to rename it to: a pluggable candidate
provider sees the snippet with the target masked as ``<extra_id_0>`` and
returns up to top_k context-appropriate names. The offline default ranks
the style corpus's most frequent identifiers; the same ``predict`` shape
is served over HTTP by model-backed providers.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Protocol

import requests

from .code_model import (
    CodeSnippet,
    IdentifierTable,
    Language,
    TokenEdit,
    apply_edits,
    is_valid_identifier,
)
from .errors import (
    AttackStepSkipped,
    InputError,
    PreconditionError,
    ProtocolError,
    TransportError,
)
from .model_interface import ClassifierVerdict, TargetModel
from .style_profile import OriginLabel

UNK_MASK = "<UNK>"
PREDICT_MASK = "<extra_id_0>"

DEFAULT_TOP_K = 40


@dataclass(frozen=True)
class RenamePair:
    original: str
    replacement: str

    @property
    def is_identity(self) -> bool:
        return self.original == self.replacement


@dataclass(frozen=True)
class RenameMap:
    """Ordered original->replacement mapping aligned to the original
    snippet's identifier table; identity pairs allowed."""

    pairs: tuple[RenamePair, ...]

    @classmethod
    def identity(cls, table: IdentifierTable) -> "RenameMap":
        return cls(pairs=tuple(RenamePair(e.name, e.name) for e in table.entries))

    def with_replacement(self, index: int, new_name: str) -> "RenameMap":
        pairs = list(self.pairs)
        pairs[index] = RenamePair(pairs[index].original, new_name)
        return RenameMap(pairs=tuple(pairs))

    def replacements(self) -> list[str]:
        return [p.replacement for p in self.pairs]

    @property
    def changed_count(self) -> int:
        return sum(1 for p in self.pairs if not p.is_identity)


@dataclass(frozen=True)
class ImportanceVector:
    names: tuple[str, ...]
    scores: tuple[float, ...]
    probs: tuple[float, ...]
    base_verdict: ClassifierVerdict


class CandidateProvider(Protocol):
    @property
    def top_k(self) -> int: ...

    def predict(self, code_masked: str, k: int) -> list[str]: ...


def mask_identifier(snippet: CodeSnippet, index: int, mask: str) -> str:
    """Replace every occurrence of identifier #index with a raw mask
    token. The result is model input, never reparsed."""
    entry = snippet.identifiers.entries[index]
    data = snippet.source_bytes
    for lo, hi in sorted(entry.spans, reverse=True):
        data = data[:lo] + mask.encode("utf-8") + data[hi:]
    return data.decode("utf-8")


def importance_scores(
    snippet: CodeSnippet,
    model: TargetModel,
    y_truth: OriginLabel,
    classify: Callable[[str], ClassifierVerdict] | None = None,
) -> ImportanceVector:
    """Per-identifier confidence drops under <UNK> masking. Queries the
    model 1 + N_var times (the snippet itself is scored once)."""
    if not snippet.parse_ok:
        raise PreconditionError("cannot score identifiers: snippet did not parse")
    if len(snippet.identifiers) == 0:
        raise PreconditionError("cannot score identifiers: none present")
    if classify is None:
        classify = lambda src: model.classify(snippet.language, src)
    base = classify(snippet.source)
    base_conf = base.prob_for(y_truth)
    names: list[str] = []
    scores: list[float] = []
    for index, entry in enumerate(snippet.identifiers.entries):
        masked = mask_identifier(snippet, index, UNK_MASK)
        masked_conf = classify(masked).prob_for(y_truth)
        names.append(entry.name)
        scores.append(base_conf - masked_conf)
    return ImportanceVector(names=tuple(names), scores=tuple(scores),
                            probs=tuple(_selection_probs(scores)),
                            base_verdict=base)


def _selection_probs(scores: list[float]) -> list[float]:
    # raw normalization breaks on negative drops: clamp at zero, fall back
    # to uniform when nothing positive remains
    clamped = [max(s, 0.0) for s in scores]
    total = sum(clamped)
    if total <= 0.0:
        return [1.0 / len(scores)] * len(scores)
    return [c / total for c in clamped]


def sample_rename_target(iv: ImportanceVector, rng: random.Random) -> int:
    """Index drawn with probability probs[i]; deterministic per seed."""
    draw = rng.random()
    cumulative = 0.0
    for index, p in enumerate(iv.probs):
        cumulative += p
        if draw < cumulative:
            return index
    return len(iv.probs) - 1


def propose_candidates(snippet: CodeSnippet, target_index: int,
                       provider: CandidateProvider,
                       k: int | None = None) -> list[str]:
    """Masked-context candidates for replacing identifier #target_index,
    lexically valid and not colliding with any existing identifier."""
    if target_index >= len(snippet.identifiers):
        raise PreconditionError(f"identifier index {target_index} out of range")
    k = k if k is not None else provider.top_k
    masked = mask_identifier(snippet, target_index, PREDICT_MASK)
    raw = provider.predict(masked, k)
    existing = set(snippet.identifiers.names())
    seen: set[str] = set()
    out: list[str] = []
    for name in raw[:k]:
        if name in seen:
            continue
        seen.add(name)
        if not is_valid_identifier(name, snippet.language):
            continue
        if name in existing:
            continue
        out.append(name)
    if not out:
        raise AttackStepSkipped("no admissible rename candidates")
    return out


def rename(snippet: CodeSnippet, target_index: int,
           new_name: str) -> tuple[CodeSnippet, RenamePair]:
    """Rename every occurrence of identifier #target_index; the result is
    reparsed and must remain valid."""
    entry = snippet.identifiers.entries[target_index]
    if new_name == entry.name:
        return snippet, RenamePair(entry.name, new_name)
    if not is_valid_identifier(new_name, snippet.language):
        raise InputError(f"invalid identifier: {new_name!r}")
    if new_name in snippet.identifiers.names():
        raise InputError(f"name collision: {new_name!r} already present")
    edits = [TokenEdit(span, new_name) for span in entry.spans]
    result = apply_edits(snippet, edits)
    if not result.parse_ok:
        raise InputError(f"rename to {new_name!r} broke the parse")
    return result, RenamePair(entry.name, new_name)


# ---------------------------------------------------------------------------
# Providers
# ---------------------------------------------------------------------------

class FrequencyCandidateProvider:
    """Offline default: the style corpus's most frequent identifiers for
    the language, in deterministic (count desc, name asc) order."""

    def __init__(self, snippets: list[CodeSnippet], language: Language,
                 top_k: int = DEFAULT_TOP_K):
        self._top_k = top_k
        counter: Counter[str] = Counter()
        for snippet in snippets:
            if snippet.language is not language or not snippet.parse_ok:
                continue
            for entry in snippet.identifiers.entries:
                counter[entry.name] += len(entry.spans)
        ranked = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
        self._names = [
            name for name, _ in ranked
            if is_valid_identifier(name, language) and not name.startswith("mist_")
        ]

    @property
    def top_k(self) -> int:
        return self._top_k

    def predict(self, code_masked: str, k: int) -> list[str]:
        return self._names[:k]


@dataclass
class HttpCandidateProvider:
    """POST {code, k} -> {candidates: [...]} wire contract."""

    endpoint: str
    top_k: int = DEFAULT_TOP_K
    timeout: float = 10.0

    def predict(self, code_masked: str, k: int) -> list[str]:
        try:
            resp = requests.post(self.endpoint,
                                 json={"code": code_masked, "k": k},
                                 timeout=self.timeout)
        except (requests.ConnectionError, requests.Timeout) as exc:
            raise TransportError(f"{self.endpoint} unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise ProtocolError(
                f"{self.endpoint} answered {resp.status_code}: {resp.text[:200]}")
        try:
            doc = resp.json()
            candidates = doc["candidates"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"malformed candidate response") from exc
        if not isinstance(candidates, list) \
                or not all(isinstance(c, str) for c in candidates):
            raise ProtocolError("candidates must be a list of strings")
        return candidates[:k]
