"""The three search objectives and Pareto dominance.

All three are minimized jointly:

  f1  confidence the target model still assigns to the true class
  f2  summed semantic drift of renamed identifiers (1 - cosine)
  f3  character-level Levenshtein distance between original and candidate
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .code_model import CodeSnippet
from .style_profile import OriginLabel


@dataclass(frozen=True, order=True)
class ObjectiveVector:
    f1_adversarial_loss: float
    f2_semantic_distance: float
    f3_edit_distance: int

    def as_tuple(self) -> tuple[float, float, int]:
        return (self.f1_adversarial_loss, self.f2_semantic_distance,
                self.f3_edit_distance)


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """Strict Pareto dominance under minimization."""
    ta, tb = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(ta, tb)) and ta != tb


class EmbeddingProvider(Protocol):
    @property
    def dimension(self) -> int: ...

    def embed(self, token: str) -> np.ndarray: ...


class TrigramEmbedder:
    """Deterministic character-trigram hashing embedder.

    Trigrams of ^name$ are hashed (crc32, stable across processes) into a
    fixed number of buckets; the count vector is L2-normalized. Lexically
    close names land close in cosine, which is all the semantic-distance
    objective needs from an offline default.
    """

    def __init__(self, dimension: int = 256):
        self._dimension = dimension

    @property
    def dimension(self) -> int:
        return self._dimension

    def embed(self, token: str) -> np.ndarray:
        padded = f"^{token}$"
        vec = np.zeros(self._dimension, dtype=np.float64)
        for i in range(len(padded) - 2):
            tri = padded[i : i + 3]
            vec[zlib.crc32(tri.encode("utf-8")) % self._dimension] += 1.0
        norm = float(np.linalg.norm(vec))
        return vec / norm if norm else vec


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def semantic_distance(original: CodeSnippet, gene, embedder: EmbeddingProvider) -> float:
    """Sum of 1 - cos(embed(original_i), embed(replacement_i)) over the
    original snippet's identifiers; identity pairs contribute exactly 0."""
    total = 0.0
    for pair in gene.pairs:
        if pair.replacement == pair.original:
            continue
        total += 1.0 - cosine(embedder.embed(pair.original),
                              embedder.embed(pair.replacement))
    return total


def edit_distance(original: CodeSnippet | str, candidate: CodeSnippet | str) -> int:
    a = original.source if isinstance(original, CodeSnippet) else original
    b = candidate.source if isinstance(candidate, CodeSnippet) else candidate
    return levenshtein(a, b)


def levenshtein(a: str, b: str) -> int:
    """Character-level Levenshtein distance, vectorized row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    b_codes = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32)
    m = len(b_codes)
    idx = np.arange(m + 1, dtype=np.int64)
    prev = idx.copy()
    cur = np.empty(m + 1, dtype=np.int64)
    for i, ch in enumerate(a):
        code = ord(ch)
        cur[0] = i + 1
        np.minimum(prev[:-1] + (b_codes != code), prev[1:] + 1, out=cur[1:])
        # cascading deletions: cur[j] = min over k<=j of cur[k] + (j - k)
        np.minimum(cur, np.minimum.accumulate(cur - idx) + idx, out=cur)
        prev, cur = cur, prev
    return int(prev[m])


def adversarial_loss(model, candidate: CodeSnippet, y_truth: OriginLabel) -> float:
    """M(candidate)[y_truth]; exactly one model query."""
    verdict = model.classify(candidate.language, candidate.source)
    return verdict.prob_for(y_truth)


class HttpEmbedder:
    """POST {token} -> {vector: [...]} wire contract."""

    def __init__(self, endpoint: str, timeout: float = 10.0):
        self.endpoint = endpoint
        self.timeout = timeout
        self._dimension: int | None = None

    @property
    def dimension(self) -> int:
        if self._dimension is None:
            self._dimension = len(self.embed("probe"))
        return self._dimension

    def embed(self, token: str) -> np.ndarray:
        import requests

        from .errors import ProtocolError, TransportError

        try:
            resp = requests.post(self.endpoint, json={"token": token},
                                 timeout=self.timeout)
        except (requests.ConnectionError, requests.Timeout) as exc:
            raise TransportError(f"{self.endpoint} unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise ProtocolError(
                f"{self.endpoint} answered {resp.status_code}: {resp.text[:200]}")
        try:
            vector = resp.json()["vector"]
            arr = np.asarray(vector, dtype=np.float64)
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError("malformed embedding response") from exc
        if arr.ndim != 1 or arr.size == 0:
            raise ProtocolError("embedding must be a non-empty flat vector")
        return arr
