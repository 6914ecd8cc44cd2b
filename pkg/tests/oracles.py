"""Independent reference implementations used only to check the package.

Everything here is written naively and separately from the library code:
full-matrix DP for edit distance, O(n^2) layer peeling for Pareto fronts,
textbook crowding, and a plain-Python TOPSIS worksheet.
"""

from __future__ import annotations

import math
import re


def dp_levenshtein(a: str, b: str) -> int:
    rows, cols = len(a) + 1, len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        table[i][0] = i
    for j in range(cols):
        table[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            table[i][j] = min(table[i - 1][j] + 1,
                              table[i][j - 1] + 1,
                              table[i - 1][j - 1] + cost)
    return table[-1][-1]


def pareto_layers(points: list[tuple]) -> list[list[int]]:
    """Peel non-dominated layers by exhaustive pairwise comparison."""

    def dominated(p, q) -> bool:
        return all(x >= y for x, y in zip(p, q)) and p != q

    remaining = set(range(len(points)))
    layers: list[list[int]] = []
    while remaining:
        layer = [
            i for i in remaining
            if not any(dominated(points[i], points[j])
                       for j in remaining if j != i)
        ]
        layers.append(sorted(layer))
        remaining -= set(layer)
    return layers


def crowding(points: list[tuple], layer: list[int]) -> dict[int, float]:
    """Textbook crowding distance; a column with no spread contributes
    nothing (its 'extremes' would be an artifact of sort stability)."""
    dist = {i: 0.0 for i in layer}
    n_objectives = len(points[0])
    for m in range(n_objectives):
        ordered = sorted(layer, key=lambda i: (points[i][m], i))
        lo, hi = points[ordered[0]][m], points[ordered[-1]][m]
        if hi == lo:
            continue
        dist[ordered[0]] = math.inf
        dist[ordered[-1]] = math.inf
        for k in range(1, len(ordered) - 1):
            if dist[ordered[k]] != math.inf:
                dist[ordered[k]] += (points[ordered[k + 1]][m]
                                     - points[ordered[k - 1]][m]) / (hi - lo)
    return dist


def nsga_select(points: list[tuple], n: int) -> list[int]:
    """Expected selection set: whole layers, then crowding on the boundary
    (larger kept, ties by index)."""
    chosen: list[int] = []
    for layer in pareto_layers(points):
        if len(chosen) + len(layer) <= n:
            chosen.extend(layer)
            continue
        dist = crowding(points, layer)
        boundary = sorted(layer, key=lambda i: (-dist[i], i))
        chosen.extend(boundary[: n - len(chosen)])
        break
    return sorted(chosen)


def topsis_worksheet(rows: list[tuple], weights: tuple, benefit: tuple) -> list[float]:
    n_cols = len(rows[0]) - 1
    cols = list(zip(*[r[1:] for r in rows]))
    norms = [math.sqrt(sum(x * x for x in col)) for col in cols]
    weighted = [[row[1 + j] / norms[j] * weights[j] for j in range(n_cols)]
                for row in rows]
    pis = [max(w[j] for w in weighted) if benefit[j]
           else min(w[j] for w in weighted) for j in range(n_cols)]
    nis = [min(w[j] for w in weighted) if benefit[j]
           else max(w[j] for w in weighted) for j in range(n_cols)]
    scores = []
    for w in weighted:
        d_plus = math.sqrt(sum((w[j] - pis[j]) ** 2 for j in range(n_cols)))
        d_minus = math.sqrt(sum((w[j] - nis[j]) ** 2 for j in range(n_cols)))
        scores.append(d_minus / (d_plus + d_minus))
    return scores


WORD = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")

JAVA_NOISE = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null
    String System out println length args main Math Integer""".split()
)


def regex_identifier_count(source: str) -> int:
    """Crude unique-identifier count for sources with no comments and no
    identifier-like words inside string literals."""
    stripped = re.sub(r'"(\\.|[^"\\])*"', '""', source)
    stripped = re.sub(r"'(\\.|[^'\\])*'", "''", stripped)
    names = {w for w in WORD.findall(stripped) if w not in JAVA_NOISE}
    return len(names)


def regex_occurrences(source: str, name: str) -> int:
    return len(re.findall(rf"\b{re.escape(name)}\b", source))
