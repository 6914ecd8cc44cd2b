"""Structure-style statistics over a labeled corpus.

For each (language, origin, rule) cell the table holds how often the
rule's original form (N_b) and transformed form (N_a) occur in that
subset, plus the relative frequencies p_a = N_a/(N_b+N_a) and
p_b = N_b/(N_b+N_a). Queries consult the subset of the *same* language
and the *opposite* origin of the sample under attack, so repeated
probabilistic transformation drifts a sample's structure distribution
toward the reference population.

Cells that never saw either form fall back to probability 0.5.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .code_model import CodeSnippet, Language
from .errors import InputError, PreconditionError
from .rule_types import Direction, Rule
from .transform_rules import count_structures


class OriginLabel(Enum):
    HUMAN = "human"
    LLM = "llm"

    @property
    def y_truth(self) -> int:
        return 0 if self is OriginLabel.HUMAN else 1

    @property
    def opposite(self) -> "OriginLabel":
        return OriginLabel.LLM if self is OriginLabel.HUMAN else OriginLabel.HUMAN

    @classmethod
    def from_tag(cls, tag: str) -> "OriginLabel":
        tag = tag.strip().lower()
        for label in cls:
            if label.value == tag:
                return label
        raise InputError(f"unknown origin label: {tag!r}")


@dataclass(frozen=True)
class StyleCell:
    n_b: int
    n_a: int

    @property
    def p_a(self) -> float:
        total = self.n_b + self.n_a
        return self.n_a / total if total else 0.5

    @property
    def p_b(self) -> float:
        total = self.n_b + self.n_a
        return self.n_b / total if total else 0.5


_ZERO = StyleCell(0, 0)

CellKey = tuple[Language, OriginLabel, Rule]


@dataclass(frozen=True)
class StyleTable:
    cells: dict[CellKey, StyleCell]

    def cell(self, language: Language, origin: OriginLabel, rule: Rule) -> StyleCell:
        return self.cells.get((language, origin, rule), _ZERO)

    @classmethod
    def empty(cls) -> "StyleTable":
        return cls(cells={})

    def to_json(self) -> str:
        payload = {}
        for (lang, origin, rule), cell in sorted(
            self.cells.items(),
            key=lambda kv: (kv[0][0].value, kv[0][1].value, kv[0][2].value),
        ):
            payload[f"{lang.value}/{origin.value}/{rule.value}"] = {
                "n_b": cell.n_b,
                "n_a": cell.n_a,
            }
        return json.dumps({"version": 1, "cells": payload}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "StyleTable":
        try:
            doc = json.loads(text)
            cells: dict[CellKey, StyleCell] = {}
            for key, counts in doc["cells"].items():
                lang_tag, origin_tag, rule_tag = key.split("/")
                cells[(Language.from_tag(lang_tag),
                       OriginLabel.from_tag(origin_tag),
                       Rule(rule_tag))] = StyleCell(int(counts["n_b"]),
                                                    int(counts["n_a"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed style table: {exc}") from exc
        return cls(cells=cells)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "StyleTable":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def build_style_table(corpus: list[tuple[CodeSnippet, OriginLabel]]) -> StyleTable:
    """Aggregate per-(language, origin) structure counts; counts are the
    ground truth, probabilities are derived on access."""
    totals: dict[CellKey, list[int]] = {}
    for snippet, origin in corpus:
        if not snippet.parse_ok:
            raise PreconditionError("style corpus snippet did not parse")
        for rule, (n_b, n_a) in count_structures(snippet).items():
            key = (snippet.language, origin, rule)
            acc = totals.setdefault(key, [0, 0])
            acc[0] += n_b
            acc[1] += n_a
    # materialize every cell for both labels of every language seen
    languages = {lang for lang, _, _ in totals}
    cells: dict[CellKey, StyleCell] = {}
    for lang in languages:
        for origin in OriginLabel:
            for rule in Rule:
                n_b, n_a = totals.get((lang, origin, rule), (0, 0))
                cells[(lang, origin, rule)] = StyleCell(n_b, n_a)
    return StyleTable(cells=cells)


def transform_probability(table: StyleTable, language: Language,
                          target_label: OriginLabel, rule: Rule) -> float:
    """Probability of applying `rule` to a sample with true label
    `target_label`, read from the same-language, opposite-origin cell."""
    return table.cell(language, target_label.opposite, rule).p_a


def site_probability(table: StyleTable, language: Language,
                     target_label: OriginLabel, rule: Rule,
                     direction: Direction) -> float:
    """Direction-aware acceptance probability for one site: a site in the
    original form is transformed with the reference cell's p_a, a site in
    the transformed form is reverted with p_b — either way the sample
    drifts toward the reference subset's majority form."""
    cell = table.cell(language, target_label.opposite, rule)
    return cell.p_a if direction is Direction.B_TO_A else cell.p_b
