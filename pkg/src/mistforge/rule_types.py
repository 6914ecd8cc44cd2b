"""Rule and site vocabulary shared by the per-language rewriters."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Rule(Enum):
    LOOP_FOR_WHILE = "loop_for_while"
    BRANCH_IF_ELSE = "branch_if_else_if_if"
    INC_DEC = "inc_dec_expand"
    COMPOUND_ASSIGN = "compound_assign_expand"
    CONST_TO_VAR = "const_to_var"

    @property
    def category(self) -> str:
        if self in (Rule.LOOP_FOR_WHILE, Rule.BRANCH_IF_ELSE):
            return "control_flow"
        if self in (Rule.INC_DEC, Rule.COMPOUND_ASSIGN):
            return "expression"
        return "const_var"


class Direction(Enum):
    B_TO_A = "BtoA"  # original form -> transformed form
    A_TO_B = "AtoB"  # transformed form -> original form


@dataclass(frozen=True)
class TransformSite:
    rule: Rule
    direction: Direction
    node_span: tuple[int, int]
    ordinal: int  # index among sites of the same (rule, direction)


@dataclass(frozen=True)
class StructureEdit:
    site: TransformSite
    fresh_names: tuple[str, ...] = field(default_factory=tuple)
