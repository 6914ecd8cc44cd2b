"""mistforge: black-box adversarial example generation and robustness
evaluation for source-code origin classifiers."""

from .code_model import CodeSnippet, IdentifierTable, Language, TokenEdit, parse
from .engine import (
    AttackOutcome,
    AttackResources,
    EngineConfig,
    Individual,
    SkippedSample,
    attack,
    select_training_sample,
)
from .errors import MistforgeError
from .identifier_attack import FrequencyCandidateProvider, RenameMap
from .model_interface import (
    ClassifierVerdict,
    ReferenceClassifier,
    RemoteModel,
    fine_tune_reference,
    train_reference,
)
from .objectives import ObjectiveVector, TrigramEmbedder, dominates, edit_distance
from .rule_types import Direction, Rule, StructureEdit, TransformSite
from .style_profile import OriginLabel, StyleTable, build_style_table
from .transform_rules import apply_transform, count_structures, enumerate_sites

__all__ = [
    "AttackOutcome",
    "AttackResources",
    "ClassifierVerdict",
    "CodeSnippet",
    "Direction",
    "EngineConfig",
    "FrequencyCandidateProvider",
    "IdentifierTable",
    "Individual",
    "Language",
    "MistforgeError",
    "ObjectiveVector",
    "OriginLabel",
    "ReferenceClassifier",
    "RemoteModel",
    "RenameMap",
    "Rule",
    "SkippedSample",
    "StructureEdit",
    "StyleTable",
    "TokenEdit",
    "TransformSite",
    "TrigramEmbedder",
    "attack",
    "apply_transform",
    "build_style_table",
    "count_structures",
    "dominates",
    "edit_distance",
    "enumerate_sites",
    "fine_tune_reference",
    "parse",
    "select_training_sample",
    "train_reference",
]

__version__ = "0.1.0"
