"""Event-sourced provenance, community validation, and quality badges for
historical photo identifications."""

from .consensus import ConsensusConfig, ConsensusState, MatchConsensus
from .engine import EngineConfig, propagate, recompute
from .graph import GraphState, fold_events
from .model import (
    ComparisonVerdict,
    FaceRecSupport,
    IdVoteVerdict,
    OverlayBadge,
    QualityBadge,
    TagPolicy,
    minimum_tags_satisfied,
)
from .taxonomy import SourceCategory, SourceType, classify_source, trust_rank

__version__ = "0.1.0"

__all__ = [
    "ConsensusConfig",
    "ConsensusState",
    "MatchConsensus",
    "EngineConfig",
    "propagate",
    "recompute",
    "GraphState",
    "fold_events",
    "ComparisonVerdict",
    "FaceRecSupport",
    "IdVoteVerdict",
    "OverlayBadge",
    "QualityBadge",
    "TagPolicy",
    "minimum_tags_satisfied",
    "SourceCategory",
    "SourceType",
    "classify_source",
    "trust_rank",
    "__version__",
]
