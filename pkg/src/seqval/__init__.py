"""Valuation of position sequences on a square board.

Builds a feature model from a given sequence using transformation-invariant
operators on complex numbers, ranks candidate continuations, and measures
sequence similarity.
"""

from .board import (
    BoardConfig,
    NotationError,
    Position,
    PositionSequence,
    format_position,
    parse_position,
    parse_sequence,
    render_board,
    to_complex,
)
from .featurebank import (
    Bins,
    FeatureTable,
    GeneralSequenceConfig,
    PoolConfig,
    ScoringMode,
    build_bins,
    estimate_probs,
    generate_general_sequence,
    sample_operator_pool,
    score,
)
from .transform import (
    PROJECTIONS,
    STANDARD_CHAINS,
    OperatorSpec,
    Projection,
    apply_operator,
    convolve,
    difference,
    project,
    quotient,
)
from .valuation import (
    RankedContinuation,
    ValuationModel,
    build_model,
    continue_iteratively,
    model_from_json,
    model_to_json,
    rank_continuations,
    reconstruct,
    value_prolongation,
    value_similarity,
)

__all__ = [
    "BoardConfig",
    "NotationError",
    "Position",
    "PositionSequence",
    "format_position",
    "parse_position",
    "parse_sequence",
    "render_board",
    "to_complex",
    "Bins",
    "FeatureTable",
    "GeneralSequenceConfig",
    "PoolConfig",
    "ScoringMode",
    "build_bins",
    "estimate_probs",
    "generate_general_sequence",
    "sample_operator_pool",
    "score",
    "PROJECTIONS",
    "STANDARD_CHAINS",
    "OperatorSpec",
    "Projection",
    "apply_operator",
    "convolve",
    "difference",
    "project",
    "quotient",
    "RankedContinuation",
    "ValuationModel",
    "build_model",
    "continue_iteratively",
    "model_from_json",
    "model_to_json",
    "rank_continuations",
    "reconstruct",
    "value_prolongation",
    "value_similarity",
]

__version__ = "0.1.0"
