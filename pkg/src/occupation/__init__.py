"""Occupation games: exact win/loss solving for subset-removal games.

Subpackages cover the generic bitmask solver (``core``), Nim and
subtraction piles (``classic``), the subset-sum game encoding
(``reduction``), JSON game documents (``formats``), the command line
(``cli``), and the local play service (``service``).
"""

from .core import (
    DEFAULT_SOLVE_CAP,
    AllSubsets,
    BandStates,
    ExplicitMoves,
    ExplicitStates,
    GameTrace,
    GroundSet,
    MoveSet,
    OccupationGame,
    PositionSet,
    Solver,
    StructuredMoves,
    TruthValue,
    Violation,
    admissible_moves,
    apply_move,
    best_move,
    optimal_policy,
    playout,
    random_policy,
    relabel,
    relabel_position,
    truth,
    validate_game,
)
from .errors import (
    CapExceeded,
    GameError,
    GameFileError,
    IllegalMove,
    InvalidInstance,
    MemoLimitExceeded,
    NotASubset,
    PositionNotInStates,
    WitnessError,
)

__all__ = [
    "DEFAULT_SOLVE_CAP",
    "AllSubsets",
    "BandStates",
    "CapExceeded",
    "ExplicitMoves",
    "ExplicitStates",
    "GameError",
    "GameFileError",
    "GameTrace",
    "GroundSet",
    "IllegalMove",
    "InvalidInstance",
    "MemoLimitExceeded",
    "MoveSet",
    "NotASubset",
    "OccupationGame",
    "PositionNotInStates",
    "PositionSet",
    "Solver",
    "StructuredMoves",
    "TruthValue",
    "Violation",
    "WitnessError",
    "admissible_moves",
    "apply_move",
    "best_move",
    "optimal_policy",
    "playout",
    "random_policy",
    "relabel",
    "relabel_position",
    "truth",
    "validate_game",
]
