"""Exception types shared across the engine."""

from __future__ import annotations

# Clause names for illegal moves, as reported on the service wire.
CLAUSE_NOT_A_SUBSET = "not-a-subset"
CLAUSE_NOT_IN_O = "not-in-O"
CLAUSE_NOT_IN_S = "successor-not-in-S"


class GameError(Exception):
    """Base class for all engine errors."""


class PositionNotInStates(GameError):
    """A position was supplied that is not a member of the state family."""


class CapExceeded(GameError):
    """A game or pile vector is too large for the configured solve cap."""


class MemoLimitExceeded(GameError):
    """A solve exceeded its optional memo-entry limit."""


class IllegalMove(GameError):
    """A move failed the admissibility check.

    ``clause`` names which part failed: the move is not contained in the
    position ("not-a-subset"), it is not a member of the move family
    ("not-in-O"), or removing it leaves the state family
    ("successor-not-in-S").
    """

    def __init__(self, clause: str, message: str):
        super().__init__(message)
        self.clause = clause


class NotASubset(IllegalMove):
    def __init__(self, message: str):
        super().__init__(CLAUSE_NOT_A_SUBSET, message)


class InvalidInstance(GameError):
    """A subset-sum instance violates its invariants."""


class WitnessError(GameError):
    """Internal consistency failure while extracting a witness subset."""


class GameFileError(GameError):
    """A game document failed to parse or violated a structural invariant."""
