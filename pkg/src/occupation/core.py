"""Generic occupation games and an exact memoized solver.

A game owns a finite ground set, a family of legal states (subsets of the
ground set), and a family of nonempty move sets.  A move ``s`` is admissible
at position ``A`` when ``s`` is contained in ``A`` and ``A - s`` is again a
legal state; play alternates until the side to move has no admissible move,
and that side loses.

Positions and moves are fixed-width bit masks indexed by ground-set order,
so subset and difference tests are single integer operations and memo keys
are plain ints.  Solving is exact: ``truth`` is 1 when the side to move has
a winning strategy and 0 otherwise.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Protocol, Union, runtime_checkable

from .errors import (
    CLAUSE_NOT_A_SUBSET,
    CLAUSE_NOT_IN_O,
    CLAUSE_NOT_IN_S,
    CapExceeded,
    GameError,
    IllegalMove,
    MemoLimitExceeded,
    NotASubset,
    PositionNotInStates,
)

# Largest ground set the explicit solver accepts unless overridden.
DEFAULT_SOLVE_CAP = 24

# 0 = side to move loses under perfect play, 1 = side to move wins.
TruthValue = int


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _mask_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    # Canonical move order: cardinality, then lexicographic on element indices.
    return (mask.bit_count(), _bits(mask))


@dataclass(frozen=True)
class GroundSet:
    """Ordered distinct element labels, with an optional display region each."""

    labels: tuple[str, ...]
    regions: tuple[str | None, ...] | None = None

    @classmethod
    def of(
        cls,
        labels: Iterable[str],
        regions: Iterable[str | None] | None = None,
    ) -> "GroundSet":
        return cls(tuple(labels), None if regions is None else tuple(regions))

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown label {label!r}") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in _bits(mask))

    def region_of(self, label: str) -> str | None:
        if self.regions is None:
            return None
        return self.regions[self.index(label)]


@dataclass(frozen=True)
class PositionSet:
    """A subset of a ground set, stored as a bit mask."""

    ground: GroundSet
    mask: int

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Iterable[str]) -> "PositionSet":
        return cls(ground, ground.mask_of(labels))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.ground.index(label) & 1)

    def issubset(self, other: "PositionSet") -> bool:
        return self.mask & ~other.mask == 0

    def difference(self, move: "PositionSet") -> "PositionSet":
        if move.mask & ~self.mask:
            raise NotASubset(
                f"move {move.labels} is not contained in position {self.labels}"
            )
        return PositionSet(self.ground, self.mask & ~move.mask)


# A move set is structurally a position set; the nonemptiness requirement is
# a family invariant checked by validate_game.
MoveSet = PositionSet


@dataclass(frozen=True)
class AllSubsets:
    """State family containing every subset of the ground set."""

    kind = "all"

    def contains_mask(self, mask: int) -> bool:
        return True


@dataclass(frozen=True)
class ExplicitStates:
    """State family given by an explicit list of subsets."""

    masks: tuple[int, ...]
    kind = "explicit"

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.masks)

    def contains_mask(self, mask: int) -> bool:
        return mask in self._members


@dataclass(frozen=True)
class BandStates:
    """State family of subsets A with 0 <= |A & w_mask| - |A & v_mask| <= 1.

    Evaluated as a predicate; the family is never enumerated.
    """

    w_mask: int
    v_mask: int
    kind = "band"

    def contains_mask(self, mask: int) -> bool:
        return 0 <= (mask & self.w_mask).bit_count() - (mask & self.v_mask).bit_count() <= 1


StateFamily = Union[AllSubsets, ExplicitStates, BandStates]


@runtime_checkable
class MoveDescriptor(Protocol):
    """Generator view of a structured move family.

    ``candidate_masks`` yields the family members contained in the given
    position; the solver still applies the state-membership filter.
    """

    def candidate_masks(self, position_mask: int) -> Iterable[int]: ...


@dataclass(frozen=True)
class ExplicitMoves:
    """Move family given by an explicit list of nonempty subsets."""

    masks: tuple[int, ...]
    kind = "explicit"


@dataclass(frozen=True)
class StructuredMoves:
    """Move family backed by a descriptor owned by a specific game builder."""

    descriptor: MoveDescriptor
    kind = "structured"


MoveFamily = Union[ExplicitMoves, StructuredMoves]


@dataclass(frozen=True)
class OccupationGame:
    ground: GroundSet
    states: StateFamily
    moves: MoveFamily
    start: PositionSet


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness invariant; violations are data, not errors."""

    code: str
    message: str


@dataclass(frozen=True)
class GameTrace:
    """A completed legal playout.

    ``positions`` has one more entry than ``moves``; the loser is the player
    whose turn it is at the final position (0 = first mover, 1 = second).
    """

    positions: tuple[PositionSet, ...]
    moves: tuple[MoveSet, ...]
    loser: int


def validate_game(game: OccupationGame, *, cap: int | None = None) -> list[Violation]:
    """Check every well-formedness invariant; return one record per failure."""
    cap = DEFAULT_SOLVE_CAP if cap is None else cap
    out: list[Violation] = []
    ground = game.ground

    if len(set(ground.labels)) != len(ground.labels):
        out.append(Violation("duplicate-labels", "ground-set labels are not pairwise distinct"))
    if len(ground) > cap:
        out.append(
            Violation("ground-too-large", f"ground set has {len(ground)} elements, cap is {cap}")
        )
    if ground.regions is not None and len(ground.regions) != len(ground.labels):
        out.append(Violation("region-length-mismatch", "regions do not align with labels"))

    full = ground.full_mask
    states = game.states
    if isinstance(states, ExplicitStates):
        seen: set[int] = set()
        for m in states.masks:
            if m & ~full:
                out.append(Violation("state-not-subset", "explicit state is not a subset of the ground set"))
            if m in seen:
                out.append(Violation("duplicate-state", "explicit state list contains a duplicate"))
            seen.add(m)
    elif isinstance(states, BandStates):
        if states.w_mask & states.v_mask:
            out.append(Violation("band-regions-overlap", "band regions are not disjoint"))
        if (states.w_mask | states.v_mask) & ~full:
            out.append(Violation("band-region-not-subset", "band region is not a subset of the ground set"))

    if isinstance(game.moves, ExplicitMoves):
        for i, m in enumerate(game.moves.masks):
            if m == 0:
                out.append(Violation("empty-move-set", f"move at index {i} is empty"))
            if m & ~full:
                out.append(Violation("move-not-subset", f"move at index {i} is not a subset of the ground set"))

    if game.start.ground != ground:
        out.append(Violation("start-foreign-ground", "start position belongs to a different ground set"))
    if game.start.mask & ~full:
        out.append(Violation("start-not-subset", "start position is not a subset of the ground set"))
    if not states.contains_mask(game.start.mask):
        out.append(Violation("start-not-in-states", "start position is not a member of the state family"))

    return out


def _candidate_masks(game: OccupationGame, mask: int) -> Iterator[int]:
    moves = game.moves
    if isinstance(moves, ExplicitMoves):
        for m in moves.masks:
            if m and m & ~mask == 0:
                yield m
    else:
        for m in moves.descriptor.candidate_masks(mask):
            if m and m & ~mask == 0:
                yield m


def _admissible_masks(game: OccupationGame, mask: int) -> list[int]:
    states = game.states
    found = {
        m: None for m in _candidate_masks(game, mask) if states.contains_mask(mask & ~m)
    }
    return sorted(found, key=_mask_sort_key)


def _require_member(game: OccupationGame, position: PositionSet) -> None:
    if position.ground != game.ground:
        raise GameError("position belongs to a different ground set")
    if not game.states.contains_mask(position.mask):
        raise PositionNotInStates(
            f"position {position.labels} is not a member of the state family"
        )


def admissible_moves(game: OccupationGame, position: PositionSet) -> list[MoveSet]:
    """All moves contained in the position whose removal stays in the state
    family, in canonical order (cardinality, then element order)."""
    _require_member(game, position)
    return [MoveSet(game.ground, m) for m in _admissible_masks(game, position.mask)]


def apply_move(position: PositionSet, move: MoveSet) -> PositionSet:
    """Remove ``move`` from ``position``; the move must be contained in it."""
    return position.difference(move)


class Solver:
    """Exact win/loss evaluation for one game, owning one memo table.

    Game descriptions are immutable; build one solver per thread of play and
    reuse it to keep solved subpositions across queries.
    """

    def __init__(
        self,
        game: OccupationGame,
        *,
        cap: int | None = None,
        memo_limit: int | None = None,
    ):
        cap = DEFAULT_SOLVE_CAP if cap is None else cap
        if len(game.ground) > cap:
            raise CapExceeded(
                f"ground set has {len(game.ground)} elements, explicit-solve cap is {cap}"
            )
        self.game = game
        self.memo_limit = memo_limit
        self._memo: dict[int, int] = {}

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def truth_mask(self, mask: int) -> TruthValue:
        memo = self._memo
        hit = memo.get(mask)
        if hit is not None:
            return hit
        game = self.game
        states = game.states
        value = 0
        for m in _candidate_masks(game, mask):
            nxt = mask & ~m
            if states.contains_mask(nxt) and self.truth_mask(nxt) == 0:
                value = 1
                break
        if self.memo_limit is not None and len(memo) >= self.memo_limit:
            raise MemoLimitExceeded(f"memo table exceeded {self.memo_limit} entries")
        memo[mask] = value
        return value

    def truth(self, position: PositionSet) -> TruthValue:
        _require_member(self.game, position)
        return self.truth_mask(position.mask)

    def best_move(self, position: PositionSet) -> MoveSet | None:
        """First winning move in canonical order, or None from a lost position."""
        _require_member(self.game, position)
        for m in _admissible_masks(self.game, position.mask):
            if self.truth_mask(position.mask & ~m) == 0:
                return MoveSet(self.game.ground, m)
        return None


def truth(
    game: OccupationGame,
    position: PositionSet,
    *,
    cap: int | None = None,
    memo_limit: int | None = None,
) -> TruthValue:
    """Win/loss value of ``position``: 1 iff the side to move can force a win."""
    return Solver(game, cap=cap, memo_limit=memo_limit).truth(position)


def best_move(
    game: OccupationGame,
    position: PositionSet,
    *,
    cap: int | None = None,
) -> MoveSet | None:
    return Solver(game, cap=cap).best_move(position)


Policy = Callable[[OccupationGame, PositionSet], MoveSet]


def playout(
    game: OccupationGame,
    policy_first: Policy,
    policy_second: Policy,
    *,
    cap: int | None = None,
) -> GameTrace:
    """Alternate the two policies from the start until no move is admissible.

    Raises IllegalMove when a policy returns a move that is not admissible at
    the current position.
    """
    cap = DEFAULT_SOLVE_CAP if cap is None else cap
    if len(game.ground) > cap:
        raise CapExceeded(
            f"ground set has {len(game.ground)} elements, explicit-solve cap is {cap}"
        )
    _require_member(game, game.start)
    policies = (policy_first, policy_second)
    position = game.start
    positions = [position]
    moves: list[MoveSet] = []
    while True:
        legal = _admissible_masks(game, position.mask)
        if not legal:
            return GameTrace(tuple(positions), tuple(moves), loser=len(moves) % 2)
        move = policies[len(moves) % 2](game, position)
        if move.ground != game.ground or move.mask not in legal:
            raise IllegalMove(
                _illegal_clause(game, position.mask, move.mask),
                f"policy returned inadmissible move {move.labels} at {position.labels}",
            )
        moves.append(move)
        position = PositionSet(game.ground, position.mask & ~move.mask)
        positions.append(position)


def _illegal_clause(game: OccupationGame, position_mask: int, move_mask: int) -> str:
    if move_mask & ~position_mask:
        return CLAUSE_NOT_A_SUBSET
    if not any(move_mask == m for m in _candidate_masks(game, position_mask)):
        return CLAUSE_NOT_IN_O
    return CLAUSE_NOT_IN_S


def optimal_policy(*, cap: int | None = None) -> Policy:
    """Play the first winning move in canonical order; when lost, play the
    canonically first admissible move."""
    solvers: dict[int, Solver] = {}

    def policy(game: OccupationGame, position: PositionSet) -> MoveSet:
        solver = solvers.get(id(game))
        if solver is None:
            solver = solvers[id(game)] = Solver(game, cap=cap)
        move = solver.best_move(position)
        if move is not None:
            return move
        legal = _admissible_masks(game, position.mask)
        if not legal:
            raise GameError("policy consulted at a terminal position")
        return MoveSet(game.ground, legal[0])

    return policy


def random_policy(rng: random.Random) -> Policy:
    def policy(game: OccupationGame, position: PositionSet) -> MoveSet:
        legal = _admissible_masks(game, position.mask)
        if not legal:
            raise GameError("policy consulted at a terminal position")
        return MoveSet(game.ground, rng.choice(legal))

    return policy


def relabel(game: OccupationGame, mapping: dict[str, str]) -> OccupationGame:
    """Push a label bijection through the game's structure.

    The ground-set order is unchanged; every stored subset (states, moves,
    start) is mapped element-wise, so the result is the isomorphic game in
    which each label plays the role its image played before.
    """
    labels = game.ground.labels
    if set(mapping) != set(labels) or set(mapping.values()) != set(labels):
        raise ValueError("mapping is not a bijection on the ground-set labels")
    index = game.ground._index
    perm = {i: index[mapping[label]] for i, label in enumerate(labels)}

    def remap(mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << perm[i]
        return out

    states: StateFamily
    if isinstance(game.states, AllSubsets):
        states = game.states
    elif isinstance(game.states, ExplicitStates):
        states = ExplicitStates(tuple(sorted(remap(m) for m in game.states.masks)))
    else:
        states = BandStates(remap(game.states.w_mask), remap(game.states.v_mask))

    if not isinstance(game.moves, ExplicitMoves):
        raise ValueError("relabel supports explicit move families only")
    moves = ExplicitMoves(tuple(sorted((remap(m) for m in game.moves.masks), key=_mask_sort_key)))

    return OccupationGame(
        ground=game.ground,
        states=states,
        moves=moves,
        start=PositionSet(game.ground, remap(game.start.mask)),
    )


def relabel_position(game: OccupationGame, mapping: dict[str, str], position: PositionSet) -> PositionSet:
    """Map a position through the same bijection used by ``relabel``."""
    return PositionSet.from_labels(
        game.ground, (mapping[label] for label in position.labels)
    )
