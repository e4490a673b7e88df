"""Subset Sum encoded as an occupation game.

For weights t_1..t_n and target t the built game has four regions: counters
V and W of size n, a ledger L of size 2nt + n - 1, and one pile Y_i of size
t_i per weight.  Legal states keep |A & W| - |A & V| in {0, 1}.  One move
family (O1) removes a V element, one whole pile Y_j, and either 2n*t_j
ledger elements or none; the other (O2) removes one W element and one
ledger element.  The band constraint forces the families to alternate, and
the first player can win from the full position exactly when some subset of
the weights sums to the target, so deciding Subset Sum reduces to solving
the game.

Elements within V, W, L, and within each pile are interchangeable, and O1
only ever removes whole piles, so positions reachable from the start are
solved on compact count states (v, w, l, pile mask) instead of element
sets.  ``gadget_to_explicit`` builds the element-level game for
cross-validation at small sizes.
"""

from __future__ import annotations

import warnings
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Literal

from .core import (
    DEFAULT_SOLVE_CAP,
    BandStates,
    ExplicitMoves,
    GroundSet,
    OccupationGame,
    PositionSet,
    TruthValue,
    _mask_sort_key,
)
from .errors import (
    CLAUSE_NOT_A_SUBSET,
    CLAUSE_NOT_IN_O,
    CLAUSE_NOT_IN_S,
    CapExceeded,
    GameError,
    IllegalMove,
    InvalidInstance,
    WitnessError,
)

# Reject instances whose ledger region would exceed this many elements.
DEFAULT_LEDGER_BOUND = 10**6


class GadgetSizeWarning(UserWarning):
    """The target exceeds the total weight; the game is valid but the answer
    is forced and the ledger still grows with the target."""


@dataclass(frozen=True)
class SubsetSumInstance:
    """Positive integer weights and a positive integer target."""

    weights: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(self.weights) < 1:
            raise InvalidInstance("at least one weight is required")
        for w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise InvalidInstance(f"weights must be positive integers, got {w!r}")
        if not isinstance(self.target, int) or self.target < 1:
            raise InvalidInstance(f"target must be a positive integer, got {self.target!r}")

    @classmethod
    def of(cls, weights: Iterable[int], target: int) -> "SubsetSumInstance":
        return cls(tuple(weights), target)


@dataclass(frozen=True)
class GadgetState:
    """Count view of a gadget position.

    ``v``, ``w``, ``l`` count remaining elements in the three regions; bit
    i - 1 of ``mask`` is set while pile i is still fully present.
    """

    v: int
    w: int
    l: int
    mask: int


@dataclass(frozen=True)
class GadgetMove:
    """O1 removes one V element, whole pile ``pile``, and ``l_take`` ledger
    elements; O2 removes one W element and one ledger element."""

    family: Literal["O1", "O2"]
    pile: int | None = None
    l_take: int | None = None


O2 = GadgetMove("O2")


@dataclass(frozen=True)
class GadgetGame:
    instance: SubsetSumInstance

    @property
    def n(self) -> int:
        return len(self.instance.weights)

    @property
    def weights(self) -> tuple[int, ...]:
        return self.instance.weights

    @property
    def target(self) -> int:
        return self.instance.target

    @cached_property
    def ledger_size(self) -> int:
        return 2 * self.n * self.target + self.n - 1

    @cached_property
    def ground_size(self) -> int:
        return 2 * self.n + self.ledger_size + sum(self.weights)

    def ledger_take(self, pile: int) -> int:
        """Ledger elements an O1 move on ``pile`` may remove besides zero."""
        return 2 * self.n * self.weights[pile - 1]

    def start(self) -> GadgetState:
        return GadgetState(self.n, self.n, self.ledger_size, (1 << self.n) - 1)

    def state_count_bound(self) -> int:
        n = self.n
        return (n + 1) * 2 * (2 * n * self.target + n) * (1 << n)


def build_gadget(
    instance: SubsetSumInstance, *, ledger_bound: int | None = None
) -> GadgetGame:
    """Construct the game encoding ``instance``; region sizes are fixed by
    the weights and target."""
    ledger_bound = DEFAULT_LEDGER_BOUND if ledger_bound is None else ledger_bound
    game = GadgetGame(instance)
    if game.ledger_size > ledger_bound:
        raise InvalidInstance(
            f"ledger region would need {game.ledger_size} elements, bound is {ledger_bound}"
        )
    if instance.target > sum(instance.weights):
        warnings.warn(
            f"target {instance.target} exceeds total weight {sum(instance.weights)}; "
            f"the answer is forced but the game has {game.ground_size} elements",
            GadgetSizeWarning,
            stacklevel=2,
        )
    return game


def _check_state(g: GadgetGame, s: GadgetState) -> None:
    n = g.n
    ok = (
        0 <= s.v <= n
        and 0 <= s.w <= n
        and 0 <= s.l <= g.ledger_size
        and s.mask & ~((1 << n) - 1) == 0
        and s.w - s.v in (0, 1)
    )
    if not ok:
        raise GameError(f"state {s} violates the gadget invariants")


def _piles_in(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def gadget_moves(g: GadgetGame, s: GadgetState) -> list[GadgetMove]:
    """Admissible moves at ``s``, in canonical order (pile ascending, larger
    ledger take first).

    The band constraint makes the families alternate: with the counters
    level only O1 moves survive, and with W one ahead only O2 does.
    """
    _check_state(g, s)
    if s.w == s.v:
        if s.v == 0:
            return []
        out = []
        for pile in _piles_in(s.mask):
            big = g.ledger_take(pile)
            if big <= s.l:
                out.append(GadgetMove("O1", pile, big))
            out.append(GadgetMove("O1", pile, 0))
        return out
    if s.l >= 1:
        return [O2]
    return []


def gadget_apply(g: GadgetGame, s: GadgetState, m: GadgetMove) -> GadgetState:
    """Apply an admissible move to the count state."""
    if m not in gadget_moves(g, s):
        raise IllegalMove(_illegal_clause(g, s, m), f"move {m} is not admissible at {s}")
    if m.family == "O1":
        assert m.pile is not None and m.l_take is not None
        return GadgetState(s.v - 1, s.w, s.l - m.l_take, s.mask & ~(1 << (m.pile - 1)))
    return GadgetState(s.v, s.w - 1, s.l - 1, s.mask)


def _illegal_clause(g: GadgetGame, s: GadgetState, m: GadgetMove) -> str:
    if m.family == "O1":
        if m.pile is None or not 1 <= m.pile <= g.n or m.l_take not in (0, g.ledger_take(m.pile)):
            return CLAUSE_NOT_IN_O
        if s.v == 0 or not s.mask >> (m.pile - 1) & 1 or (m.l_take or 0) > s.l:
            return CLAUSE_NOT_A_SUBSET
        return CLAUSE_NOT_IN_S
    if m.family == "O2":
        if s.w == 0 or s.l == 0:
            return CLAUSE_NOT_A_SUBSET
        return CLAUSE_NOT_IN_S
    return CLAUSE_NOT_IN_O


class GadgetSolver:
    """Exact win/loss evaluation on count states, owning one memo table."""

    def __init__(self, g: GadgetGame):
        self.g = g
        self._memo: dict[GadgetState, int] = {}

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def truth(self, s: GadgetState) -> TruthValue:
        hit = self._memo.get(s)
        if hit is not None:
            return hit
        value = 0
        for m in gadget_moves(self.g, s):
            if self.truth(_apply_unchecked(self.g, s, m)) == 0:
                value = 1
                break
        self._memo[s] = value
        return value

    def best_move(self, s: GadgetState) -> GadgetMove | None:
        """Winning move under the witness tie-break: prefer O1 moves that
        take from the ledger, then the lowest pile index."""
        if self.truth(s) == 0:
            return None
        moves = gadget_moves(self.g, s)
        ranked = sorted(
            moves, key=lambda m: (m.l_take == 0 if m.family == "O1" else 0, m.pile or 0)
        )
        for m in ranked:
            if self.truth(_apply_unchecked(self.g, s, m)) == 0:
                return m
        raise AssertionError("winning state with no winning move")


def _apply_unchecked(g: GadgetGame, s: GadgetState, m: GadgetMove) -> GadgetState:
    if m.family == "O1":
        return GadgetState(s.v - 1, s.w, s.l - (m.l_take or 0), s.mask & ~(1 << ((m.pile or 1) - 1)))
    return GadgetState(s.v, s.w - 1, s.l - 1, s.mask)


def gadget_truth(g: GadgetGame, s: GadgetState) -> TruthValue:
    return GadgetSolver(g).truth(s)


def reachable_states(g: GadgetGame) -> list[GadgetState]:
    """Every state reachable from the start, in breadth-first order."""
    start = g.start()
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for m in gadget_moves(g, s):
            nxt = _apply_unchecked(g, s, m)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def subset_sum_oracle(instance: SubsetSumInstance) -> bool:
    """Does any subset of the weights sum exactly to the target?

    Tabulates reachable sums with a bitset; bit k of ``sums`` is set when
    some subset sums to k.  Independent of all game code.
    """
    target = instance.target
    keep = (1 << (target + 1)) - 1
    sums = 1
    for w in instance.weights:
        sums = (sums | (sums << w)) & keep
    return bool(sums >> target & 1)


def decide_subset_sum_via_game(instance: SubsetSumInstance) -> bool:
    """Decide Subset Sum by solving the encoding game from its start."""
    g = build_gadget(instance)
    return gadget_truth(g, g.start()) == 1


def extract_witness(g: GadgetGame) -> set[int] | None:
    """Recover a subset of pile indices summing to the target from the
    winning line, or None when the first player is lost.

    Optimal self-play from the start under the tie-break rule; every pile
    the first player removes together with its ledger block belongs to the
    witness.  A collected set that does not sum to the target indicates a
    solver bug and raises rather than returning an invalid witness.
    """
    solver = GadgetSolver(g)
    s = g.start()
    if solver.truth(s) == 0:
        return None
    witness: set[int] = set()
    mover = 0
    while True:
        moves = gadget_moves(g, s)
        if not moves:
            break
        m = solver.best_move(s) or moves[0]
        if mover == 0 and m.family == "O1" and m.pile is not None and m.l_take:
            witness.add(m.pile)
        s = _apply_unchecked(g, s, m)
        mover ^= 1
    total = sum(g.weights[i - 1] for i in witness)
    if total != g.target:
        raise WitnessError(
            f"collected piles {sorted(witness)} sum to {total}, target is {g.target}"
        )
    return witness


def gadget_ground(g: GadgetGame) -> GroundSet:
    """Element-level ground set: counters first, then the ledger, then the
    piles, with region tags for display."""
    labels: list[str] = []
    regions: list[str] = []
    labels.extend(f"v{i}" for i in range(g.n))
    regions.extend(["V"] * g.n)
    labels.extend(f"w{i}" for i in range(g.n))
    regions.extend(["W"] * g.n)
    labels.extend(f"l{i}" for i in range(g.ledger_size))
    regions.extend(["L"] * g.ledger_size)
    for i, weight in enumerate(g.weights, start=1):
        labels.extend(f"y{i}_{k}" for k in range(weight))
        regions.extend([f"Y{i}"] * weight)
    return GroundSet.of(labels, regions)


def gadget_to_explicit(g: GadgetGame, *, cap: int | None = None) -> OccupationGame:
    """The literal element-level game, with the full move list enumerated.

    Only intended for cross-validating the count solver at small sizes; the
    move list grows combinatorially with the ledger.
    """
    cap = DEFAULT_SOLVE_CAP if cap is None else cap
    if g.ground_size > cap:
        raise CapExceeded(
            f"gadget has {g.ground_size} elements, explicit-solve cap is {cap}"
        )
    ground = gadget_ground(g)
    n = g.n
    v_indices = range(n)
    w_indices = range(n, 2 * n)
    l_indices = range(2 * n, 2 * n + g.ledger_size)

    pile_masks = []
    offset = 2 * n + g.ledger_size
    for weight in g.weights:
        pile_masks.append(((1 << weight) - 1) << offset)
        offset += weight

    moves: list[int] = []
    for v in v_indices:
        for pile_mask, weight in zip(pile_masks, g.weights):
            base = (1 << v) | pile_mask
            take = 2 * n * weight
            if take <= g.ledger_size:
                for combo in combinations(l_indices, take):
                    ledger = 0
                    for i in combo:
                        ledger |= 1 << i
                    moves.append(base | ledger)
            moves.append(base)
    for w in w_indices:
        for i in l_indices:
            moves.append((1 << w) | (1 << i))

    w_mask = ((1 << n) - 1) << n
    v_mask = (1 << n) - 1
    return OccupationGame(
        ground=ground,
        states=BandStates(w_mask, v_mask),
        moves=ExplicitMoves(tuple(sorted(moves, key=_mask_sort_key))),
        start=PositionSet(ground, ground.full_mask),
    )
