"""Nim and take-1-or-2 subtraction piles.

Closed-form win/loss values, an exact solver over pile counts, and
embeddings into explicit occupation games so all three routes can be
cross-checked against each other.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Literal

from .core import (
    DEFAULT_SOLVE_CAP,
    AllSubsets,
    ExplicitMoves,
    GroundSet,
    OccupationGame,
    PositionSet,
    StructuredMoves,
    TruthValue,
    _mask_sort_key,
)
from .errors import (
    CLAUSE_NOT_A_SUBSET,
    CLAUSE_NOT_IN_O,
    CapExceeded,
    IllegalMove,
)

Variant = Literal["nim", "subtraction"]

# Total pile count the structured solver accepts unless overridden.
DEFAULT_PILE_CAP = 64


@dataclass(frozen=True)
class PileMove:
    """Take ``take`` elements from pile ``pile`` (0-based vector index)."""

    pile: int
    take: int


def _check_sizes(piles: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(piles)
    for s in sizes:
        if not isinstance(s, int) or s < 0:
            raise ValueError(f"pile sizes must be nonnegative integers, got {s!r}")
    return sizes


def _digit_product_truth(values: Sequence[int], width: int) -> TruthValue:
    # Loss iff every digit column XORs to zero: the product of the
    # complemented column-XORs is then 1, and truth is its complement.
    product = 1
    for j in range(width):
        column = 0
        for v in values:
            column ^= (v >> j) & 1
        product &= column ^ 1
    return product ^ 1


def nim_truth_closed_form(piles: Sequence[int]) -> TruthValue:
    """Win/loss for Nim piles: loss exactly when the sizes XOR to zero."""
    sizes = _check_sizes(piles)
    width = max((s.bit_length() for s in sizes), default=0)
    return _digit_product_truth(sizes, width)


def subtraction_truth_closed_form(piles: Sequence[int]) -> TruthValue:
    """Win/loss for take-1-or-2 piles: loss when the residues mod 3 XOR to zero."""
    sizes = _check_sizes(piles)
    return _digit_product_truth([s % 3 for s in sizes], 2)


def pile_moves(variant: Variant, sizes: Sequence[int]) -> list[PileMove]:
    """Legal pile moves in canonical (pile, take) order."""
    _check_variant(variant)
    limit = 2 if variant == "subtraction" else None
    out = []
    for i, size in enumerate(sizes):
        top = size if limit is None else min(limit, size)
        for take in range(1, top + 1):
            out.append(PileMove(i, take))
    return out


def pile_apply(variant: Variant, sizes: Sequence[int], move: PileMove) -> tuple[int, ...]:
    """Apply a pile move, raising IllegalMove with the violated clause."""
    _check_variant(variant)
    sizes = tuple(sizes)
    if not 0 <= move.pile < len(sizes):
        raise IllegalMove(CLAUSE_NOT_IN_O, f"no pile at index {move.pile}")
    if move.take < 1 or (variant == "subtraction" and move.take > 2):
        raise IllegalMove(CLAUSE_NOT_IN_O, f"cannot take {move.take} in {variant}")
    if move.take > sizes[move.pile]:
        raise IllegalMove(
            CLAUSE_NOT_A_SUBSET,
            f"pile {move.pile} has {sizes[move.pile]} elements, cannot take {move.take}",
        )
    return sizes[: move.pile] + (sizes[move.pile] - move.take,) + sizes[move.pile + 1 :]


class PileSolver:
    """Exact memoized recursion over pile counts.

    Positions are canonicalized to the sorted multiset of nonzero sizes, so
    symmetric states share one memo entry.  Within-pile symmetry makes counts
    a faithful abstraction of the element-level game.
    """

    def __init__(self, variant: Variant, *, cap: int | None = None):
        _check_variant(variant)
        self.variant = variant
        self.cap = DEFAULT_PILE_CAP if cap is None else cap
        self._memo: dict[tuple[int, ...], int] = {}

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def truth(self, sizes: Sequence[int]) -> TruthValue:
        sizes = _check_sizes(sizes)
        if sum(sizes) > self.cap:
            raise CapExceeded(
                f"total pile size {sum(sizes)} exceeds structured cap {self.cap}"
            )
        return self._solve(_canonical(sizes))

    def best_move(self, sizes: Sequence[int]) -> PileMove | None:
        """First winning move in (pile, take) order, or None when lost."""
        sizes = _check_sizes(sizes)
        if self.truth(sizes) == 0:
            return None
        for move in pile_moves(self.variant, sizes):
            child = pile_apply(self.variant, sizes, move)
            if self._solve(_canonical(child)) == 0:
                return move
        raise AssertionError("winning position with no winning move")

    def _solve(self, key: tuple[int, ...]) -> int:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        limit = 2 if self.variant == "subtraction" else None
        value = 0
        seen: set[tuple[int, ...]] = set()
        for i, size in enumerate(key):
            if i > 0 and key[i - 1] == size:
                continue  # identical pile, same children
            top = size if limit is None else min(limit, size)
            for take in range(1, top + 1):
                child = _canonical(key[:i] + (size - take,) + key[i + 1 :])
                if child in seen:
                    continue
                seen.add(child)
                if self._solve(child) == 0:
                    value = 1
                    break
            if value:
                break
        self._memo[key] = value
        return value


def pile_truth(variant: Variant, piles: Sequence[int], *, cap: int | None = None) -> TruthValue:
    return PileSolver(variant, cap=cap).truth(piles)


def _canonical(sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(s for s in sizes if s > 0))


def _check_variant(variant: str) -> None:
    if variant not in ("nim", "subtraction"):
        raise ValueError(f"unknown variant {variant!r}")


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _small_submasks(mask: int, max_size: int) -> Iterator[int]:
    bits = []
    m = mask
    i = 0
    while m:
        if m & 1:
            bits.append(1 << i)
        m >>= 1
        i += 1
    for a, bit in enumerate(bits):
        yield bit
        if max_size >= 2:
            for other in bits[a + 1 :]:
                yield bit | other


@dataclass(frozen=True)
class PileSubsetMoves:
    """Structured move family over disjoint piles.

    ``max_take`` of None generates every nonempty subset of a pile; 2
    generates the one- and two-element subsets.
    """

    pile_masks: tuple[int, ...]
    max_take: int | None = None

    def candidate_masks(self, position_mask: int) -> Iterator[int]:
        for pile in self.pile_masks:
            present = pile & position_mask
            if not present:
                continue
            if self.max_take is None:
                yield from _submasks(present)
            else:
                yield from _small_submasks(present, self.max_take)


def pile_ground(piles: Sequence[int]) -> tuple[GroundSet, tuple[int, ...]]:
    """Ground set for a pile embedding plus the mask of each pile.

    Labels are ``p{i}_{k}`` with 1-based pile numbers; each element is
    region-tagged with its pile.
    """
    sizes = _check_sizes(piles)
    labels: list[str] = []
    regions: list[str | None] = []
    masks: list[int] = []
    offset = 0
    for i, size in enumerate(sizes):
        labels.extend(f"p{i + 1}_{k}" for k in range(size))
        regions.extend([f"p{i + 1}"] * size)
        masks.append(((1 << size) - 1) << offset)
        offset += size
    return GroundSet.of(labels, regions), tuple(masks)


def _embed(variant: Variant, piles: Sequence[int], cap: int | None) -> OccupationGame:
    sizes = _check_sizes(piles)
    cap = DEFAULT_SOLVE_CAP if cap is None else cap
    if sum(sizes) > cap:
        raise CapExceeded(f"total pile size {sum(sizes)} exceeds explicit-solve cap {cap}")
    ground, pile_masks = pile_ground(sizes)
    max_take = 2 if variant == "subtraction" else None
    descriptor = PileSubsetMoves(pile_masks, max_take)
    moves = sorted(descriptor.candidate_masks(ground.full_mask), key=_mask_sort_key)
    return OccupationGame(
        ground=ground,
        states=AllSubsets(),
        moves=ExplicitMoves(tuple(moves)),
        start=PositionSet(ground, ground.full_mask),
    )


def embed_nim(piles: Sequence[int], *, cap: int | None = None) -> OccupationGame:
    """Explicit game whose moves are all nonempty subsets of each pile."""
    return _embed("nim", piles, cap)


def embed_subtraction(piles: Sequence[int], *, cap: int | None = None) -> OccupationGame:
    """Explicit game whose moves are the 1- and 2-subsets of each pile."""
    return _embed("subtraction", piles, cap)


def structured_embed(variant: Variant, piles: Sequence[int], *, cap: int | None = None) -> OccupationGame:
    """Same game as the explicit embedding, with the move family kept as a
    descriptor instead of an enumerated list."""
    _check_variant(variant)
    sizes = _check_sizes(piles)
    cap = DEFAULT_SOLVE_CAP if cap is None else cap
    if sum(sizes) > cap:
        raise CapExceeded(f"total pile size {sum(sizes)} exceeds explicit-solve cap {cap}")
    ground, pile_masks = pile_ground(sizes)
    max_take = 2 if variant == "subtraction" else None
    return OccupationGame(
        ground=ground,
        states=AllSubsets(),
        moves=StructuredMoves(PileSubsetMoves(pile_masks, max_take)),
        start=PositionSet(ground, ground.full_mask),
    )
