import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from occupation import CapExceeded, IllegalMove, truth
from occupation.classic import (
    PileMove,
    PileSolver,
    embed_nim,
    embed_subtraction,
    nim_truth_closed_form,
    pile_apply,
    pile_moves,
    pile_truth,
    subtraction_truth_closed_form,
)

from oracles import naive_nim_truth, naive_subtraction_truth

sizes_lists = st.lists(st.integers(min_value=0, max_value=6), max_size=4)


class TestNimClosedForm:
    def test_no_piles_is_lost(self):
        assert nim_truth_closed_form([]) == 0

    def test_single_pile_is_won(self):
        assert nim_truth_closed_form([5]) == 1

    def test_123_is_lost(self):
        # Frozen from the frozenset brute-force oracle.
        assert nim_truth_closed_form([1, 2, 3]) == 0
        assert naive_nim_truth([1, 2, 3]) == 0

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            nim_truth_closed_form([-1])

    @given(sizes_lists)
    @settings(max_examples=100, deadline=None)
    def test_matches_xor_of_sizes(self, sizes):
        expected = 0
        for s in sizes:
            expected ^= s
        assert nim_truth_closed_form(sizes) == (1 if expected else 0)


class TestSubtractionClosedForm:
    def test_multiple_of_three_is_lost(self):
        # Frozen from the frozenset brute-force oracle; 3 mod 3 = 0.
        assert subtraction_truth_closed_form([3]) == 0
        assert naive_subtraction_truth([3]) == 0

    def test_single_element_is_won(self):
        assert subtraction_truth_closed_form([1]) == 1

    def test_residues_one_and_two(self):
        # Frozen from the naive pile recursion; residues 1 xor 2 = 3 != 0.
        assert subtraction_truth_closed_form([4, 2]) == 1
        assert naive_subtraction_truth([4, 2]) == 1

    @given(sizes_lists)
    @settings(max_examples=100, deadline=None)
    def test_matches_xor_of_residues(self, sizes):
        expected = 0
        for s in sizes:
            expected ^= s % 3
        assert subtraction_truth_closed_form(sizes) == (1 if expected else 0)


class TestPileSolver:
    def test_nim_123(self):
        assert pile_truth("nim", [1, 2, 3]) == 0

    def test_subtraction_pair(self):
        assert pile_truth("subtraction", [2]) == 1

    @pytest.mark.parametrize("a", range(11))
    def test_nim_mirror_piles_lose(self, a):
        assert pile_truth("nim", [a, a]) == 0

    def test_cap(self):
        with pytest.raises(CapExceeded):
            pile_truth("nim", [64, 1])
        assert pile_truth("nim", [64], cap=64) == 1

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            pile_truth("wythoff", [1])

    def test_best_move_wins(self):
        solver = PileSolver("nim")
        move = solver.best_move([1, 2, 3, 4])
        assert move is not None
        after = pile_apply("nim", [1, 2, 3, 4], move)
        assert solver.truth(after) == 0

    def test_best_move_absent_when_lost(self):
        assert PileSolver("nim").best_move([1, 1]) is None

    def test_memo_shared_across_queries(self):
        solver = PileSolver("nim")
        solver.truth([3, 3])
        before = solver.memo_size
        solver.truth([3, 3])
        assert solver.memo_size == before


class TestPileApply:
    def test_apply(self):
        assert pile_apply("nim", (3, 2), PileMove(0, 2)) == (1, 2)

    def test_take_too_many_is_not_a_subset(self):
        with pytest.raises(IllegalMove) as err:
            pile_apply("nim", (2,), PileMove(0, 3))
        assert err.value.clause == "not-a-subset"

    def test_take_three_in_subtraction_is_not_in_family(self):
        with pytest.raises(IllegalMove) as err:
            pile_apply("subtraction", (5,), PileMove(0, 3))
        assert err.value.clause == "not-in-O"

    def test_bad_pile_index(self):
        with pytest.raises(IllegalMove) as err:
            pile_apply("nim", (2,), PileMove(4, 1))
        assert err.value.clause == "not-in-O"

    def test_move_listing_order(self):
        assert pile_moves("subtraction", (2, 1)) == [
            PileMove(0, 1),
            PileMove(0, 2),
            PileMove(1, 1),
        ]


class TestEmbeddings:
    def test_nim_pile_of_two_has_three_moves(self):
        game = embed_nim([2])
        assert len(game.moves.masks) == 3

    def test_nim_two_singleton_piles(self):
        game = embed_nim([1, 1])
        assert len(game.moves.masks) == 2

    def test_nim_21(self):
        game = embed_nim([2, 1])
        assert len(game.moves.masks) == 4
        assert truth(game, game.start) == 1

    def test_subtraction_pile_of_two(self):
        game = embed_subtraction([2])
        assert len(game.moves.masks) == 3

    def test_subtraction_pile_of_three(self):
        game = embed_subtraction([3])
        assert len(game.moves.masks) == 6
        assert truth(game, game.start) == 0

    def test_subtraction_empty_pile(self):
        game = embed_subtraction([0])
        assert len(game.moves.masks) == 0
        assert truth(game, game.start) == 0

    def test_cap(self):
        with pytest.raises(CapExceeded):
            embed_nim([20, 20])

    def test_regions_tag_piles(self):
        game = embed_nim([1, 2])
        assert game.ground.region_of("p1_0") == "p1"
        assert game.ground.region_of("p2_1") == "p2"


class TestThreeWayAgreement:
    # Full acceptance grid lives in test_acceptance; a smaller sweep here.
    @pytest.mark.parametrize("a", range(4))
    @pytest.mark.parametrize("b", range(4))
    def test_nim_two_piles(self, a, b):
        closed = nim_truth_closed_form([a, b])
        assert closed == pile_truth("nim", [a, b])
        game = embed_nim([a, b])
        assert closed == truth(game, game.start)

    @pytest.mark.parametrize("a", range(4))
    @pytest.mark.parametrize("b", range(4))
    def test_subtraction_two_piles(self, a, b):
        closed = subtraction_truth_closed_form([a, b])
        assert closed == pile_truth("subtraction", [a, b])
        game = embed_subtraction([a, b])
        assert closed == truth(game, game.start)


class TestAlgebraicProperties:
    @given(sizes_lists, st.randoms(use_true_random=False))
    @settings(max_examples=80, deadline=None)
    def test_permutation_invariance(self, sizes, rng):
        shuffled = sizes[:]
        rng.shuffle(shuffled)
        assert nim_truth_closed_form(sizes) == nim_truth_closed_form(shuffled)
        assert subtraction_truth_closed_form(sizes) == subtraction_truth_closed_form(shuffled)
        if sum(sizes) <= 12:
            assert pile_truth("nim", sizes) == pile_truth("nim", shuffled)
            assert pile_truth("subtraction", sizes) == pile_truth("subtraction", shuffled)

    @given(sizes_lists)
    @settings(max_examples=80, deadline=None)
    def test_zero_pile_neutrality(self, sizes):
        padded = sizes + [0]
        assert nim_truth_closed_form(padded) == nim_truth_closed_form(sizes)
        assert subtraction_truth_closed_form(padded) == subtraction_truth_closed_form(sizes)
        if sum(sizes) <= 12:
            assert pile_truth("nim", padded) == pile_truth("nim", sizes)
            assert pile_truth("subtraction", padded) == pile_truth("subtraction", sizes)

    @given(sizes_lists, st.integers(min_value=0, max_value=8))
    @settings(max_examples=80, deadline=None)
    def test_nim_pair_cancellation(self, sizes, a):
        assert nim_truth_closed_form(sizes + [a, a]) == nim_truth_closed_form(sizes)

    @given(sizes_lists, st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=4))
    @settings(max_examples=80, deadline=None)
    def test_subtraction_period_three(self, sizes, index, multiples):
        if not sizes:
            sizes = [0]
        index %= len(sizes)
        bumped = sizes[:]
        bumped[index] += 3 * multiples
        assert subtraction_truth_closed_form(bumped) == subtraction_truth_closed_form(sizes)
