"""Single-bit flips and their score changes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alignuniq import (
    FLIP_CATEGORIES,
    BinarySequence,
    FlipOutcome,
    InvalidInputError,
    best_score,
    build_score_matrix,
    delta_score,
    extremal_alignments,
    flip_at,
    random_flip,
)
from helpers import instances

WORKED_X = BinarySequence.from_string("001110")
WORKED_Y = BinarySequence.from_string("11110011")


class TestFlipAt:
    def test_flips_exactly_one_symbol(self):
        flipped = flip_at(WORKED_X, 3)
        assert flipped.to_string() == "000110"
        assert WORKED_X.to_string() == "001110"

    @given(instances(max_n=16), st.data())
    def test_involution(self, instance, data):
        x, _ = instance
        t = data.draw(st.integers(min_value=1, max_value=len(x)))
        assert flip_at(flip_at(x, t), t) == x

    @pytest.mark.parametrize("t", [0, 7, -1])
    def test_position_bounds(self, t):
        with pytest.raises(InvalidInputError):
            flip_at(WORKED_X, t)


class TestFlipOutcome:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            FlipOutcome(t=1, delta=2, category="AGREE_MATCH")
        with pytest.raises(InvalidInputError):
            FlipOutcome(t=1, delta=0, category="SOMETHING")

    def test_csv_fragment(self):
        outcome = FlipOutcome(t=4, delta=-1, category="AGREE_MATCH")
        assert outcome.csv_fragment() == ("4", "-1", "AGREE_MATCH")

    def test_category_inventory(self):
        assert FLIP_CATEGORIES == (
            "DISAG_YDIFF",
            "DISAG_MISMATCH",
            "DISAG_MATCH",
            "AGREE_MISMATCH",
            "AGREE_MATCH",
        )


class TestDeltaScore:
    def test_worked_instance(self):
        # Positions 5 and 6 sit where the two extremal alignments split
        # onto different y symbols, so each flip there gains a match.
        for t in (5, 6):
            outcome = delta_score(WORKED_X, WORKED_Y, t)
            assert outcome.delta == 1
            assert outcome.category == "DISAG_YDIFF"
        outcome = delta_score(WORKED_X, WORKED_Y, 3)
        assert outcome.delta == -1
        assert outcome.category == "AGREE_MATCH"

    def test_precomputed_pair_changes_nothing(self):
        pair = extremal_alignments(
            build_score_matrix(WORKED_X, WORKED_Y), WORKED_X, WORKED_Y
        )
        for t in range(1, len(WORKED_X) + 1):
            assert delta_score(WORKED_X, WORKED_Y, t, pair=pair) == delta_score(
                WORKED_X, WORKED_Y, t
            )

    def test_pair_dimension_check(self):
        x = BinarySequence.from_string("010")
        y = BinarySequence.from_string("0110")
        pair = extremal_alignments(build_score_matrix(x, y), x, y)
        with pytest.raises(InvalidInputError):
            delta_score(WORKED_X, WORKED_Y, 1, pair=pair)

    def test_position_bounds(self):
        with pytest.raises(InvalidInputError):
            delta_score(WORKED_X, WORKED_Y, 0)
        with pytest.raises(InvalidInputError):
            delta_score(WORKED_X, WORKED_Y, 7)

    @settings(max_examples=100, deadline=None)
    @given(instances(max_n=16), st.data())
    def test_change_matches_two_full_solves(self, instance, data):
        x, y = instance
        t = data.draw(st.integers(min_value=1, max_value=len(x)))
        outcome = delta_score(x, y, t)
        assert outcome.delta == best_score(flip_at(x, t), y) - best_score(x, y)
        assert outcome.delta in (-1, 0, 1)

    @settings(max_examples=100, deadline=None)
    @given(instances(max_n=16), st.data())
    def test_guaranteed_gains(self, instance, data):
        # Every optimal alignment is sandwiched between the extremal
        # pair, so a flip at a position where some optimal alignment
        # mismatches must gain, and one where every optimal alignment
        # matches cannot.  Only DISAG_MATCH is left unconstrained.
        x, y = instance
        t = data.draw(st.integers(min_value=1, max_value=len(x)))
        outcome = delta_score(x, y, t)
        if outcome.category in ("DISAG_YDIFF", "DISAG_MISMATCH", "AGREE_MISMATCH"):
            assert outcome.delta == 1
        if outcome.category == "AGREE_MATCH":
            assert outcome.delta in (-1, 0)


class TestRandomFlip:
    def test_deterministic_under_a_fixed_generator(self):
        rng_a = np.random.default_rng(7)
        rng_b = np.random.default_rng(7)
        first = random_flip(WORKED_X, WORKED_Y, rng_a)
        second = random_flip(WORKED_X, WORKED_Y, rng_b)
        assert first == second

    def test_positions_cover_the_full_range(self):
        rng = np.random.default_rng(0)
        seen = {random_flip(WORKED_X, WORKED_Y, rng).t for _ in range(200)}
        assert seen == set(range(1, len(WORKED_X) + 1))

    def test_draws_positions_uniformly(self):
        # Chi squared goodness of fit against the uniform law on 1..10.
        # The cutoff is the upper 1e-6 quantile for 9 degrees of freedom,
        # so a correct generator trips this about once per million runs.
        x = BinarySequence.from_string("0110100101")
        y = BinarySequence.from_string("110101101100")
        pair = extremal_alignments(build_score_matrix(x, y), x, y)
        rng = np.random.default_rng(90125)
        draws = 100_000
        counts = np.zeros(len(x), dtype=np.int64)
        for _ in range(draws):
            counts[random_flip(x, y, rng, pair=pair).t - 1] += 1
        expected = draws / len(x)
        statistic = float(((counts - expected) ** 2 / expected).sum())
        assert statistic < 44.81093787062026

    def test_outcome_agrees_with_delta_score(self):
        rng = np.random.default_rng(3)
        outcome = random_flip(WORKED_X, WORKED_Y, rng)
        assert outcome == delta_score(WORKED_X, WORKED_Y, outcome.t)
