from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maxseg import (
    DensityValue,
    EmptySequence,
    IndexOutOfRange,
    NonPositiveWeight,
    NumericRange,
    build_sequence,
    compute_bounds,
    density,
)
from maxseg.core import (
    SAFE_PREFIX_BOUND,
    decimal_places,
    density_decimal_str,
    format_scaled,
    pick_scale,
    to_scaled_int,
)

from conftest import general_seq


class TestBuildSequence:
    def test_single_item(self):
        seq = build_sequence([(1, 1)])
        assert seq.prefix_value == [0, 1]
        assert seq.prefix_weight == [0, 1]
        assert seq.n == 1

    def test_prefix_sums(self):
        seq = build_sequence([(2, 1), (0, 1), (4, 1)])
        assert seq.prefix_value == [0, 2, 2, 6]
        assert seq.prefix_weight == [0, 1, 2, 3]

    def test_zero_weight_rejected(self):
        with pytest.raises(NonPositiveWeight) as exc:
            build_sequence([(1, 0)])
        assert exc.value.index == 1

    def test_negative_and_nan_weight_rejected(self):
        with pytest.raises(NonPositiveWeight):
            build_sequence([(1, 1), (2, -3)])
        with pytest.raises(NonPositiveWeight):
            build_sequence([(1.0, float("nan"))])

    def test_empty_rejected(self):
        with pytest.raises(EmptySequence):
            build_sequence([])

    def test_numeric_range_guard(self):
        with pytest.raises(NumericRange):
            build_sequence([(SAFE_PREFIX_BOUND, 1)])
        with pytest.raises(NumericRange):
            build_sequence([(0, SAFE_PREFIX_BOUND)])
        # floats are the documented inexact fallback: no integer guard
        seq = build_sequence([(float(SAFE_PREFIX_BOUND), 1.0)])
        assert not seq.exact

    def test_item_recovery_and_flags(self):
        seq = build_sequence([(2, 1), (-5, 3)])
        assert seq.items == [(2, 1), (-5, 3)]
        assert seq.value(2) == -5 and seq.weight(2) == 3
        assert not seq.is_uniform and seq.min_weight == 1 and seq.max_weight == 3
        assert build_sequence([(0, 1), (1, 1)]).is_uniform


class TestDensity:
    def test_whole_segment(self):
        seq = build_sequence([(2, 1), (0, 1), (4, 1)])
        d = density(seq, 1, 3)
        assert (d.sum, d.width) == (6, 3)
        assert d.value == 2

    def test_single_item_fractional(self):
        d = density(build_sequence([(5, 2)]), 1, 1)
        assert (d.sum, d.width) == (5, 2)
        assert d.value == 2.5

    def test_zero_sum_item(self):
        d = density(build_sequence([(2, 1), (0, 1), (4, 1)]), 2, 2)
        assert (d.sum, d.width) == (0, 1)

    def test_index_out_of_range(self):
        seq = build_sequence([(1, 1), (2, 1)])
        for i, j in [(0, 1), (1, 3), (2, 1)]:
            with pytest.raises(IndexOutOfRange):
                density(seq, i, j)

    def test_prefix_sums_match_direct_summation(self, rng):
        seq = general_seq(rng, 40)
        for _ in range(200):
            i = rng.randint(1, 40)
            j = rng.randint(i, 40)
            d = density(seq, i, j)
            assert d.sum == sum(seq.value(k) for k in range(i, j + 1))
            assert d.width == sum(seq.weight(k) for k in range(i, j + 1))


class TestDensityValueOrdering:
    def test_cross_multiplied_equality(self):
        assert DensityValue(1, 2) == DensityValue(2, 4)
        assert DensityValue(1, 2) < DensityValue(2, 3)
        assert DensityValue(-1, 2) < DensityValue(0, 5)
        assert hash(DensityValue(1, 2)) == hash(DensityValue(3, 6))

    def test_width_must_be_positive(self):
        with pytest.raises(ValueError):
            DensityValue(1, 0)

    @given(
        st.tuples(st.integers(-10**9, 10**9), st.integers(1, 10**9)),
        st.tuples(st.integers(-10**9, 10**9), st.integers(1, 10**9)),
        st.tuples(st.integers(-10**9, 10**9), st.integers(1, 10**9)),
    )
    def test_order_matches_fractions(self, a, b, c):
        da, db, dc = (DensityValue(*t) for t in (a, b, c))
        fa, fb, fc = (Fraction(t[0], t[1]) for t in (a, b, c))
        assert (da < db) == (fa < fb)
        assert (da == db) == (fa == fb)
        assert (da <= db) == (fa <= fb)
        # transitivity spot-check on the triple
        if da <= db and db <= dc:
            assert da <= dc

    def test_float_agreement_within_tolerance(self, rng):
        # exact comparisons agree with floating-point evaluation on values
        # that are not nearly tied
        for _ in range(500):
            d1 = DensityValue(rng.randint(-999, 999), rng.randint(1, 999))
            d2 = DensityValue(rng.randint(-999, 999), rng.randint(1, 999))
            f1, f2 = d1.value, d2.value
            if abs(f1 - f2) > 1e-9 * max(1.0, abs(f1), abs(f2)):
                assert (d1 < d2) == (f1 < f2)


class TestComputeBounds:
    def test_four_unit_weights(self):
        seq = build_sequence([(0, 1)] * 4)
        b = compute_bounds(seq, 2, 3)
        assert b.lidx[1:] == [2, 3, 4, None]
        assert b.uidx[1:] == [3, 4, 4, 4]
        assert b.i0 == 3

    def test_mixed_weights(self):
        seq = build_sequence([(0, 3), (0, 1), (0, 2)])
        b = compute_bounds(seq, 1, 3)
        assert b.uidx[1:] == [1, 3, 3]
        assert b.lidx[1:] == [1, 2, 3]

    def test_single_item(self):
        b = compute_bounds(build_sequence([(0, 1)]), 1, 1)
        assert b.lidx[1:] == [1]
        assert b.uidx[1:] == [1]
        assert b.i0 == 1

    def test_infeasible_returns_no_i0(self):
        b = compute_bounds(build_sequence([(0, 1)] * 3), 10, 10)
        assert b.i0 is None
        assert b.lidx[1:] == [None, None, None]

    def test_heavy_item_rejected(self):
        with pytest.raises(ValueError):
            compute_bounds(build_sequence([(0, 5)]), 1, 3)

    def test_bad_bounds_rejected(self):
        seq = build_sequence([(0, 1)])
        with pytest.raises(ValueError):
            compute_bounds(seq, 0, 1)
        with pytest.raises(ValueError):
            compute_bounds(seq, 3, 2)

    def test_definitions_and_monotonicity(self, rng):
        for _ in range(50):
            n = rng.randint(1, 60)
            seq = general_seq(rng, n)
            total = seq.prefix_weight[n]
            L = rng.randint(1, total)
            U = rng.randint(max(L, seq.max_weight), total + 3)
            b = compute_bounds(seq, L, U)
            prev_l = prev_u = 0
            for i in range(1, n + 1):
                li, ui = b.lidx[i], b.uidx[i]
                assert seq.width(i, ui) <= U
                assert ui == n or seq.width(i, ui + 1) > U
                assert ui >= prev_u
                prev_u = ui
                if li is not None:
                    assert seq.width(i, li) >= L
                    assert li == i or seq.width(i, li - 1) < L
                    assert li >= prev_l
                    prev_l = li
                    assert b.i0 >= i
                else:
                    assert seq.width(i, n) < L
            # feasibility equivalence on every pair
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    feasible = L <= seq.width(i, j) <= U
                    via_bounds = b.lidx[i] is not None and b.lidx[i] <= j <= b.uidx[i]
                    assert feasible == via_bounds

    def test_cursor_advances_linear(self, rng):
        for _ in range(20):
            n = rng.randint(1, 80)
            seq = general_seq(rng, n)
            total = seq.prefix_weight[n]
            L = rng.randint(1, total)
            b = compute_bounds(seq, L, rng.randint(max(L, seq.max_weight), total + 3))
            assert b.cursor_advances <= 2 * n


class TestDecimalHelpers:
    def test_decimal_places(self):
        assert decimal_places("1.50") == 2
        assert decimal_places("3") == 0
        assert decimal_places("1e-3") == 3
        assert decimal_places(Decimal("2.5")) == 1

    def test_pick_scale_caps_at_nine(self):
        assert pick_scale(["1.5", "0.25"]) == 100
        assert pick_scale(["1"]) == 1
        assert pick_scale(["0.1234567891234"]) == 10**9

    def test_to_scaled_int(self):
        assert to_scaled_int("2.5", 10) == 25
        assert to_scaled_int("-0.05", 100) == -5
        assert to_scaled_int(Decimal("1"), 1) == 1
        # off-grid digits round half-even
        assert to_scaled_int("0.15", 10) == 2
        assert to_scaled_int("0.25", 10) == 2

    def test_format_scaled(self):
        assert format_scaled(25, 10) == "2.5"
        assert format_scaled(30, 10) == "3"
        assert format_scaled(-5, 100) == "-0.05"
        assert format_scaled(7, 1) == "7"

    def test_density_decimal_str(self):
        assert density_decimal_str(3, 3) == "1.000000000"
        assert density_decimal_str(1, 3) == "0.333333333"
        assert density_decimal_str(2, 3) == "0.666666667"
        assert density_decimal_str(-1, 2) == "-0.500000000"
        # scales: sum 5 at scale 10 over width 2 at scale 1 -> 0.25
        assert density_decimal_str(5, 2, value_scale=10, weight_scale=1) == "0.250000000"
        # half-even at the ninth digit
        assert density_decimal_str(1, 2 * 10**9) == "0.000000000"
        assert density_decimal_str(3, 2 * 10**9) == "0.000000002"
