import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finfiber.core import (
    CapitalizationLaw,
    FiberMismatchError,
    FinancialEvent,
    InvalidLawError,
    RangeError,
    Rate,
    make_law,
    rel_close,
    rel_scale,
)
from finfiber.fibration import (
    Fiber,
    equivalent,
    fiber_compare,
    fiber_eval,
    fiber_eval_many,
    fiber_of,
    general_gluing_check,
    project_compound,
    project_compound_many,
    project_general,
    project_natural,
)

# Exact rational oracles, frozen: 121 / (11/10)^2 = 100 and 100 * (11/10)^2 = 121.
PROJECTED_121_AT_10PCT = 100.0
GROWN_100_AT_10PCT = 121.0

rates = st.floats(min_value=-0.9, max_value=1.0, exclude_min=True)
times = st.floats(min_value=-50.0, max_value=50.0)
capitals = st.floats(min_value=-1e6, max_value=1e6)


def test_rational_oracles_match_frozen_values():
    assert float(Fraction(121) / Fraction(11, 10) ** 2) == PROJECTED_121_AT_10PCT
    assert float(Fraction(100) * Fraction(11, 10) ** 2) == GROWN_100_AT_10PCT


class TestProjectNatural:
    @pytest.mark.parametrize("t,c", [(2.0, 121.0), (0.0, 0.0), (-3.5, 7.0)])
    def test_returns_time(self, t, c):
        assert project_natural(FinancialEvent(t, c)) == t


class TestProjectCompound:
    def test_standard_example(self):
        got = project_compound(FinancialEvent(2, 121), Rate(0.1))
        assert rel_close(got, PROJECTED_121_AT_10PCT, 1e-9)

    def test_time_zero_is_identity(self):
        assert project_compound(FinancialEvent(0, 42.5), Rate(0.3)) == 42.5

    def test_zero_rate_is_second_coordinate(self):
        for t, c in [(5.0, 3.0), (-2.0, -7.0), (0.0, 0.0)]:
            assert project_compound(FinancialEvent(t, c), Rate(0.0)) == c

    def test_overflow(self):
        with pytest.raises(RangeError):
            project_compound(FinancialEvent(-1e6, 1.0), Rate(1.0))

    def test_batch_matches_scalar(self, rng):
        t = rng.uniform(-50, 50, 200)
        c = rng.uniform(-1e4, 1e4, 200)
        batch = project_compound_many(t, c, Rate(0.1))
        for k in range(200):
            scalar = project_compound(FinancialEvent(t[k], c[k]), Rate(0.1))
            assert rel_close(batch[k], scalar, 1e-12)


class TestProjectGeneral:
    def test_forward_branch(self):
        assert project_general(FinancialEvent(1, 10), make_law("simple", 1.0)) == 5.0

    def test_backward_branch(self):
        assert project_general(FinancialEvent(-1, 10), make_law("simple", 1.0)) == 20.0

    def test_time_zero(self):
        assert project_general(FinancialEvent(0, 3.25), make_law("simple", 1.0)) == 3.25

    def test_nonpositive_factor_rejected(self):
        shrinking = CapitalizationLaw(func=lambda h: 1.0 - h)
        with pytest.raises(InvalidLawError):
            project_general(FinancialEvent(2.0, 1.0), shrinking)

    def test_agrees_with_compound_on_both_signs(self):
        # the piecewise branches glue: max discrepancy <= 1e-9 on [-5, 5]
        i = Rate(0.1)
        f = make_law("compound", 0.1)
        worst = 0.0
        for t in np.linspace(-5, 5, 101):
            for c in (-250.0, 1.0, 117.3):
                e = FinancialEvent(float(t), c)
                a = project_general(e, f)
                b = project_compound(e, i)
                worst = max(worst, abs(a - b) / rel_scale(a, b))
        assert worst <= 1e-9


class TestGluing:
    def test_simple_law(self):
        assert general_gluing_check(make_law("simple", 0.1), tol=1e-6)

    def test_compound_law(self):
        assert general_gluing_check(make_law("compound", 0.1), tol=1e-6)

    def test_constant_law(self):
        flat = CapitalizationLaw(func=lambda h: 1.0)
        assert general_gluing_check(flat, tol=1e-6)

    def test_detects_derivative_mismatch(self):
        # claimed derivative disagrees with the actual branches
        lying = CapitalizationLaw(func=lambda h: 1.0 + 0.1 * h, derivative=lambda h: 99.0)
        assert not general_gluing_check(lying, tol=1e-6)


class TestEquivalence:
    def test_same_fiber(self):
        assert equivalent(FinancialEvent(0, 100), FinancialEvent(2, 121), Rate(0.1))

    def test_reflexive(self):
        e = FinancialEvent(3.7, -42.0)
        assert equivalent(e, e, Rate(0.25))

    def test_same_time_different_capital(self):
        assert not equivalent(FinancialEvent(0, 100), FinancialEvent(0, 101), Rate(0.5))

    @given(rates, times, times, st.floats(min_value=-1e4, max_value=1e4))
    @settings(max_examples=200)
    def test_events_on_one_fiber_are_equivalent(self, i, t1, t2, c0):
        rate = Rate(i)
        e1 = FinancialEvent(t1, c0 * rate.u**t1)
        e2 = FinancialEvent(t2, c0 * rate.u**t2)
        assert equivalent(e1, e2, rate)

    @given(rates, times, times, capitals, capitals)
    @settings(max_examples=200)
    def test_symmetric(self, i, t1, t2, c1, c2):
        rate = Rate(i)
        e1, e2 = FinancialEvent(t1, c1), FinancialEvent(t2, c2)
        assert equivalent(e1, e2, rate) == equivalent(e2, e1, rate)

    def test_transitive_on_same_fiber_triples(self, rng):
        # rounding noise is ~1e-15, far inside the 1e-9 tolerance, so
        # chained equivalences cannot break transitivity here
        for _ in range(200):
            i = Rate(rng.uniform(-0.9, 1.0))
            c0 = rng.uniform(-1e4, 1e4)
            e = [
                FinancialEvent(t, c0 * i.u**t) for t in rng.uniform(-30, 30, 3)
            ]
            if equivalent(e[0], e[1], i) and equivalent(e[1], e[2], i):
                assert equivalent(e[0], e[2], i)


class TestFiber:
    def test_fiber_of_example(self):
        fb = fiber_of(FinancialEvent(2, 121), Rate(0.1))
        assert rel_close(fb.base_capital, PROJECTED_121_AT_10PCT, 1e-9)

    def test_fiber_of_time_zero(self):
        assert fiber_of(FinancialEvent(0, 55.0), Rate(0.4)).base_capital == 55.0

    def test_null_fiber(self):
        assert fiber_of(FinancialEvent(5, 0.0), Rate(0.7)).base_capital == 0.0

    def test_eval_example(self):
        fb = Fiber(Rate(0.1), 100.0)
        assert rel_close(fiber_eval(fb, 2.0), GROWN_100_AT_10PCT, 1e-9)

    def test_eval_at_zero(self):
        assert fiber_eval(Fiber(Rate(0.9), -3.0), 0.0) == -3.0

    def test_zero_rate_constant(self):
        fb = Fiber(Rate(0.0), 17.0)
        for t in (-10.0, 0.0, 25.0):
            assert fiber_eval(fb, t) == 17.0

    def test_eval_overflow(self):
        with pytest.raises(RangeError):
            fiber_eval(Fiber(Rate(1.0), 1.0), 1e6)

    def test_batch_matches_scalar(self, rng):
        fb = Fiber(Rate(0.07), 250.0)
        t = rng.uniform(-40, 40, 100)
        batch = fiber_eval_many(fb, t)
        for k in range(100):
            assert rel_close(batch[k], fiber_eval(fb, t[k]), 1e-12)

    @given(rates, times, capitals)
    @settings(max_examples=300)
    def test_projection_fiber_round_trip(self, i, t, c):
        rate = Rate(i)
        e = FinancialEvent(t, c)
        back = fiber_eval(fiber_of(e, rate), e.time)
        assert rel_close(back, e.capital, 1e-9)


class TestFiberCompare:
    def test_equal_identical(self):
        fb = Fiber(Rate(0.1), 100.0)
        assert fiber_compare(fb, fb) == 0

    def test_equal_through_projection(self):
        a = fiber_of(FinancialEvent(0, 100), Rate(0.1))
        b = fiber_of(FinancialEvent(2, 121), Rate(0.1))
        assert fiber_compare(a, b) == 0

    def test_less(self):
        assert fiber_compare(Fiber(Rate(0.1), 100.0), Fiber(Rate(0.1), 200.0)) == -1
        assert fiber_compare(Fiber(Rate(0.1), 200.0), Fiber(Rate(0.1), 100.0)) == 1

    def test_rate_mismatch(self):
        with pytest.raises(FiberMismatchError):
            fiber_compare(Fiber(Rate(0.1), 1.0), Fiber(Rate(0.2), 1.0))

    def test_total_preorder_on_coarse_triples(self, rng):
        # capitals on a 1e-3 lattice: far from the tolerance knife edge,
        # where tie-based comparison would not be transitive
        i = Rate(0.05)
        for _ in range(300):
            a, b, c = (
                Fiber(i, round(float(v), 3))
                for v in rng.uniform(-10.0, 10.0, 3)
            )
            assert fiber_compare(a, a) == 0  # reflexive
            ab, bc, ac = fiber_compare(a, b), fiber_compare(b, c), fiber_compare(a, c)
            assert ab in (-1, 0, 1)  # total
            if ab <= 0 and bc <= 0:  # transitive
                assert ac <= 0
            if ab >= 0 and bc >= 0:
                assert ac >= 0
