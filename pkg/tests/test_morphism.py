from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from finfiber.core import FinancialEvent, RangeError, Rate, rel_close
from finfiber.fibration import project_compound
from finfiber.morphism import (
    rate_isomorphism,
    rate_isomorphism_many,
    trivialize,
    untrivialize,
)

# Exact rational oracle, frozen: (121/110)^2 * 121 = (11/10)^2 * 121 = 146.41.
MAPPED_CAPITAL = 146.41

rates = st.floats(min_value=-0.9, max_value=1.0, exclude_min=True)
times = st.floats(min_value=-50.0, max_value=50.0)
capitals = st.floats(min_value=-1e6, max_value=1e6)


def test_rational_oracle_matches_frozen_value():
    assert float(Fraction(121, 110) ** 2 * 121) == MAPPED_CAPITAL


class TestRateIsomorphism:
    def test_standard_example(self):
        mapped = rate_isomorphism(FinancialEvent(2, 121), Rate(0.1), Rate(0.21))
        assert mapped.time == 2.0
        assert rel_close(mapped.capital, MAPPED_CAPITAL, 1e-9)

    def test_time_zero_fixed(self):
        e = FinancialEvent(0, -13.5)
        assert rate_isomorphism(e, Rate(0.9), Rate(-0.2)) == e

    def test_same_rate_is_identity(self):
        e = FinancialEvent(7.2, 99.0)
        assert rate_isomorphism(e, Rate(0.3), Rate(0.3)) == e

    def test_overflow(self):
        with pytest.raises(RangeError):
            rate_isomorphism(FinancialEvent(1e6, 1.0), Rate(0.0), Rate(1.0))

    @given(rates, rates, times, capitals)
    @settings(max_examples=300)
    def test_morphism_law(self, i, i_prime, t, c):
        # projections commute with the rate change
        e = FinancialEvent(t, c)
        a, b = Rate(i), Rate(i_prime)
        assert rel_close(
            project_compound(rate_isomorphism(e, a, b), b),
            project_compound(e, a),
            1e-9,
        )

    @given(rates, rates, times, st.floats(min_value=-1e4, max_value=1e4))
    @settings(max_examples=200)
    def test_inverse_round_trip(self, i, i_prime, t, c):
        e = FinancialEvent(t, c)
        a, b = Rate(i), Rate(i_prime)
        back = rate_isomorphism(rate_isomorphism(e, a, b), b, a)
        assert rel_close(back.capital, e.capital, 1e-9)
        assert back.time == e.time

    def test_composition_through_third_rate(self, rng):
        for _ in range(200):
            i1, i2, i3 = rng.uniform(-0.9, 1.0, 3)
            t = rng.uniform(-50, 50)
            c = rng.uniform(-1e4, 1e4)
            e = FinancialEvent(t, c)
            a, b, m = Rate(i1), Rate(i3), Rate(i2)
            direct = rate_isomorphism(e, a, b)
            stepped = rate_isomorphism(rate_isomorphism(e, a, m), m, b)
            assert rel_close(stepped.capital, direct.capital, 1e-9)

    def test_fiberwise_pull_back_push_forward(self, rng):
        # events on the fiber of (0, c0) land on the same-based fiber at
        # the new rate: g(t, c0*u^t) = (t, c0*u'^t)
        for _ in range(100):
            i, i_prime = rng.uniform(-0.9, 1.0, 2)
            c0 = rng.uniform(-1e3, 1e3)
            t = rng.uniform(-30, 30)
            a, b = Rate(i), Rate(i_prime)
            on_fiber = FinancialEvent(t, c0 * a.u**t)
            mapped = rate_isomorphism(on_fiber, a, b)
            assert rel_close(mapped.capital, c0 * b.u**t, 1e-9)

    def test_batch_matches_scalar(self, rng):
        t = rng.uniform(-40, 40, 100)
        c = rng.uniform(-1e3, 1e3, 100)
        batch = rate_isomorphism_many(t, c, Rate(0.1), Rate(0.35))
        for k in range(100):
            scalar = rate_isomorphism(FinancialEvent(t[k], c[k]), Rate(0.1), Rate(0.35))
            assert rel_close(batch[k], scalar.capital, 1e-12)


class TestTrivialization:
    def test_standard_example(self):
        t, base = trivialize(FinancialEvent(2, 121), Rate(0.1))
        assert t == 2.0
        assert rel_close(base, 100.0, 1e-9)

    def test_zero_rate_chart_is_identity(self):
        # at rate 0 the projection is the capital coordinate itself
        assert trivialize(FinancialEvent(3.5, -8.0), Rate(0.0)) == (3.5, -8.0)
        assert untrivialize(3.5, -8.0, Rate(0.0)) == FinancialEvent(3.5, -8.0)

    def test_time_zero(self):
        assert trivialize(FinancialEvent(0, 9.0), Rate(0.6)) == (0.0, 9.0)
        assert untrivialize(0.0, 9.0, Rate(0.6)) == FinancialEvent(0, 9.0)

    def test_untrivialize_example(self):
        e = untrivialize(2.0, 100.0, Rate(0.1))
        assert e.time == 2.0
        assert rel_close(e.capital, 121.0, 1e-9)

    def test_untrivialize_overflow(self):
        with pytest.raises(RangeError):
            untrivialize(1e6, 1.0, Rate(1.0))

    @given(rates, times, capitals)
    @settings(max_examples=300)
    def test_chart_round_trips(self, i, t, c):
        rate = Rate(i)
        e = FinancialEvent(t, c)
        t1, base = trivialize(e, rate)
        back = untrivialize(t1, base, rate)
        assert back.time == e.time
        assert rel_close(back.capital, e.capital, 1e-9)

        rebuilt = untrivialize(t, c, rate)
        t2, base2 = trivialize(rebuilt, rate)
        assert t2 == t
        assert rel_close(base2, c, 1e-9)
