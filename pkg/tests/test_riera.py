"""Kernel R(u), the series a_hat, and the collar profile a(T)."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpstrata.hyp2 import UValue
from wpstrata.riera import (
    SeriesEval,
    a_from_collar_length,
    a_hat,
    a_of_T,
    a_stable,
    riera_R,
)

EIGHT_THIRDS = 8.0 / 3.0


class TestKernel:
    def test_orthogonal_value(self):
        assert riera_R(UValue(0.0, crossing=True)) == -2.0

    def test_u_three(self):
        got = riera_R(UValue(3.0, crossing=False))
        assert math.isclose(got, 3.0 * math.log(2.0) - 2.0, abs_tol=1e-15)

    def test_cosh_ten_pinch(self):
        # R(cosh m) = e^{-2m} a(m) sits inside the collar profile pinch;
        # the pinch width 8.5e-18 is finer than the float evaluation, so
        # allow one rounding cushion
        got = riera_R(UValue(math.cosh(10.0), crossing=False))
        scale = math.exp(-20.0)
        lo = EIGHT_THIRDS * scale
        hi = (EIGHT_THIRDS - 2.0 * math.log1p(-scale)) * scale
        assert lo - 1e-15 <= got <= hi + 1e-15

    def test_positive_disjoint(self):
        for u in np.logspace(math.log10(1.0 + 1e-6), 6.0, 150):
            assert riera_R(UValue(float(u), crossing=False)) > 0.0

    def test_crossing_sign_change(self):
        # monotone from -2 at a right angle, through zero near u = 0.83
        vals = [riera_R(UValue(u, crossing=True)) for u in (0.0, 0.2, 0.5, 0.8)]
        assert vals == sorted(vals)
        assert all(v < 0.0 for v in vals)
        assert riera_R(UValue(0.9, crossing=True)) > 0.0

    def test_large_u_branch_seam(self):
        # the direct formula cancels to noise at the cut; the seam is
        # only continuous in absolute terms, which is all the uses need
        below = riera_R(UValue(1e8 * (1.0 - 1e-9), crossing=False))
        above = riera_R(UValue(1e8 * (1.0 + 1e-9), crossing=False))
        assert abs(below - above) < 1e-15

    def test_asymptotic_branch_oracle(self):
        mp = pytest.importorskip("mpmath")
        with mp.workdps(50):
            u = mp.mpf(10) ** 8
            exact = float(u * mp.log((u + 1) / (u - 1)) - 2)
        got = riera_R(UValue(1e8, crossing=False))
        assert math.isclose(got, exact, rel_tol=1e-12)

    def test_large_u_asymptote(self):
        u = 1e10
        assert math.isclose(
            riera_R(UValue(u, crossing=False)), 2.0 / (3.0 * u * u), rel_tol=1e-6
        )

    def test_tangent_value_rejected(self):
        with pytest.raises(ValueError):
            UValue(1.0, crossing=False)


class TestAHat:
    def test_at_zero(self):
        ev = a_hat(0.0)
        assert ev.value == EIGHT_THIRDS
        assert ev.tail_bound == 0.0
        assert ev.terms_used == 1

    def test_first_coefficient(self):
        # a_hat(u) - 8/3 = (16/15) u^2 + O(u^4)
        u = 1e-3
        lead = (a_hat(u).value - EIGHT_THIRDS) / (u * u)
        assert math.isclose(lead, 16.0 / 15.0, rel_tol=1e-5)

    def test_kernel_identity_at_half(self):
        # a_hat(u) = u^{-2} R((u + 1/u)/2)
        target = riera_R(UValue(1.25, crossing=False)) / 0.25
        ev = a_hat(0.5)
        assert abs(ev.value - target) <= 1e-12

    @pytest.mark.parametrize("u", [0.1, 0.3, 0.5, 0.8, 0.95])
    def test_kernel_identity_bracket(self, u):
        ev = a_hat(u)
        target = riera_R(UValue(0.5 * (u + 1.0 / u), crossing=False)) / (u * u)
        assert ev.value - 1e-12 <= target <= ev.value + ev.tail_bound + 1e-12

    def test_domain_rejection(self):
        with pytest.raises(ValueError):
            a_hat(1.0)
        with pytest.raises(ValueError):
            a_hat(-0.1)

    def test_tiny_argument_underflow(self):
        ev = a_hat(1e-200)
        assert ev.value == EIGHT_THIRDS
        assert ev.tail_bound == 0.0

    @given(u=st.floats(min_value=0.0, max_value=0.98))
    @settings(deadline=None)
    def test_tail_bound_is_sound(self, u):
        coarse = a_hat(u, tol=1e-6)
        fine = a_hat(u, tol=1e-14)
        # truth lies above every partial sum and under value + tail
        assert coarse.value <= fine.value + 1e-15
        assert fine.value <= coarse.value + coarse.tail_bound + 1e-15

    @given(u=st.floats(min_value=0.0, max_value=0.98))
    @settings(deadline=None)
    def test_returns_series_eval(self, u):
        ev = a_hat(u)
        assert isinstance(ev, SeriesEval)
        assert ev.tail_bound >= 0.0
        assert ev.terms_used >= 1
        assert ev.value >= EIGHT_THIRDS - 1e-15


class TestCollarProfile:
    def test_pinch_and_monotone(self):
        prev = math.inf
        for T in np.logspace(-6.0, math.log10(50.0), 60):
            v = a_of_T(float(T))
            hi = EIGHT_THIRDS - 2.0 * math.log1p(-math.exp(-2.0 * float(T)))
            assert EIGHT_THIRDS <= v <= hi + 1e-12
            assert v <= prev
            prev = v

    def test_limit_value(self):
        assert math.isclose(a_of_T(40.0), EIGHT_THIRDS, rel_tol=1e-15)

    def test_explicit_ordering(self):
        assert a_of_T(1.0) > a_of_T(2.0) > a_of_T(3.0) > EIGHT_THIRDS

    def test_stable_matches_series_across_switch(self):
        # closed form below the switch, series above; both must agree
        for T in (0.3, 0.45, 0.5, 0.51, 0.52, 0.7, 1.0):
            assert math.isclose(a_stable(T), a_of_T(T), rel_tol=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            a_of_T(0.0)
        with pytest.raises(ValueError):
            a_of_T(-1.0)


class TestCollarLengthForm:
    def test_identity_with_profile(self):
        t = 1.0
        T = 2.0 * math.asinh(1.0 / math.sinh(0.5 * t))
        assert a_from_collar_length(t) == a_of_T(T)

    def test_short_curve_limit(self):
        assert abs(a_from_collar_length(1e-8) - EIGHT_THIRDS) < 1e-10

    def test_long_curve_growth(self):
        # collar shrinks, so the profile value grows along the bound
        v = a_from_collar_length(30.0)
        T = 2.0 * math.asinh(1.0 / math.sinh(15.0))
        hi = EIGHT_THIRDS - 2.0 * math.log1p(-math.exp(-2.0 * T))
        assert EIGHT_THIRDS < v <= hi + 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            a_from_collar_length(0.0)
