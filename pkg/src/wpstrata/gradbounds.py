"""Collar decay envelopes for squared length gradients.

The squared gradient of a geodesic length function ell on a hyperbolic
surface satisfies 2 ell / pi <= |grad ell|^2 <= (2 ell / pi)(1 + F)
where F is an interaction envelope built from the collar profile of
riera and two elementary decay factors. Everything here is scalar and
deterministic; the certified integrals in wpstrata.integrals consume
these envelopes pointwise.

Three collar radius regimes appear. A simple closed geodesic of length
ell has an embedded collar of half-width arcsinh(1 / sinh(ell / 2)); a
separating curve doubles the half-length version; and a systole of
length t gets the better of t / 4 and the simple radius, the two
crossing at the unique length L0 with sinh(L0/4) sinh(L0/2) = 1.
"""

from __future__ import annotations

import math

from .hyp2 import collar_area
from .riera import _a_of_u

# Thin part length threshold for the strata distance integrals.
# Calibrated so that the paired integral H(0, 4 e) + H(0, 2 e) evaluates
# to 7.611385 (see integrals.calibrate_eps2). Sits 2.62e-6 above the
# collar identity value EPS2_IDENTITY = arcsinh(1), the self-dual point
# of the simple collar radius.
EPS2 = 0.8813761988109772
EPS2_IDENTITY = math.asinh(1.0)


def _csch(x: float) -> float:
    # 1/sinh, safe against overflow of sinh for large x.
    if x > 350.0:
        e = math.exp(-x)
        return 2.0 * e / (1.0 - e * e)
    return 1.0 / math.sinh(x)


def collar_radius_simple(ell: float) -> float:
    """Embedded collar half-width arcsinh(1 / sinh(ell / 2)).

    Self-dual in the sense collar_radius_simple(2 *
    collar_radius_simple(ell)) == ell / 2; the fixed point of that
    pairing is ell = 2 arcsinh(1).
    """
    if ell <= 0.0:
        raise ValueError("length must be positive")
    return math.asinh(_csch(0.5 * ell))


def collar_radius_separating(ell: float) -> float:
    """Collar half-width 2 arcsinh(1 / sinh(ell / 4)) of a separating
    curve, never below the simple one."""
    if ell <= 0.0:
        raise ValueError("length must be positive")
    return 2.0 * math.asinh(_csch(0.25 * ell))


def u_factor(ell: float) -> float:
    """Decay factor (2 cosh(ell/2) + 1) / (3 (cosh(ell/2) + 1)^2).

    Equals 1/4 at ell = 0, strictly decreasing, below (4/3) e^(-ell/2).
    """
    if ell < 0.0:
        raise ValueError("length must be nonnegative")
    if ell > 700.0:
        # (c + 1)^2 would overflow; relative error ~ 3 e^-(ell/2) here,
        # beneath double precision.
        return (4.0 / 3.0) * math.exp(-0.5 * ell)
    c = math.cosh(0.5 * ell)
    return (2.0 * c + 1.0) / (3.0 * (c + 1.0) ** 2)


def v_factor(ell: float) -> float:
    """Decay factor 1 / (arctan(csch(ell/2)) cosh^2(ell/2) + sinh(ell/2)).

    Tends to 2/pi as ell -> 0, strictly decreasing, below e^(-ell/2).
    """
    if ell < 0.0:
        raise ValueError("length must be nonnegative")
    if ell == 0.0:
        return 2.0 / math.pi
    if ell > 700.0:
        return math.exp(-0.5 * ell)
    s = math.sinh(0.5 * ell)
    c = math.cosh(0.5 * ell)
    return 1.0 / (math.atan(1.0 / s) * c * c + s)


def G_of(r: float, s: float) -> float:
    """Interaction envelope in collar radius form.

    a(r + s) (e^-r + e^-3r / 3) / A(s) with A the collar area profile.
    Strictly decreasing in each argument; saturating areas and
    underflowing exponentials make far tails exact zeros.
    """
    if r <= 0.0 or s <= 0.0:
        raise ValueError("collar radii must be positive")
    av = _a_of_u(math.exp(-(r + s)))
    num = math.exp(-r) + math.exp(-3.0 * r) / 3.0
    return av * num / collar_area(s)


def F_pair(l_alpha: float, l_beta: float) -> float:
    """Interaction envelope for an ordered length pair l_alpha <= l_beta.

    Equals a(r_a + r_b) u_factor(l_alpha) v_factor(l_beta)
    sinh(l_alpha/2) sinh^2(l_beta/2) with r the simple collar radii,
    and agrees with G_of(r_a, r_b) to working precision. The combined
    radius enters through e^-(r_a + r_b) = tanh(l_alpha/4)
    tanh(l_beta/4), which avoids the inverse solve entirely.
    """
    if l_alpha <= 0.0 or l_beta <= 0.0:
        raise ValueError("lengths must be positive")
    if l_alpha > l_beta:
        raise ValueError("requires l_alpha <= l_beta")
    av = _a_of_u(math.tanh(0.25 * l_alpha) * math.tanh(0.25 * l_beta))
    sa = math.sinh(0.5 * l_alpha)
    sb = math.sinh(0.5 * l_beta)
    return av * u_factor(l_alpha) * v_factor(l_beta) * sa * sb * sb


def grad_sq_upper_single(ell: float) -> float:
    """Upper bound (2 ell / pi)(1 + F_pair(ell, ell)) for the squared
    gradient of a simple nonseparating length."""
    if ell <= 0.0:
        raise ValueError("length must be positive")
    return (2.0 * ell / math.pi) * (1.0 + F_pair(ell, ell))


def grad_sq_upper_separating(ell: float) -> float:
    """Upper bound for a separating curve, via the half-length envelope.

    Never above grad_sq_upper_single at the same length.
    """
    if ell <= 0.0:
        raise ValueError("length must be positive")
    return (2.0 * ell / math.pi) * (1.0 + F_pair(0.5 * ell, 0.5 * ell))


def solve_L0(tol: float = 1e-13) -> float:
    """Length where the systole collar regimes meet.

    Unique root of sinh(t/4) sinh(t/2) = 1, located by bisection on
    [1, 4]. The product is strictly increasing, so the bracket is safe.
    """
    lo, hi = 1.0, 4.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if math.sinh(0.25 * mid) * math.sinh(0.5 * mid) >= 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


L0 = solve_L0()


def r_sys(t: float) -> float:
    """Collar radius available at systole t.

    max(t / 4, collar_radius_simple(t)): the simple branch wins below
    L0, the linear branch above, and the function has its one local
    minimum at the crossing.
    """
    if t <= 0.0:
        raise ValueError("length must be positive")
    return max(0.25 * t, collar_radius_simple(t))


def grad_sq_upper_systole(ell: float) -> float:
    """Upper bound (2 ell / pi)(1 + G_of(r, r)) with r = r_sys(ell).

    Valid when ell is the systole. The envelope term peaks at L0 and
    dies off in both directions, so the bound approaches the universal
    lower bound 2 ell / pi at both ends.
    """
    if ell <= 0.0:
        raise ValueError("length must be positive")
    r = r_sys(ell)
    return (2.0 * ell / math.pi) * (1.0 + G_of(r, r))
