"""Pair interaction kernel R and its companion power series.

R(u) = u log|(u + 1) / (u - 1)| - 2 weights the contribution of one
closed geodesic seen from another at normalized position u. It is -2 at
a right-angle crossing, blows up as the pair degenerates to tangency,
and decays like (2/3) u^-2 for distant pairs.

The companion series is a_hat(u) = sum_n c_n u^(2n) with
c_n = 8 (n + 1) / ((2n + 1) (2n + 3)), related to the kernel by
R((u + 1/u) / 2) = u^2 a_hat(u). Writing u = e^-T gives the collar
profile a(T) = a_hat(e^-T), which this module evaluates two ways: the
series, whose term count explodes as T -> 0, and the closed form
e^(2T) (2 cosh(T) log(coth(T/2)) - 2), which loses all digits to
cancellation as T grows. The switch point T = 0.51 keeps both branches
comfortably inside their stable ranges; they agree to a few ulps there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyp2 import UValue

# Above this the asymptotic tail of R is exact to double precision.
_R_SERIES_CUT = 1e8

# a evaluation switches from series to closed form at T = 0.51, i.e. at
# series argument u = e^-0.51.
_A_SERIES_UMAX = math.exp(-0.51)

_MAX_TERMS = 40_000_000
_BLOCK = 1 << 18

EIGHT_THIRDS = 8.0 / 3.0


@dataclass(frozen=True)
class SeriesEval:
    """Partial sum of a positive series with a certified tail bound.

    The true sum lies in [value, value + tail_bound] up to floating
    point rounding of the partial sum itself.
    """

    value: float
    tail_bound: float
    terms_used: int


def riera_R(u: UValue) -> float:
    """Kernel value at a normalized position invariant.

    Crossing pairs (u < 1) use log((1 + u) / (1 - u)) and land in
    [-2, 0) for right-ish angles; disjoint pairs (u > 1) use the log1p
    form and are positive. Far beyond _R_SERIES_CUT the two-term
    asymptotic tail (2/3) u^-2 + (2/5) u^-4 is already exact.
    """
    x = u.value
    if u.crossing:
        return x * math.log((1.0 + x) / (1.0 - x)) - 2.0
    if x >= _R_SERIES_CUT:
        inv2 = 1.0 / (x * x)
        return inv2 * (2.0 / 3.0 + 0.4 * inv2)
    return x * math.log1p(2.0 / (x - 1.0)) - 2.0


def a_hat(u: float, tol: float = 1e-14) -> SeriesEval:
    """Partial sum of sum_n 8 (n+1) / ((2n+1)(2n+3)) u^(2n).

    Sums until the tail bound 2 u^(2n) / (n (1 - u^2)) drops under tol,
    valid because c_m <= 2/m for m >= 1. Requires 0 <= u < 1; raises
    RuntimeError if the tolerance is out of reach within the term cap,
    which happens only for u so close to 1 that the sum is astronomically
    large anyway.
    """
    if not 0.0 <= u < 1.0:
        raise ValueError("series argument must satisfy 0 <= u < 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if u == 0.0:
        return SeriesEval(EIGHT_THIRDS, 0.0, 1)

    u2 = u * u
    if u2 == 0.0:
        # Below the denormal floor the n = 0 term is the whole sum.
        return SeriesEval(EIGHT_THIRDS, 0.0, 1)
    rem = 1.0 - u2
    log_u2 = math.log(u2)
    # Rough term count needed; picks the scalar or blocked path.
    est = math.log(0.25 * tol * rem) / log_u2 if tol * rem < 4.0 else 1.0

    if est <= 30_000.0:
        total = 0.0
        p = 1.0
        n = 0
        while n < _MAX_TERMS:
            total += 8.0 * (n + 1.0) * p / ((2.0 * n + 1.0) * (2.0 * n + 3.0))
            p *= u2
            n += 1
            tail = 2.0 * p / (n * rem)
            if tail <= tol:
                return SeriesEval(total, tail, n)
        raise RuntimeError("series tolerance not reached within term cap")

    total = 0.0
    n0 = 0
    while n0 < _MAX_TERMS:
        m = np.arange(n0, n0 + _BLOCK, dtype=np.float64)
        terms = 8.0 * (m + 1.0) / ((2.0 * m + 1.0) * (2.0 * m + 3.0))
        terms *= np.exp(log_u2 * m)
        total += float(terms.sum())
        n0 += _BLOCK
        tail = 2.0 * math.exp(log_u2 * n0) / (n0 * rem)
        if tail <= tol:
            return SeriesEval(total, tail, n0)
    raise RuntimeError("series tolerance not reached within term cap")


def _a_closed(T: float) -> float:
    # e^(2T) R(cosh T); cancellation-free only for small T, where
    # log(coth(T/2)) is large.
    return math.exp(2.0 * T) * (
        2.0 * math.cosh(T) * math.log(1.0 / math.tanh(0.5 * T)) - 2.0
    )


def _a_of_u(u: float, tol: float = 1e-14) -> float:
    """Collar profile at series argument u in (0, 1), branch-switched."""
    if u <= _A_SERIES_UMAX:
        ev = a_hat(u, tol)
        return ev.value + 0.5 * ev.tail_bound
    return _a_closed(-math.log(u))


def a_of_T(T: float, tol: float = 1e-14) -> float:
    """Collar profile a(T) = a_hat(e^-T), by the series alone.

    Strictly decreasing from a logarithmic blowup at T = 0 to the limit
    8/3, and pinched by 8/3 <= a(T) <= 8/3 - 2 log(1 - e^-2T). The term
    count grows like 1/T near zero; arguments under about 7e-7 exhaust
    the cap and raise.
    """
    if T <= 0.0:
        raise ValueError("T must be positive")
    ev = a_hat(math.exp(-T), tol)
    return ev.value + 0.5 * ev.tail_bound


def a_stable(T: float, tol: float = 1e-14) -> float:
    """Collar profile a(T) over the full range of T.

    Same value as a_of_T but evaluated by the closed form below the
    switch point T = 0.51, so arbitrarily small positive T stays cheap
    and accurate.
    """
    if T <= 0.0:
        raise ValueError("T must be positive")
    return _a_of_u(math.exp(-T), tol)


def a_from_collar_length(t: float, tol: float = 1e-14) -> float:
    """Collar profile of a simple closed geodesic of length t.

    The collar half-width r of such a geodesic satisfies
    e^-r = tanh(t/4), so the series argument is tanh(t/4)^2 exactly and
    no inverse hyperbolic solve is needed. Stable down to tiny t, where
    the value approaches 8/3 quadratically, and through large t via the
    closed-form branch.
    """
    if t <= 0.0:
        raise ValueError("length must be positive")
    th = math.tanh(0.25 * t)
    return _a_of_u(th * th, tol)
