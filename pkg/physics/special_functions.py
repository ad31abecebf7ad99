"""The Weinberg D-function, its derivative, and the cosine integrals.

D(x) = (2x^2 - 1) g(x) with g(x) = arccosh(x) / sqrt(x^2 - 1). Near x = 1 the
closed form divides two small numbers, so both D and its derivative switch
to a Taylor series of g in y = x - 1. g solves (x^2 - 1) g' + x g = 1, which
gives the coefficients c_0 = 1, c_n = -n c_{n-1} / (2n + 1).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from models.errors import DomainError

EULER_GAMMA = 0.57721566490153286061

# Below these offsets x - 1 the series branches are used. With 24 terms the
# truncation error is below 1e-30 there, and the closed forms above them lose
# at most ~1e-14 relative.
D_SERIES_SWITCH = 1e-3
D_DERIV_SERIES_SWITCH = 2e-2
_SERIES_TERMS = 24

# Above this x, D and D' are written in 1/x so that x^2 never forms.
D_LARGE_X = 1e8

# D(x + h) - D(x) is integrated from D' when h <= D_INCREMENT_SWITCH * (x + 1);
# D' is analytic up to its branch point at x = -1, so a fixed Gauss-Legendre
# rule is exact to rounding there.
D_INCREMENT_SWITCH = 0.25
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)

# Cin switches from its power series to gamma + ln x - Ci(x) at this x.
CIN_SERIES_SWITCH = 1.0
_CIN_TERMS = 12


def _g_coefficients(n_terms: int) -> tuple[float, ...]:
    coeffs = [1.0]
    for n in range(1, n_terms):
        coeffs.append(-n * coeffs[-1] / (2 * n + 1))
    return tuple(coeffs)


_G_COEFFS = _g_coefficients(_SERIES_TERMS)


def _check_argument(x: float) -> None:
    if not math.isfinite(x):
        raise DomainError(f"D-function argument must be finite, got {x}")
    if x < 1.0:
        raise DomainError(f"D-function argument must be >= 1, got {x}")


def _g_series(y: float) -> float:
    total = 0.0
    for c in reversed(_G_COEFFS):
        total = total * y + c
    return total


def _dg_series(y: float) -> float:
    total = 0.0
    for n in range(len(_G_COEFFS) - 1, 0, -1):
        total = total * y + n * _G_COEFFS[n]
    return total


def _g_closed(y: float) -> float:
    r = math.sqrt(y * (2.0 + y))
    return math.log1p(y + r) / r


def _large_x_parts(x: float) -> tuple[float, float]:
    """(arccosh x, sqrt(1 - 1/x^2)); neither overflows for finite x."""
    inv = 1.0 / x
    return math.acosh(x), math.sqrt((1.0 - inv) * (1.0 + inv))


def _finite(value: float, x: float) -> float:
    if not math.isfinite(value):
        raise DomainError(f"D-function overflows at x={x}")
    return value


def d_weinberg(x: float) -> float:
    """D(x) = ((2x^2 - 1) / sqrt(x^2 - 1)) arccosh x, with D(1) = 1.

    Raises:
        DomainError: If ``x < 1`` or ``x`` is not finite. Also when D(x) itself
            exceeds the float range (x above about 1e305).
    """
    _check_argument(x)
    if x > D_LARGE_X:
        acosh, root = _large_x_parts(x)
        return _finite((2.0 * x - 1.0 / x) * acosh / root, x)
    y = x - 1.0
    g = _g_series(y) if y < D_SERIES_SWITCH else _g_closed(y)
    return (2.0 * x * x - 1.0) * g


def d_weinberg_deriv(x: float) -> float:
    """dD/dx. Tends to 2(1 + ln 2x) for large x; equals 11/3 at x = 1.

    Raises:
        DomainError: If ``x < 1`` or ``x`` is not finite.
    """
    _check_argument(x)
    if x > D_LARGE_X:
        # g' (x^2 - 1) = 1 - x g, with x g = acosh / root.
        acosh, root = _large_x_parts(x)
        inv_sq = 1.0 / (x * x)
        xg = acosh / root
        return _finite(4.0 * xg + (2.0 - inv_sq) / (1.0 - inv_sq) * (1.0 - xg), x)
    y = x - 1.0
    if y < D_DERIV_SERIES_SWITCH:
        g, dg = _g_series(y), _dg_series(y)
    else:
        g = _g_closed(y)
        dg = (1.0 - x * g) / (y * (2.0 + y))
    return 4.0 * x * g + (2.0 * x * x - 1.0) * dg


def d_weinberg_increment(x: float, h: float) -> float:
    """D(x + h) - D(x) for h >= 0, without cancellation when h << x.

    Returns exactly 0 for ``h = 0``.

    Raises:
        DomainError: If ``x < 1``, ``h < 0`` or either is not finite.
    """
    _check_argument(x)
    if not (math.isfinite(h) and h >= 0.0):
        raise DomainError(f"D-function increment must be finite and >= 0, got {h}")
    if h == 0.0:
        return 0.0
    if h > D_INCREMENT_SWITCH * (x + 1.0):
        return d_weinberg(x + h) - d_weinberg(x)
    half = 0.5 * h
    nodes = x + half * (1.0 + _GL_NODES)
    return half * math.fsum(
        float(w) * d_weinberg_deriv(float(u)) for w, u in zip(_GL_WEIGHTS, nodes)
    )


# ---------------------------------------------------------------------------
# Cosine integrals
# ---------------------------------------------------------------------------


def cosine_integral(x: float) -> float:
    """Ci(x) = gamma_E + ln x + int_0^x (cos u - 1)/u du for x > 0.

    Raises:
        DomainError: If ``x <= 0`` or ``x`` is not finite.
    """
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"cosine integral needs finite x > 0, got {x}")
    _, ci = special.sici(x)
    return float(ci)


def entire_cosine_integral(x: float) -> float:
    """Cin(x) = int_0^x (1 - cos u)/u du = gamma_E + ln x - Ci(x).

    Entire and non-negative; the series avoids the cancellation between
    ln x and Ci(x) at small x.
    """
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"Cin needs finite x >= 0, got {x}")
    if x < CIN_SERIES_SWITCH:
        x2 = x * x
        term = 0.5 * x2  # (-1)^{k+1} x^{2k} / (2k)!
        total = 0.0
        for k in range(1, _CIN_TERMS + 1):
            if k > 1:
                term *= -x2 / ((2 * k - 1) * (2 * k))
            total += term / (2 * k)
        return total
    return EULER_GAMMA + math.log(x) - cosine_integral(x)
