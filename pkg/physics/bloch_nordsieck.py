"""Bloch-Nordsieck decoherence: angular density xi, its integral X, the
decay exponents nu, and the finite-time radiated factor.

Geometry: the + branch velocity is +z, the - branch lies in the x-z plane at
the opening angle delta, both with speed v. A direction khat has
z+ = khat.z and z- = z cos(delta) + sin(theta) sin(delta) cos(azimuth).
"""

from __future__ import annotations

import math
from typing import Optional

from models.errors import DomainError
from models.specs import BranchVelocities, FiniteTimeSpec, QuadratureSpec
from numerics.quadrature import QuadratureResult, UnitDirection, integrate_sphere
from physics.special_functions import entire_cosine_integral

# Below this speed X0 is summed from its power series in v^2.
X0_SERIES_SWITCH = 0.1
_X0_SERIES_TERMS = 16

# a0 Lambda t below this is treated as a0 = 0 in the finite-time brace.
A0_NEGLIGIBLE = 1e-12


def _coupling(newton_g: float, mass: float) -> float:
    if not (math.isfinite(newton_g) and newton_g > 0.0):
        raise DomainError(f"G must be finite and > 0, got {newton_g}")
    if not (math.isfinite(mass) and mass >= 0.0):
        raise DomainError(f"mass must be finite and >= 0, got {mass}")
    return newton_g * mass * mass


def _cosines(branches: BranchVelocities, khat: UnitDirection) -> tuple[float, float]:
    z_plus = khat.z
    delta = branches.opening_angle
    z_minus = z_plus * math.cos(delta) + khat.sin_theta * math.sin(delta) * math.cos(khat.azimuth)
    return z_plus, min(1.0, max(-1.0, z_minus))


def xi_density(
    branches: BranchVelocities, newton_g: float, mass: float, khat: UnitDirection
) -> float:
    """xi(khat) = (G m^2 gamma^2 / pi^2) v^4 N / ((1 - v z+)(1 - v z-)).

    N = (cos delta - z+ z-)^2 - (1 - z+^2)(1 - z-^2) / 2 is the polarization
    sum of the two transverse velocity projections.
    """
    gm2 = _coupling(newton_g, mass)
    v = branches.speed
    z_plus, z_minus = _cosines(branches, khat)
    c = math.cos(branches.opening_angle) - z_plus * z_minus
    numerator = c * c - 0.5 * (1.0 - z_plus) * (1.0 + z_plus) * (1.0 - z_minus) * (1.0 + z_minus)
    gamma_sq = branches.gamma**2
    return (
        gm2 * gamma_sq / math.pi**2 * v**4 * numerator / ((1.0 - v * z_plus) * (1.0 - v * z_minus))
    )


def x_coefficient(
    branches: BranchVelocities, newton_g: float, mass: float, quad: QuadratureSpec
) -> QuadratureResult:
    """X = integral of xi over the solid angle.

    Raises:
        QuadratureError: If the spherical rule does not converge.
    """
    _coupling(newton_g, mass)
    return integrate_sphere(
        lambda k: xi_density(branches, newton_g, mass, k),
        quad,
        azimuth_symmetric=branches.opening_angle == 0.0,
    )


def _x0_bracket(v: float) -> float:
    """2v - (4/3)v^3 - (1 - v^2) ln((1+v)/(1-v)) = 4 sum_{k>=2} v^{2k+1}/(4k^2-1)."""
    if v < X0_SERIES_SWITCH:
        v2 = v * v
        term = v**5
        total = 0.0
        for k in range(2, 2 + _X0_SERIES_TERMS):
            total += term / (4 * k * k - 1)
            term *= v2
        return 4.0 * total
    return 2.0 * v - (4.0 / 3.0) * v**3 - (1.0 - v * v) * 2.0 * math.atanh(v)


def x0_closed_form(
    v: float,
    gamma: Optional[float] = None,
    newton_g: float = 1.0,
    mass: float = 1.0,
) -> float:
    """X at zero opening angle.

    X0 = (4 G m^2 gamma^2 / (pi v)) [2v - (4/3)v^3 - (1-v^2) ln((1+v)/(1-v))].
    Tends to 8 G m^2 gamma^2 / (3 pi) as v -> 1 and to
    (16/15)(G m^2 gamma^2 / pi) v^4 (1 + 3 v^2 / 7) as v -> 0.

    Args:
        v: Speed, ``0 < v < 1``.
        gamma: Lorentz factor; derived from ``v`` when omitted, checked
            against it otherwise.
        newton_g: G.
        mass: m.

    Raises:
        DomainError: If ``v`` is outside (0, 1) or ``gamma`` disagrees with it.
    """
    if not (math.isfinite(v) and 0.0 < v < 1.0):
        raise DomainError(f"v must lie in (0, 1), got {v}")
    gamma_sq = 1.0 / ((1.0 - v) * (1.0 + v))
    if gamma is not None and not math.isclose(gamma * gamma, gamma_sq, rel_tol=1e-9):
        raise DomainError(f"gamma={gamma} inconsistent with v={v}")
    gm2 = _coupling(newton_g, mass)
    return 4.0 * gm2 * gamma_sq / (math.pi * v) * _x0_bracket(v)


# ---------------------------------------------------------------------------
# Decay exponents
# ---------------------------------------------------------------------------


def _relativistic_log_bracket(delta: float, gamma: float) -> float:
    if not (math.isfinite(delta) and delta > 0.0):
        raise DomainError(f"delta must be finite and > 0, got {delta}")
    if not (math.isfinite(gamma) and gamma > 1.0):
        raise DomainError(f"gamma must be finite and > 1, got {gamma}")
    return 7.0 / 3.0 - math.log(0.25 * (delta * delta + 1.0 / (gamma * gamma)))


def x_delta_relativistic(gm2gamma2: float, delta: float, gamma: float) -> float:
    """X at small opening angle for v -> 1.

    (G m^2 gamma^2 / pi) [8/3 - delta^2 (7/3 - ln((delta^2 + 1/gamma^2) / 4))].
    """
    bracket = _relativistic_log_bracket(delta, gamma)
    return gm2gamma2 / math.pi * (8.0 / 3.0 - delta * delta * bracket)


def nu_relativistic(gm2gamma2: float, delta: float, gamma: float) -> float:
    """nu = (G m^2 gamma^2 / pi) delta^2 (7/3 - ln((delta^2 + 1/gamma^2) / 4)).

    Raises:
        DomainError: If ``delta <= 0``, ``gamma <= 1`` or the bracket is not
            positive (outside the small-delta relativistic regime).
    """
    bracket = _relativistic_log_bracket(delta, gamma)
    if bracket <= 0.0:
        raise DomainError(
            f"relativistic exponent bracket {bracket} <= 0 at delta={delta}, gamma={gamma}"
        )
    return gm2gamma2 / math.pi * delta * delta * bracket


def _check_slow_speed(v: float) -> None:
    if not (math.isfinite(v) and v > 0.0):
        raise DomainError(f"v must be finite and > 0, got {v}")


def x_delta_nonrelativistic(gm2: float, v: float, delta: float) -> float:
    """Leading small-v X in the printed form (G m^2 / pi) v^4 (2/15)(8 - 7 sin^2 delta)."""
    _check_slow_speed(v)
    return gm2 / math.pi * v**4 * (2.0 / 15.0) * (8.0 - 7.0 * math.sin(delta) ** 2)


def nu_nonrelativistic(gm2: float, v: float, delta: float) -> float:
    """nu = (G m^2 / pi) v^4 (14/15) sin^2 delta.

    Raises:
        DomainError: If ``v <= 0``.
    """
    _check_slow_speed(v)
    return gm2 / math.pi * v**4 * (14.0 / 15.0) * math.sin(delta) ** 2


def nu_from_quadrature(
    branches: BranchVelocities, newton_g: float, mass: float, quad: QuadratureSpec
) -> QuadratureResult:
    """nu = X0(v) - X(delta) with X(delta) from spherical quadrature of xi."""
    x_delta = x_coefficient(branches, newton_g, mass, quad)
    x0 = x0_closed_form(branches.speed, None, newton_g, mass)
    return QuadratureResult(x0 - x_delta.value, x_delta.error_estimate)


def interference_ratio(t1: float, t2: float, nu: float) -> float:
    """I(t1) / I(t2) = (t1 / t2)^(-nu).

    Evaluated in logs so that t1 / t2 may lie outside the float range.

    Raises:
        DomainError: If either time is not finite and positive, or the ratio
            overflows.
    """
    for name, value in (("t1", t1), ("t2", t2)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be finite and > 0, got {value}")
    if not math.isfinite(nu):
        raise DomainError(f"nu must be finite, got {nu}")
    try:
        return math.exp(-nu * (math.log(t1) - math.log(t2)))
    except OverflowError:
        raise DomainError(f"interference ratio overflows at t1={t1}, t2={t2}, nu={nu}") from None


# ---------------------------------------------------------------------------
# Finite-time radiated factor
# ---------------------------------------------------------------------------


def _cin_window(a: float, spec: FiniteTimeSpec) -> float:
    """Cin(a Lambda t) - Cin(a lambda t) = ln(Lambda/lambda) - [Ci(a Lambda t) - Ci(a lambda t)]."""
    return entire_cosine_integral(a * spec.uv_cutoff * spec.time) - entire_cosine_integral(
        a * spec.ir_cutoff * spec.time
    )


def finite_time_brace(a_plus: float, a_minus: float, spec: FiniteTimeSpec) -> float:
    """ln(L/l) - dCi(a+) - dCi(a-) + dCi(a0) written with Cin, a0 = |a+ - a-|."""
    a0 = abs(a_plus - a_minus)
    brace = _cin_window(a_plus, spec) + _cin_window(a_minus, spec)
    if a0 * spec.uv_cutoff * spec.time >= A0_NEGLIGIBLE:
        brace -= _cin_window(a0, spec)
    return brace


def _a0_breakpoint(delta: float):
    """Interior z where a0 vanishes on the azimuth circle, if any."""
    tan_half = math.tan(0.5 * delta)

    def points(azimuth: float) -> list[float]:
        return [math.cos(math.atan2(tan_half, math.cos(azimuth)))]

    return points


def finite_time_real_factor(
    branches: BranchVelocities,
    newton_g: float,
    mass: float,
    spec: FiniteTimeSpec,
    quad: QuadratureSpec,
) -> QuadratureResult:
    """Real radiated factor accumulated up to time ``spec.time``.

    The frequency integral over [lambda, Lambda] of the oscillating emission
    kernel is done in closed form with cosine integrals; the solid angle is
    integrated numerically. For lambda t << 1 << Lambda t the result grows
    like X ln(omega_R t).

    Raises:
        QuadratureError: If the spherical rule does not converge.
    """
    v = branches.speed
    delta = branches.opening_angle

    def integrand(k: UnitDirection) -> float:
        xi = xi_density(branches, newton_g, mass, k)
        if xi == 0.0:
            return 0.0
        z_plus, z_minus = _cosines(branches, k)
        return xi * finite_time_brace(1.0 - v * z_plus, 1.0 - v * z_minus, spec)

    if delta == 0.0:
        return integrate_sphere(integrand, quad, azimuth_symmetric=True)
    return integrate_sphere(integrand, quad, z_breakpoints=_a0_breakpoint(delta))


def finite_time_log_slope(
    branches: BranchVelocities,
    newton_g: float,
    mass: float,
    spec: FiniteTimeSpec,
    quad: QuadratureSpec,
) -> float:
    """[F(2t) - F(t)] / ln 2: the coefficient of ln(omega_R t) at time t."""
    first = finite_time_real_factor(branches, newton_g, mass, spec, quad)
    second = finite_time_real_factor(branches, newton_g, mass, spec.at_time(2.0 * spec.time), quad)
    return (second.value - first.value) / math.log(2.0)
