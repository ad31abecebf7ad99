"""Emission log coefficient and interference-suppression coefficient C.

All massive results share the prefactor kappa^2 m^2 / (2 pi^2) (tag
``CONVENTION_MASSIVE``); the massless ones use kappa^2 / pi^2, its m -> 0
limit once m^2 times the D-bracket is traded for twice the logarithmic core
(tag ``CONVENTION_MASSLESS``). With these, the solid-angle integral of the
branch-difference density reproduces every closed form below, and the
small-angle forms are the leading terms of the exact ones.
"""

from __future__ import annotations

import math
from typing import Optional

from models.errors import DomainError
from models.results import CONVENTION_MASSIVE, CONVENTION_MASSLESS, CoefficientResult
from models.specs import EmissionSpec
from physics.kinematics import ElasticKinematics, SuperpositionPair
from physics.special_functions import d_weinberg, d_weinberg_deriv, d_weinberg_increment

TWO_PI_SQ = 2.0 * math.pi**2


def d_bracket(x_same: float, x_near: float, x_far: float) -> float:
    """1 + D(x_same) - D(x_near) - D(x_far), grouped to cancel exactly.

    ``x_near`` tends to 1 and ``x_far`` to ``x_same`` in the forward (or
    coincident-branch) limit, where the result is then exactly zero.
    """
    return (1.0 - d_weinberg(x_near)) + (d_weinberg(x_same) - d_weinberg(x_far))


def offset_bracket(x_far: float, offset: float) -> float:
    """d_bracket for x_near = 1 + offset and x_same = x_far + offset.

    Both D differences are taken as increments, so the bracket keeps full
    relative accuracy when ``offset`` is far below ``x_far`` (small angles at
    large Q/m) and is exactly zero at ``offset = 0``.
    """
    return d_weinberg_increment(x_far, offset) - d_weinberg_increment(1.0, offset)


def _require_massive(mass: float) -> None:
    if mass <= 0.0:
        raise DomainError("massive coefficient needs m > 0; use the massless operations")


def emission_log_coefficient(kin: ElasticKinematics, spec: EmissionSpec) -> CoefficientResult:
    """Coefficient of single soft-graviton emission in a massive elastic event.

    Args:
        kin: Elastic kinematics with ``m > 0``.
        spec: Frequency window and couplings.

    Returns:
        bracket 1 + D(p.p'/m^2) - D(p.q/m^2) - D(p'.q/m^2) times ln(Lambda/lambda)
        times |M0|^2 kappa^2 m^2 / (2 pi^2).

    Raises:
        DomainError: If ``m = 0``.
    """
    _require_massive(kin.mass)
    # p'.q = p.q' for equal masses.
    bracket = offset_bracket(*kin.bracket_arguments())
    prefactor = spec.m0_squared * spec.kappa**2 * kin.mass**2 / TWO_PI_SQ
    return CoefficientResult.from_parts(bracket, spec.log_factor, prefactor, CONVENTION_MASSIVE)


def interference_coefficient(
    pair: SuperpositionPair, spec: EmissionSpec, m1m2_re: float = 1.0
) -> CoefficientResult:
    """Interference-suppression coefficient C of two superposed final states.

    C = -kappa^2 m^2 Re(M1 M2*) [1 + D(q1.q1'/m^2) - D(q1.q2/m^2)
    - D(q1.q2'/m^2)] ln(Lambda/lambda) / (2 pi^2); zero exactly when the
    branches coincide.

    Raises:
        DomainError: If ``m = 0``.
    """
    _require_massive(pair.mass)
    bracket = offset_bracket(*pair.bracket_arguments())
    prefactor = -(spec.kappa**2) * pair.mass**2 * m1m2_re / TWO_PI_SQ
    return CoefficientResult.from_parts(bracket, spec.log_factor, prefactor, CONVENTION_MASSIVE)


def interference_coefficient_small_angle(
    kin: ElasticKinematics, phi: float, spec: EmissionSpec, m1m2_re: float = 1.0
) -> CoefficientResult:
    """Leading small-``phi`` form of :func:`interference_coefficient`.

    The bracket becomes (2 Q^2 sin^2(phi/2) / m^2) [D'(p.p'/m^2) - D'(1)];
    the relative deviation from the exact bracket is O(phi^2).

    Raises:
        DomainError: If ``m = 0`` or ``phi`` is not finite.
    """
    _require_massive(kin.mass)
    if not math.isfinite(phi):
        raise DomainError(f"phi must be finite, got {phi}")
    x_pp = kin.invariant_ratios()[0]
    eps = 2.0 * kin.cm_momentum**2 * math.sin(0.5 * phi) ** 2 / kin.mass**2
    bracket = eps * (d_weinberg_deriv(x_pp) - d_weinberg_deriv(1.0))
    prefactor = -(spec.kappa**2) * kin.mass**2 * m1m2_re / TWO_PI_SQ
    return CoefficientResult.from_parts(bracket, spec.log_factor, prefactor, CONVENTION_MASSIVE)


def massless_core(q11: float, q12: float, q12_prime: float, s: float) -> float:
    """q1.q1' ln(2 q1.q1'/s) - q1.q2 ln(2 q1.q2/s) - q1.q2' ln(2 q1.q2'/s)."""
    for name, value in (("q1.q1'", q11), ("q1.q2", q12), ("q1.q2'", q12_prime), ("s", s)):
        if not value > 0.0:
            raise DomainError(f"{name} must be > 0 for a massless superposition, got {value}")
    return (
        q11 * math.log(2.0 * q11 / s)
        - q12 * math.log(2.0 * q12 / s)
        - q12_prime * math.log(2.0 * q12_prime / s)
    )


def interference_coefficient_massless(
    pair_massless: SuperpositionPair,
    s: Optional[float],
    spec: EmissionSpec,
    m1m2_re: float = 1.0,
) -> CoefficientResult:
    """C for massless emitters.

    The term proportional to q1.(q1' - q2 - q2') = -m^2 vanishes identically
    at m = 0 and is left out rather than evaluated as 0 * ln(s/m^2).

    Args:
        pair_massless: Superposition built with ``m = 0``.
        s: CM energy squared; ``None`` takes the pair's own ``s``.
        spec: Frequency window and couplings.
        m1m2_re: Re(M1 M2*).

    Raises:
        DomainError: If the pair is massive, or any invariant is <= 0
            (coincident massless branches).
    """
    if pair_massless.mass != 0.0:
        raise DomainError("massless coefficient needs a pair built with m = 0")
    s_value = pair_massless.base.s if s is None else s
    core = massless_core(*pair_massless.invariants(), s_value)
    prefactor = -(spec.kappa**2) * m1m2_re / math.pi**2
    return CoefficientResult.from_parts(core, spec.log_factor, prefactor, CONVENTION_MASSLESS)


def massless_small_angle_core(Q: float, phi: float) -> float:
    """2 Q^2 sin^2(phi/2) [2 ln sin(phi/2) - 1]."""
    half_sin = math.sin(0.5 * phi)
    return 2.0 * Q * Q * half_sin * half_sin * (2.0 * math.log(half_sin) - 1.0)


def interference_coefficient_massless_small_angle(
    Q: float, phi: float, spec: EmissionSpec, m1m2_re: float = 1.0
) -> CoefficientResult:
    """Leading small-``phi`` form of :func:`interference_coefficient_massless`.

    Positive prefactor: the core 2 Q^2 sin^2(phi/2)[2 ln sin(phi/2) - 1] is
    minus the leading term of the exact massless core.

    Raises:
        DomainError: Unless ``Q > 0`` and ``0 < phi < pi/2``.
    """
    if not (math.isfinite(Q) and Q > 0.0):
        raise DomainError(f"Q must be finite and > 0, got {Q}")
    if not (math.isfinite(phi) and 0.0 < phi < 0.5 * math.pi):
        raise DomainError(f"phi must lie in (0, pi/2), got {phi}")
    core = massless_small_angle_core(Q, phi)
    prefactor = spec.kappa**2 * m1m2_re / math.pi**2
    return CoefficientResult.from_parts(core, spec.log_factor, prefactor, CONVENTION_MASSLESS)
