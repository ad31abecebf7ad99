"""Angular densities of soft-graviton emission.

Every density here has the emitted frequency scaled out (it is omega^2 times
the polarization-summed squared soft factor), so the frequency integral over
[lambda, Lambda] is the exact ln(Lambda / lambda) and only the solid angle is
integrated numerically.

A leg is a (four-vector, sign) pair: +1 for outgoing momenta of a branch,
-1 for the momenta it is subtracted against.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from models.errors import DomainError
from numerics.quadrature import UnitDirection
from physics.kinematics import ElasticKinematics, FourVector, SuperpositionPair, minkowski_dot

Leg = tuple[FourVector, int]

# Retained (2 pi)^{-3/2} of each soft factor, squared.
SOFT_FACTOR_NORM = (2.0 * math.pi) ** -3

# Denominators E - P.k below this fraction of E are treated as collinear.
COLLINEAR_GUARD = 1e-14


def polarization_contraction(
    a: Sequence[float], b: Sequence[float], khat: UnitDirection
) -> float:
    """Polarization sum of (a.f.a)(b.f.b) over the two graviton helicities.

    Equals 1/2 [2 (a.u.b)^2 - (a.u.a)(b.u.b)] with u = 1 - k k the transverse
    projector; components of ``a`` or ``b`` along ``khat`` drop out.
    """
    kx, ky, kz = khat.vector
    ak = a[0] * kx + a[1] * ky + a[2] * kz
    bk = b[0] * kx + b[1] * ky + b[2] * kz
    aub = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - ak * bk
    aua = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - ak * ak
    bub = b[0] * b[0] + b[1] * b[1] + b[2] * b[2] - bk * bk
    return 0.5 * (2.0 * aub * aub - aua * bub)


def _denominator(v: FourVector, k: tuple[float, float, float]) -> float:
    """V.k / omega = E - P.khat, guarded against collinear massless legs."""
    a = v.t - (v.x * k[0] + v.y * k[1] + v.z * k[2])
    if a < COLLINEAR_GUARD * v.t:
        raise DomainError(f"emission direction collinear with leg {v}")
    return a


def pairwise_density(
    legs_a: Sequence[Leg], legs_b: Sequence[Leg], mass: float, khat: UnitDirection
) -> float:
    """Sum over V in a, W in b of s_V s_W (2(V.W)^2 - m^4) / (2 (V.k)(W.k)).

    With ``legs_a is legs_b`` this is the full squared soft factor: diagonal
    terms give m^4 / (2 (V.k)^2) and each unordered cross pair appears twice.
    """
    k = khat.vector
    m4 = mass**4
    den_a = [_denominator(v, k) for v, _ in legs_a]
    den_b = den_a if legs_b is legs_a else [_denominator(w, k) for w, _ in legs_b]
    total = 0.0
    for (v, sign_v), da in zip(legs_a, den_a):
        for (w, sign_w), db in zip(legs_b, den_b):
            vw = minkowski_dot(v, w)
            total += sign_v * sign_w * (2.0 * vw * vw - m4) / (da * db)
    return 0.5 * total


def transverse_traceless_norm(legs: Sequence[Leg], khat: UnitDirection) -> float:
    """Polarization-summed square of the spatial soft tensor.

    T_ij = sum s_V P_i P_j / (E_V - P_V.khat) is projected on the explicit
    transverse basis (e1, e2) of ``khat``; the result
    1/2 [(T11 - T22)^2 + 4 T12^2] is non-negative and stays finite as a
    massless leg approaches ``khat``. For conserved leg sets it equals
    :func:`pairwise_density`.
    """
    k = khat.vector
    sin_t = khat.sin_theta
    cos_t = khat.z
    cos_a, sin_a = math.cos(khat.azimuth), math.sin(khat.azimuth)
    e1 = (cos_t * cos_a, cos_t * sin_a, -sin_t)
    e2 = (-sin_a, cos_a, 0.0)

    t11 = t22 = t12 = 0.0
    for v, sign in legs:
        den = _denominator(v, k)
        p1 = v.x * e1[0] + v.y * e1[1] + v.z * e1[2]
        p2 = v.x * e2[0] + v.y * e2[1]
        w = sign / den
        t11 += w * p1 * p1
        t22 += w * p2 * p2
        t12 += w * p1 * p2
    diff = t11 - t22
    return 0.5 * (diff * diff + 4.0 * t12 * t12)


def eikonal_bracket_density(kin: ElasticKinematics, khat: UnitDirection) -> float:
    """omega^2 times the polarization-summed eikonal bracket of one emission.

    Integrates over the sphere to 8 pi m^2 [1 + D(p.p'/m^2) - D(p.q/m^2)
    - D(p.q'/m^2)].

    Raises:
        DomainError: If ``khat`` is collinear with a massless leg.
    """
    legs = kin.legs
    return pairwise_density(legs, legs, kin.mass, khat)


def branch_difference_density(pair: SuperpositionPair, khat: UnitDirection) -> float:
    """omega^2 Sum_pol [beta1 - beta2]^2 with the (2 pi)^{-3/2} factors kept.

    The incoming legs are common to both branches and cancel, so only the
    four outgoing momenta enter. Integrates over the sphere to
    (2 pi)^{-3} 8 pi m^2 [1 + D(q1.q1'/m^2) - D(q1.q2/m^2) - D(q1.q2'/m^2)].

    Raises:
        DomainError: If ``khat`` is collinear with a massless leg.
    """
    return SOFT_FACTOR_NORM * transverse_traceless_norm(pair.legs(), khat)
