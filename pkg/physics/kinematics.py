"""Equal-mass two-body elastic kinematics in the centre-of-mass frame.

Signature (+,-,-,-), natural units, angles in radians. Incoming momenta run
along +-z, the scattering plane is x-z, and a superposed second final state
is obtained by rotating the outgoing pair about the y axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from models.errors import DomainError

# Relative tolerance of the kinematic invariants, and the absolute one
# (times Q) used on the massless shell.
INVARIANT_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class FourVector:
    """Minkowski four-vector (t, x, y, z)."""

    t: float
    x: float
    y: float
    z: float

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def momentum(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def __add__(self, other: FourVector) -> FourVector:
        return FourVector(self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: FourVector) -> FourVector:
        return FourVector(self.t - other.t, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> FourVector:
        return FourVector(-self.t, -self.x, -self.y, -self.z)

    def rotated_about_y(self, angle: float) -> FourVector:
        c, s = math.cos(angle), math.sin(angle)
        return FourVector(self.t, c * self.x + s * self.z, self.y, -s * self.x + c * self.z)

    def rotated(self, rotation: np.ndarray) -> FourVector:
        """Apply a 3x3 rotation matrix to the spatial part."""
        x, y, z = (float(c) for c in rotation @ self.spatial)
        return FourVector(self.t, x, y, z)


def minkowski_dot(a: FourVector, b: FourVector) -> float:
    """a_t b_t - a_x b_x - a_y b_y - a_z b_z."""
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z


def _max_component(v: FourVector) -> float:
    return max(abs(v.t), abs(v.x), abs(v.y), abs(v.z))


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value}")


def _half_angle_offsets(momentum_ratio: float, angle: float) -> tuple[float, float]:
    """(1 + 2 r cos^2(a/2), 2 r sin^2(a/2)) with r = (Q/m)^2."""
    two_r = 2.0 * momentum_ratio * momentum_ratio
    half = 0.5 * angle
    return 1.0 + two_r * math.cos(half) ** 2, two_r * math.sin(half) ** 2


def _half_angle_ratios(momentum_ratio: float, angle: float) -> tuple[float, float, float]:
    """(1 + 2r, 1 + 2r sin^2(a/2), 1 + 2r cos^2(a/2)) with r = (Q/m)^2."""
    x_far, offset = _half_angle_offsets(momentum_ratio, angle)
    return 1.0 + 2.0 * momentum_ratio * momentum_ratio, 1.0 + offset, x_far


@dataclass(frozen=True, slots=True)
class ElasticKinematics:
    """An equal-mass 2->2 elastic event p + p' -> q + q'.

    Construct with :func:`build_elastic_cm` or :meth:`from_vectors`; the
    constructor checks conservation, the mass shell and s + t + u = 4 m^2.
    """

    mass: float
    cm_momentum: float
    scatter_angle: float
    incoming: tuple[FourVector, FourVector]
    outgoing: tuple[FourVector, FourVector]
    s: float
    t: float
    u: float

    def __post_init__(self) -> None:
        p, p_prime = self.incoming
        q, q_prime = self.outgoing
        scale = math.sqrt(self.s)
        imbalance = (p + p_prime) - (q + q_prime)
        if _max_component(imbalance) > INVARIANT_TOL * scale:
            raise DomainError(f"four-momentum not conserved: {imbalance}")
        m_sq = self.mass * self.mass
        # E^2 - |P|^2 loses absolute precision of order E^2, massive or not.
        shell_tol = INVARIANT_TOL * self.energy * self.energy
        for leg in (p, p_prime, q, q_prime):
            if abs(minkowski_dot(leg, leg) - m_sq) > shell_tol:
                raise DomainError(f"leg {leg} off the mass shell m={self.mass}")
        if abs(self.s + self.t + self.u - 4.0 * m_sq) > INVARIANT_TOL * self.s:
            raise DomainError("Mandelstam sum s + t + u != 4 m^2")

    @property
    def energy(self) -> float:
        return self.incoming[0].t

    @property
    def speed(self) -> float:
        return self.cm_momentum / self.energy

    @property
    def legs(self) -> tuple[tuple[FourVector, int], ...]:
        """Outgoing legs with sign +1, incoming with -1."""
        q, q_prime = self.outgoing
        p, p_prime = self.incoming
        return ((q, 1), (q_prime, 1), (p, -1), (p_prime, -1))

    def invariant_ratios(self) -> tuple[float, float, float]:
        """(p.p'/m^2, p.q/m^2, p.q'/m^2) from the closed CM expressions.

        Written in terms of Q^2/m^2 and half-angle sines so that the forward
        and static limits land exactly on 1.
        """
        if self.mass <= 0.0:
            raise DomainError("invariant ratios need m > 0")
        return _half_angle_ratios(self.cm_momentum / self.mass, self.scatter_angle)

    def bracket_arguments(self) -> tuple[float, float]:
        """(p.q'/m^2, -t/(2 m^2)): the far ratio and the offset of both D pairs."""
        if self.mass <= 0.0:
            raise DomainError("invariant ratios need m > 0")
        return _half_angle_offsets(self.cm_momentum / self.mass, self.scatter_angle)

    @classmethod
    def from_vectors(
        cls,
        mass: float,
        incoming: tuple[FourVector, FourVector],
        outgoing: tuple[FourVector, FourVector],
    ) -> ElasticKinematics:
        """Rebuild from explicit momenta, recomputing invariants by dot products."""
        p, p_prime = incoming
        q = outgoing[0]
        total = p + p_prime
        s = minkowski_dot(total, total)
        t = minkowski_dot(p - q, p - q)
        u = minkowski_dot(p - outgoing[1], p - outgoing[1])
        cos_sc = float(np.dot(p.spatial, q.spatial)) / (p.momentum * q.momentum)
        return cls(
            mass=mass,
            cm_momentum=q.momentum,
            scatter_angle=math.acos(min(1.0, max(-1.0, cos_sc))),
            incoming=incoming,
            outgoing=outgoing,
            s=s,
            t=t,
            u=u,
        )

    def rotated(self, rotation: np.ndarray) -> ElasticKinematics:
        """Apply a common rotation to all four momenta."""
        return ElasticKinematics.from_vectors(
            self.mass,
            (self.incoming[0].rotated(rotation), self.incoming[1].rotated(rotation)),
            (self.outgoing[0].rotated(rotation), self.outgoing[1].rotated(rotation)),
        )


def build_elastic_cm(m: float, Q: float, theta_sc: float) -> ElasticKinematics:
    """Build the CM-frame elastic event.

    Args:
        m: Common mass, ``m >= 0`` (``m = 0`` is the massless emitter case).
        Q: CM three-momentum, ``Q > 0``.
        theta_sc: Scattering angle in ``[0, pi]``.

    Returns:
        The validated ElasticKinematics.

    Raises:
        DomainError: On non-finite or out-of-range inputs.
    """
    _require_finite(m=m, Q=Q, theta_sc=theta_sc)
    if m < 0.0:
        raise DomainError(f"mass must be >= 0, got {m}")
    if Q <= 0.0:
        raise DomainError(f"Q must be > 0, got {Q}")
    if not 0.0 <= theta_sc <= math.pi:
        raise DomainError(f"theta_sc must lie in [0, pi], got {theta_sc}")

    energy = math.sqrt(Q * Q + m * m)
    p = FourVector(energy, 0.0, 0.0, Q)
    p_prime = FourVector(energy, 0.0, 0.0, -Q)
    if theta_sc == 0.0:
        q, q_prime = p, p_prime
    else:
        sin_t, cos_t = math.sin(theta_sc), math.cos(theta_sc)
        q = FourVector(energy, Q * sin_t, 0.0, Q * cos_t)
        q_prime = FourVector(energy, -Q * sin_t, 0.0, -Q * cos_t)

    s = 4.0 * energy * energy
    t = -4.0 * Q * Q * math.sin(0.5 * theta_sc) ** 2
    return ElasticKinematics(
        mass=m,
        cm_momentum=Q,
        scatter_angle=theta_sc,
        incoming=(p, p_prime),
        outgoing=(q, q_prime),
        s=s,
        t=t,
        u=4.0 * m * m - s - t,
    )


@dataclass(frozen=True, slots=True)
class SuperpositionPair:
    """Two candidate final states sharing the initial state of ``base``.

    Branch 1 is ``base.outgoing``; branch 2 is that pair rotated rigidly by
    ``split_angle``.
    """

    base: ElasticKinematics
    branch2: tuple[FourVector, FourVector]
    split_angle: float

    def __post_init__(self) -> None:
        q1, q1_prime = self.base.outgoing
        q2, q2_prime = self.branch2
        scale = math.sqrt(self.base.s)
        if _max_component((q1 + q1_prime) - (q2 + q2_prime)) > INVARIANT_TOL * scale:
            raise DomainError("branch pair sums differ")

    @property
    def branch1(self) -> tuple[FourVector, FourVector]:
        return self.base.outgoing

    @property
    def mass(self) -> float:
        return self.base.mass

    @property
    def dq_dot_q1(self) -> float:
        """(q2 - q1).q1 = 2 Q^2 sin^2(phi/2)."""
        return 2.0 * self.base.cm_momentum**2 * math.sin(0.5 * self.split_angle) ** 2

    def invariants(self) -> tuple[float, float, float]:
        """(q1.q1', q1.q2, q1.q2') from the closed CM expressions.

        m^2 + 2Q^2, m^2 + 2Q^2 sin^2(phi/2) and m^2 + 2Q^2 cos^2(phi/2); dot
        products of the vectors would cancel E^2 against Q^2 cos(phi).
        """
        m_sq = self.mass * self.mass
        two_q_sq = 2.0 * self.base.cm_momentum**2
        half = 0.5 * self.split_angle
        return (
            m_sq + two_q_sq,
            m_sq + two_q_sq * math.sin(half) ** 2,
            m_sq + two_q_sq * math.cos(half) ** 2,
        )

    def invariant_ratios(self) -> tuple[float, float, float]:
        """The three invariants divided by m^2."""
        if self.mass <= 0.0:
            raise DomainError("invariant ratios need m > 0")
        return _half_angle_ratios(self.base.cm_momentum / self.mass, self.split_angle)

    def bracket_arguments(self) -> tuple[float, float]:
        """(q1.q2'/m^2, (q2 - q1).q1/m^2): the far ratio and the offset of both D pairs."""
        if self.mass <= 0.0:
            raise DomainError("invariant ratios need m > 0")
        return _half_angle_offsets(self.base.cm_momentum / self.mass, self.split_angle)

    def legs(self) -> tuple[tuple[FourVector, int], ...]:
        """Branch 1 legs with sign +1, branch 2 legs with -1."""
        q1, q1_prime = self.branch1
        q2, q2_prime = self.branch2
        return ((q1, 1), (q1_prime, 1), (q2, -1), (q2_prime, -1))

    def swapped(self) -> SuperpositionPair:
        """The same superposition with the branches exchanged."""
        base = ElasticKinematics.from_vectors(self.mass, self.base.incoming, self.branch2)
        return SuperpositionPair(base=base, branch2=self.branch1, split_angle=self.split_angle)


def superpose(kin: ElasticKinematics, phi: float) -> SuperpositionPair:
    """Rotate the outgoing pair of ``kin`` by ``phi`` about the y axis.

    Raises:
        DomainError: If ``phi`` is non-finite or outside ``[0, pi)``.
    """
    _require_finite(phi=phi)
    if not 0.0 <= phi < math.pi:
        raise DomainError(f"phi must lie in [0, pi), got {phi}")
    q, q_prime = kin.outgoing
    if phi == 0.0:
        branch2 = (q, q_prime)
    else:
        branch2 = (q.rotated_about_y(phi), q_prime.rotated_about_y(phi))
    return SuperpositionPair(base=kin, branch2=branch2, split_angle=phi)
