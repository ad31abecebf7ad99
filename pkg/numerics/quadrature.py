"""Adaptive integration over intervals and over the unit sphere.

Both rules sit on QUADPACK (``scipy.integrate.quad``), which subdivides
deterministically, so identical inputs give bit-identical results. The
sphere is integrated as a nested pair of 1-D rules: polar cosine ``z`` on the
inside, azimuth on the outside.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy import integrate

from models.errors import QuadratureError
from models.specs import QuadratureSpec

logger = logging.getLogger("decoherence.quadrature")

TWO_PI = 2.0 * math.pi

# Inner (z) rules run tighter than the outer azimuth rule so that their
# residual noise does not stall the outer subdivision.
_INNER_TIGHTENING = 0.1
_MIN_REL_TOL = 1e-13


@dataclass(frozen=True, slots=True)
class UnitDirection:
    """A direction on the unit sphere: polar cosine ``z`` and ``azimuth``."""

    z: float
    azimuth: float

    @property
    def sin_theta(self) -> float:
        return math.sqrt(max(0.0, (1.0 - self.z) * (1.0 + self.z)))

    @property
    def vector(self) -> tuple[float, float, float]:
        s = self.sin_theta
        return (s * math.cos(self.azimuth), s * math.sin(self.azimuth), self.z)

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> UnitDirection:
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0:
            raise ValueError("cannot take the direction of a zero vector")
        return cls(z=min(1.0, max(-1.0, z / norm)), azimuth=math.atan2(y, x))


class QuadratureResult(NamedTuple):
    value: float
    error_estimate: float


def _tolerance(spec: QuadratureSpec, value: float) -> float:
    return max(spec.abs_tol, spec.rel_tol * abs(value))


def integrate_interval(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    *,
    points: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` with an adaptive Gauss-Kronrod rule.

    Args:
        f: Scalar integrand, finite on the interval.
        a: Lower limit.
        b: Upper limit, ``b > a``.
        spec: Tolerances and subdivision limit.
        points: Interior break points where ``f`` has kinks or steep layers.

    Returns:
        ``(value, error_estimate)``.

    Raises:
        ValueError: If ``b <= a``.
        QuadratureError: If the requested tolerance was not reached; the
            exception carries the best estimate.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise ValueError(f"invalid interval [{a}, {b}]")

    interior = None
    if points is not None:
        interior = sorted({p for p in points if a < p < b})
        if not interior:
            interior = None

    limit = max(spec.max_subdivisions, len(interior) + 1 if interior else 1)
    epsrel = max(spec.rel_tol, _MIN_REL_TOL) if spec.rel_tol > 0.0 else 0.0
    out = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=epsrel,
        limit=limit,
        points=interior,
        full_output=1,
    )
    value, error = float(out[0]), float(out[1])

    if not (math.isfinite(value) and math.isfinite(error)):
        raise QuadratureError(f"non-finite integral on [{a}, {b}]", value, error)
    if len(out) > 3 and error > _tolerance(spec, value):
        # QUADPACK reports ier != 0 through the trailing message element.
        message = out[3] if isinstance(out[3], str) else "integration did not converge"
        raise QuadratureError(
            f"[{a}, {b}]: {message.strip()} (value={value!r}, error={error!r})",
            value,
            error,
        )
    return QuadratureResult(value, error)


# ---------------------------------------------------------------------------
# Spherical integration
# ---------------------------------------------------------------------------


def _cap_cosine(guard: float) -> float:
    """cos of the half-angle of a cap with solid angle ``guard``."""
    return 1.0 - guard / TWO_PI


def _cap_edge(axis: tuple[float, float, float], cos_alpha: float) -> UnitDirection:
    ax, ay, az = axis
    # Any unit vector perpendicular to the axis.
    if abs(az) < 0.9:
        px, py, pz = -ay, ax, 0.0
    else:
        px, py, pz = 0.0, -az, ay
    norm = math.sqrt(px * px + py * py + pz * pz)
    sin_alpha = math.sqrt(max(0.0, (1.0 - cos_alpha) * (1.0 + cos_alpha)))
    return UnitDirection.from_vector(
        cos_alpha * ax + sin_alpha * px / norm,
        cos_alpha * ay + sin_alpha * py / norm,
        cos_alpha * az + sin_alpha * pz / norm,
    )


def _guarded(
    f: Callable[[UnitDirection], float],
    axes: list[tuple[float, float, float]],
    cos_alpha: float,
) -> Callable[[UnitDirection], float]:
    def wrapped(k: UnitDirection) -> float:
        kx, ky, kz = k.vector
        for ax, ay, az in axes:
            if kx * ax + ky * ay + kz * az > cos_alpha:
                return 0.0
        return f(k)

    return wrapped


def integrate_sphere(
    f: Callable[[UnitDirection], float],
    spec: QuadratureSpec,
    *,
    azimuth_symmetric: bool = False,
    z_breakpoints: Optional[Callable[[float], Iterable[float]]] = None,
    singular_directions: Sequence[UnitDirection] = (),
) -> QuadratureResult:
    """Integrate ``f`` over the full solid angle.

    Args:
        f: Integrand on unit directions.
        spec: Tolerances. ``spec.singularity_guard`` sets the solid angle of
            the caps cut around ``singular_directions``.
        azimuth_symmetric: ``f`` does not depend on the azimuth; a single
            1-D rule in ``z`` is used.
        z_breakpoints: Optional map azimuth -> interior ``z`` break points
            for the inner rule.
        singular_directions: Directions where ``f`` is not defined (massless
            legs). ``f`` is taken as zero inside each cap and the excluded
            measure times ``|f|`` at the cap edge is added to the error.

    Returns:
        ``(value, error_estimate)``.

    Raises:
        QuadratureError: If either rule fails to converge.
    """
    excluded_error = 0.0
    integrand = f
    if singular_directions:
        cos_alpha = _cap_cosine(spec.singularity_guard)
        axes = [d.vector for d in singular_directions]
        for axis in axes:
            edge_value = f(_cap_edge(axis, cos_alpha))
            excluded_error += spec.singularity_guard * abs(edge_value)
        integrand = _guarded(f, axes, cos_alpha)

    if azimuth_symmetric:
        pts = list(z_breakpoints(0.0)) if z_breakpoints is not None else None
        inner = integrate_interval(
            lambda z: integrand(UnitDirection(z, 0.0)),
            -1.0,
            1.0,
            spec.model_copy(update={"abs_tol": spec.abs_tol / TWO_PI}),
            points=pts,
        )
        return QuadratureResult(
            TWO_PI * inner.value, TWO_PI * inner.error_estimate + excluded_error
        )

    inner_spec = spec.model_copy(
        update={
            "rel_tol": spec.rel_tol * _INNER_TIGHTENING,
            "abs_tol": spec.abs_tol * _INNER_TIGHTENING / TWO_PI,
        }
    )
    inner_errors: list[float] = []

    def over_z(azimuth: float) -> float:
        pts = list(z_breakpoints(azimuth)) if z_breakpoints is not None else None
        res = integrate_interval(
            lambda z: integrand(UnitDirection(z, azimuth)),
            -1.0,
            1.0,
            inner_spec,
            points=pts,
        )
        inner_errors.append(res.error_estimate)
        return res.value

    outer = integrate_interval(over_z, 0.0, TWO_PI, spec)
    error = math.fsum(
        [outer.error_estimate, TWO_PI * max(inner_errors, default=0.0), excluded_error]
    )
    logger.debug(
        "sphere integral",
        extra={"value": outer.value, "error_estimate": error},
    )
    return QuadratureResult(outer.value, error)
