"""Adaptive quadrature on intervals and on the unit sphere."""

from numerics.quadrature import (
    QuadratureResult,
    UnitDirection,
    integrate_interval,
    integrate_sphere,
)

__all__ = [
    "QuadratureResult",
    "UnitDirection",
    "integrate_interval",
    "integrate_sphere",
]
