"""Validated parameter bundles passed into the physics and numerics layers.

All models are frozen and reject unknown fields and non-finite numbers, so a
constructed instance can be shared freely between threads of a sweep.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

_FROZEN = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)


class EmissionSpec(BaseModel):
    """Frequency window and couplings of soft-graviton emission.

    ``kappa`` is derived as sqrt(8 pi G); ``m0_squared`` is the squared hard
    amplitude |M0|^2, a pure multiplicative constant.
    """

    model_config = _FROZEN

    lambda_ir: float = Field(gt=0.0)
    lambda_uv: float = Field(gt=0.0)
    newton_g: float = Field(default=1.0, gt=0.0)
    m0_squared: float = Field(default=1.0, ge=0.0)

    @model_validator(mode="after")
    def _check_window(self) -> EmissionSpec:
        if self.lambda_ir >= self.lambda_uv:
            raise ValueError(
                f"lambda_ir ({self.lambda_ir}) must be below lambda_uv ({self.lambda_uv})"
            )
        return self

    @property
    def kappa(self) -> float:
        return math.sqrt(8.0 * math.pi * self.newton_g)

    @property
    def log_factor(self) -> float:
        """ln(Lambda / lambda), the exact value of the frequency integral."""
        return math.log(self.lambda_uv / self.lambda_ir)


class QuadratureSpec(BaseModel):
    """Tolerances for adaptive integration.

    ``singularity_guard`` is the solid angle of the cap excluded around each
    flagged singular direction in spherical integrals.
    """

    model_config = _FROZEN

    rel_tol: float = Field(default=1e-8, ge=0.0)
    abs_tol: float = Field(default=0.0, ge=0.0)
    max_subdivisions: int = Field(default=200, ge=1)
    singularity_guard: float = Field(default=1e-10, gt=0.0, lt=4.0 * math.pi)

    @model_validator(mode="after")
    def _check_tolerance(self) -> QuadratureSpec:
        if self.rel_tol <= 0.0 and self.abs_tol <= 0.0:
            raise ValueError("either rel_tol or abs_tol must be positive")
        return self


class BranchVelocities(BaseModel):
    """Two equal-speed branches of a Bloch-Nordsieck superposition.

    The + branch moves along +z; the - branch lies in the x-z plane at the
    opening angle from it.
    """

    model_config = _FROZEN

    speed: float = Field(ge=0.0, lt=1.0)
    opening_angle: float = Field(default=0.0, ge=0.0, le=math.pi)

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt((1.0 - self.speed) * (1.0 + self.speed))


class FiniteTimeSpec(BaseModel):
    """Observation time and frequency window for the finite-time factor.

    ``reference_frequency`` only enters the reported ln(omega_R t).
    """

    model_config = _FROZEN

    time: float = Field(gt=0.0)
    ir_cutoff: float = Field(gt=0.0)
    uv_cutoff: float = Field(gt=0.0)
    reference_frequency: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_window(self) -> FiniteTimeSpec:
        if self.ir_cutoff >= self.uv_cutoff:
            raise ValueError(
                f"ir_cutoff ({self.ir_cutoff}) must be below uv_cutoff ({self.uv_cutoff})"
            )
        return self

    @property
    def log_factor(self) -> float:
        return math.log(self.uv_cutoff / self.ir_cutoff)

    @property
    def log_reference(self) -> float:
        """ln(omega_R t)."""
        return math.log(self.reference_frequency * self.time)

    def at_time(self, time: float) -> FiniteTimeSpec:
        return FiniteTimeSpec(**{**self.model_dump(), "time": time})
