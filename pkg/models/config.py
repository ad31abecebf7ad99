"""RunConfig: the single description of a CLI or HTTP evaluation run.

Physics inputs live in a flat ``params`` mapping keyed by the names used on
the command line (``Q``, ``theta``, ``lambda_ir`` ...). Which keys a command
needs is decided by the command table in ``cli.commands``; this model only
checks that keys are known and values finite.
"""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Command = Literal[
    "dfunc",
    "emission",
    "interference",
    "xi",
    "xcoeff",
    "nu",
    "ratio",
    "finite-time",
    "sweep",
]
OutputFormat = Literal["json", "csv"]

PARAMETER_KEYS: tuple[str, ...] = (
    "x",
    "m",
    "Q",
    "theta",
    "phi",
    "s",
    "v",
    "gamma",
    "delta",
    "G",
    "gm2",
    "m0_squared",
    "m1m2_re",
    "lambda_ir",
    "lambda_uv",
    "t",
    "omega_r",
    "t1",
    "t2",
    "nu",
    "z",
    "azimuth",
)

# Documented defaults; every default that influences a result is echoed.
PARAMETER_DEFAULTS: dict[str, float] = {
    "G": 1.0,
    "m": 1.0,
    "m0_squared": 1.0,
    "m1m2_re": 1.0,
    "omega_r": 1.0,
    "delta": 0.0,
    "azimuth": 0.0,
}


class GridAxis(BaseModel):
    """One axis of a sweep grid."""

    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    name: str
    values: tuple[float, ...] = Field(min_length=1)

    @field_validator("name")
    @classmethod
    def known_name(cls, v: str) -> str:
        if v not in PARAMETER_KEYS:
            raise ValueError(f"unknown sweep parameter {v!r}")
        return v


class RunConfig(BaseModel):
    """Validated run description shared by the CLI and the service."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    target: Optional[Command] = None
    regime: Optional[str] = None
    params: dict[str, float] = {}
    grid: tuple[GridAxis, ...] = ()
    rel_tol: float = Field(default=1e-8, ge=0.0)
    abs_tol: float = Field(default=0.0, ge=0.0)
    max_subdivisions: int = Field(default=200, ge=1)
    output_format: OutputFormat = "json"
    out: Optional[str] = None
    jobs: int = Field(default=1, ge=1)
    verbose: bool = False

    @field_validator("params")
    @classmethod
    def known_finite_params(cls, v: dict[str, float]) -> dict[str, float]:
        for key, value in v.items():
            if key not in PARAMETER_KEYS:
                raise ValueError(f"unknown parameter {key!r}")
            if not math.isfinite(value):
                raise ValueError(f"parameter {key!r} must be finite, got {value}")
        return v

    @model_validator(mode="after")
    def _check_sweep(self) -> RunConfig:
        if self.command == "sweep":
            if self.target is None or self.target == "sweep":
                raise ValueError("sweep needs a target command other than sweep")
            if not 1 <= len(self.grid) <= 2:
                raise ValueError("sweep needs one or two grid axes")
            names = [axis.name for axis in self.grid]
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate grid axis in {names}")
        elif self.grid:
            raise ValueError("grid axes are only allowed with the sweep command")
        if self.rel_tol <= 0.0 and self.abs_tol <= 0.0:
            raise ValueError("either rel_tol or abs_tol must be positive")
        return self

    @property
    def evaluated_command(self) -> Command:
        """The command each grid point (or the single point) evaluates."""
        return self.target if self.command == "sweep" else self.command

    def resolved_params(self, overrides: Optional[dict[str, float]] = None) -> dict[str, float]:
        """Defaults, then explicit params, then per-point overrides."""
        merged = dict(PARAMETER_DEFAULTS)
        merged.update(self.params)
        if overrides:
            merged.update(overrides)
        return merged
