"""Result containers returned by the coefficient operations."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, model_validator

# Normalization conventions. Every coefficient reports which one it uses so
# that values from different regimes are never compared blindly.
CONVENTION_MASSIVE = "kappa2-m2-over-2pi2"
CONVENTION_MASSLESS = "kappa2-over-pi2"


class CoefficientResult(BaseModel):
    """A decoherence or emission coefficient split into its factors.

    ``prefactor`` is signed and already carries |M0|^2 (or Re M1 M2*) and the
    coupling, so that ``total = bracket_value * log_factor * prefactor``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    bracket_value: float
    log_factor: float
    prefactor: float
    total: float
    convention_tag: str

    @classmethod
    def from_parts(
        cls,
        bracket_value: float,
        log_factor: float,
        prefactor: float,
        convention_tag: str,
    ) -> CoefficientResult:
        return cls(
            bracket_value=bracket_value,
            log_factor=log_factor,
            prefactor=prefactor,
            total=bracket_value * log_factor * prefactor,
            convention_tag=convention_tag,
        )

    @model_validator(mode="after")
    def _check_product(self) -> CoefficientResult:
        expected = self.bracket_value * self.log_factor * self.prefactor
        if not math.isclose(self.total, expected, rel_tol=1e-14):
            raise ValueError(f"total {self.total} != bracket * log * prefactor {expected}")
        return self
