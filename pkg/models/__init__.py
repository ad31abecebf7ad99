"""Public re-exports of all model types."""

from models.config import (
    PARAMETER_DEFAULTS,
    PARAMETER_KEYS,
    Command,
    GridAxis,
    OutputFormat,
    RunConfig,
)
from models.errors import ConfigError, DomainError, QuadratureError
from models.records import ErrorRecord, RecordUnion, ResultRecord
from models.results import CONVENTION_MASSIVE, CONVENTION_MASSLESS, CoefficientResult
from models.specs import BranchVelocities, EmissionSpec, FiniteTimeSpec, QuadratureSpec

__all__ = [
    # Input specs
    "EmissionSpec",
    "QuadratureSpec",
    "BranchVelocities",
    "FiniteTimeSpec",
    # Results
    "CoefficientResult",
    "CONVENTION_MASSIVE",
    "CONVENTION_MASSLESS",
    # Run configuration
    "RunConfig",
    "GridAxis",
    "Command",
    "OutputFormat",
    "PARAMETER_KEYS",
    "PARAMETER_DEFAULTS",
    # Records
    "ResultRecord",
    "ErrorRecord",
    "RecordUnion",
    # Errors
    "DomainError",
    "QuadratureError",
    "ConfigError",
]
