"""Machine-readable output records, one per evaluated point."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict


class ResultRecord(BaseModel):
    """A converged evaluation with its inputs echoed."""

    model_config = ConfigDict(extra="forbid")

    status: Literal["ok"] = "ok"
    command: str
    regime: Optional[str] = None
    inputs: dict[str, float]
    value: float
    error_estimate: Optional[float] = None
    convention_tag: str
    extras: dict[str, float] = {}
    version: str


class ErrorRecord(BaseModel):
    """A failed evaluation. ``value`` carries a best estimate when one exists."""

    model_config = ConfigDict(extra="forbid")

    status: Literal["error"] = "error"
    command: str
    regime: Optional[str] = None
    inputs: dict[str, float]
    error_type: str
    message: str
    value: Optional[float] = None
    error_estimate: Optional[float] = None
    version: str


RecordUnion = Union[ResultRecord, ErrorRecord]
