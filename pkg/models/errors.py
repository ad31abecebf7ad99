"""Exception types shared by the library, the CLI and the HTTP service."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation.

    Raised for unphysical inputs (x < 1 for the D-function, Q <= 0,
    lambda >= Lambda, a massless leg collinear with the emission direction).
    The message always names the offending quantity.
    """


class QuadratureError(RuntimeError):
    """Adaptive integration did not reach the requested tolerance.

    Carries the best available estimate so that callers can still report it.
    """

    def __init__(self, message: str, value: float, error_estimate: float) -> None:
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ConfigError(ValueError):
    """Usage error in command-line flags or a key=value config file."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key
