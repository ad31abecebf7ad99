"""Structured JSON-lines logging for the CLI and the service."""

from __future__ import annotations

import logging
import sys
from typing import Optional, TextIO

import orjson

LOGGER_NAME = "decoherence"

_EXTRA_KEYS = ("command", "regime", "point_index", "value", "error_estimate", "error_type")


class StructuredFormatter(logging.Formatter):
    """JSON-lines formatter for structured log output."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: dict = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        # Include optional extra fields when present
        for key in _EXTRA_KEYS:
            val = getattr(record, key, None)
            if val is not None:
                log_data[key] = val
        if record.exc_info and record.exc_info[0] is not None:
            log_data["exception"] = self.formatException(record.exc_info)
        return orjson.dumps(log_data, default=str).decode()


def configure_logging(verbose: bool = False, stream: Optional[TextIO] = None) -> logging.Logger:
    """Attach a single structured handler to the ``decoherence`` logger.

    Logs go to stderr so stdout stays a clean record stream. Calling this
    again replaces the handler.
    """
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(StructuredFormatter())
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    # Prevent propagation to root logger to avoid duplicate output
    logger.propagate = False
    return logger
