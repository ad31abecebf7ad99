"""Command-line front-end: config parsing, evaluation, sweeps and output."""

from cli.commands import COMMANDS, Evaluation, check_required
from cli.config import parse_config
from cli.logs import StructuredFormatter, configure_logging
from cli.runner import evaluate, main, run

__all__ = [
    "COMMANDS",
    "Evaluation",
    "check_required",
    "parse_config",
    "StructuredFormatter",
    "configure_logging",
    "evaluate",
    "run",
    "main",
]
