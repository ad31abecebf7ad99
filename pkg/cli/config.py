"""Command-line and key=value config parsing into a RunConfig.

Precedence: built-in defaults < config file < flags. Every usage error is a
:class:`ConfigError` naming the offending key; nothing here calls
``sys.exit``.
"""

from __future__ import annotations

import argparse
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn, Optional

import numpy as np
from pydantic import ValidationError

from cli.commands import COMMANDS, check_required
from models.config import PARAMETER_KEYS, GridAxis, RunConfig
from models.errors import ConfigError

# flag -> params key
PARAM_FLAGS: dict[str, str] = {
    "--x": "x",
    "--m": "m",
    "--Q": "Q",
    "--theta": "theta",
    "--phi": "phi",
    "--s": "s",
    "--v": "v",
    "--gamma": "gamma",
    "--delta": "delta",
    "--G": "G",
    "--gm2": "gm2",
    "--m0-squared": "m0_squared",
    "--m1m2-re": "m1m2_re",
    "--lambda-ir": "lambda_ir",
    "--lambda-uv": "lambda_uv",
    "--t": "t",
    "--omega-r": "omega_r",
    "--t1": "t1",
    "--t2": "t2",
    "--nu": "nu",
    "--z": "z",
    "--azimuth": "azimuth",
}

# Non-physics keys accepted in a config file, with their RunConfig field.
OPTION_KEYS: dict[str, str] = {
    "regime": "regime",
    "target": "target",
    "rel_tol": "rel_tol",
    "abs_tol": "abs_tol",
    "max_subdivisions": "max_subdivisions",
    "format": "output_format",
    "out": "out",
    "jobs": "jobs",
    "grid": "grid",
}

_NUMERIC_OPTIONS = {"rel_tol": float, "abs_tol": float, "max_subdivisions": int, "jobs": int}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError("argv", message)


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(key, f"malformed number {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(key, f"must be finite, got {text!r}")
    return value


def _parse_option(key: str, text: str) -> Any:
    kind = _NUMERIC_OPTIONS.get(key)
    if kind is None:
        return text
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(key, f"malformed number {text!r}") from None


def parse_grid(text: str) -> GridAxis:
    """``name=start:stop:num`` (inclusive linspace) or ``name=v1,v2,...``."""
    name, sep, spec = text.partition("=")
    name = name.strip().replace("-", "_")
    if not sep or not spec.strip():
        raise ConfigError("grid", f"expected name=values, got {text!r}")
    if name not in PARAMETER_KEYS:
        raise ConfigError(name, "unknown sweep parameter")
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ConfigError(name, f"expected start:stop:num, got {spec!r}")
        start, stop = _parse_float(name, parts[0]), _parse_float(name, parts[1])
        try:
            num = int(parts[2])
        except ValueError:
            raise ConfigError(name, f"malformed point count {parts[2]!r}") from None
        if num < 1:
            raise ConfigError(name, "grid needs at least one point")
        values = tuple(float(x) for x in np.linspace(start, stop, num))
    else:
        values = tuple(_parse_float(name, item) for item in spec.split(","))
    return GridAxis(name=name, values=values)


def parse_key_values(text: str) -> tuple[dict[str, float], dict[str, Any], list[GridAxis]]:
    """Parse UTF-8 key=value lines; ``#`` starts a comment.

    Returns:
        ``(params, options, grid)``.

    Raises:
        ConfigError: On malformed lines, unknown keys or bad numbers.
    """
    params: dict[str, float] = {}
    options: dict[str, Any] = {}
    grid: list[GridAxis] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().replace("-", "_"), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {raw!r}")
        if key in PARAMETER_KEYS:
            params[key] = _parse_float(key, value)
        elif key == "grid":
            grid.append(parse_grid(value))
        elif key in OPTION_KEYS:
            options[OPTION_KEYS[key]] = _parse_option(key, value)
        else:
            raise ConfigError(key, "unknown key")
    return params, options, grid


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    physics = common.add_argument_group("physics parameters")
    for flag, key in PARAM_FLAGS.items():
        physics.add_argument(flag, dest=f"param_{key}", metavar="X")
    run = common.add_argument_group("run options")
    run.add_argument("--regime")
    run.add_argument("--derivative", action="store_true", help="dfunc: derivative regime")
    run.add_argument("--target", choices=[c for c in COMMANDS])
    run.add_argument(
        "--grid",
        action="append",
        default=[],
        metavar="NAME=SPEC",
        help="sweep axis: name=start:stop:num or name=v1,v2,...",
    )
    run.add_argument("--out")
    run.add_argument("--format", dest="output_format", choices=["json", "csv"])
    run.add_argument("--rel-tol", dest="rel_tol")
    run.add_argument("--abs-tol", dest="abs_tol")
    run.add_argument("--max-subdivisions", dest="max_subdivisions")
    run.add_argument("--jobs")
    run.add_argument("--config", help="key=value config file")
    run.add_argument("--verbose", action="store_true")

    parser = _Parser(prog="graviton-decoherence", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in [*COMMANDS, "sweep"]:
        sub.add_parser(name, parents=[common], allow_abbrev=False)
    return parser


def parse_config(argv: Sequence[str], file_text: Optional[str] = None) -> RunConfig:
    """Turn command-line arguments (and optional config text) into a RunConfig.

    Args:
        argv: Arguments without the program name.
        file_text: Config file contents; when ``None`` the ``--config`` flag,
            if any, is read instead.

    Returns:
        A validated RunConfig whose command can be evaluated.

    Raises:
        ConfigError: On any usage error, naming the offending key.
    """
    ns = build_parser().parse_args(list(argv))

    if file_text is None and ns.config:
        try:
            file_text = Path(ns.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("config", f"cannot read {ns.config}: {exc}") from None

    params: dict[str, float] = {}
    options: dict[str, Any] = {}
    grid: list[GridAxis] = []
    if file_text:
        params, options, grid = parse_key_values(file_text)

    for key in PARAM_FLAGS.values():
        text = getattr(ns, f"param_{key}")
        if text is not None:
            params[key] = _parse_float(key, text)
    for key in ("regime", "target", "out", "output_format"):
        if getattr(ns, key) is not None:
            options[key] = getattr(ns, key)
    for key in ("rel_tol", "abs_tol", "max_subdivisions", "jobs"):
        if getattr(ns, key) is not None:
            options[key] = _parse_option(key, getattr(ns, key))
    if ns.derivative:
        options["regime"] = "derivative"
    if ns.grid:
        grid = [parse_grid(item) for item in ns.grid]
    if ns.verbose:
        options["verbose"] = True

    try:
        config = RunConfig(command=ns.command, params=params, grid=tuple(grid), **options)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or "config"
        raise ConfigError(key, first["msg"]) from None

    check_required(config)
    return config
