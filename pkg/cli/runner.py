"""Evaluate a RunConfig into records, write them, and map outcome to an exit status.

Exit status: 0 when every point converged, 1 when any point produced an
error record, 2 on a usage error.
"""

from __future__ import annotations

import itertools
import logging
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Optional

from pydantic import ValidationError

from cli.commands import check_required, quadrature_spec, resolve_regime
from cli.config import parse_config
from cli.logs import configure_logging
from cli.output import write_records
from models.config import RunConfig
from models.errors import ConfigError, DomainError, QuadratureError
from models.records import ErrorRecord, RecordUnion, ResultRecord
from physics import __version__

logger = logging.getLogger("decoherence.cli")

EXIT_OK = 0
EXIT_EVALUATION_ERROR = 1
EXIT_USAGE = 2


def grid_points(config: RunConfig) -> list[dict[str, float]]:
    """Per-point parameter overrides in grid order (last axis fastest)."""
    if not config.grid:
        return [{}]
    names = [axis.name for axis in config.grid]
    return [dict(zip(names, combo)) for combo in itertools.product(*(a.values for a in config.grid))]


def evaluate_point(config: RunConfig, overrides: dict[str, float]) -> RecordUnion:
    """Evaluate one point; domain and convergence failures become error records."""
    regime_name, regime = resolve_regime(config)
    params = config.resolved_params(overrides)
    command = config.evaluated_command
    echoed = {k: params[k] for k in (*regime.required, *regime.optional) if k in params}
    try:
        result = regime.evaluate(params, quadrature_spec(config))
    except QuadratureError as exc:
        return ErrorRecord(
            command=command,
            regime=regime_name,
            inputs=echoed,
            error_type="QuadratureError",
            message=str(exc),
            value=exc.value,
            error_estimate=exc.error_estimate,
            version=__version__,
        )
    except (DomainError, ValidationError) as exc:
        return ErrorRecord(
            command=command,
            regime=regime_name,
            inputs=echoed,
            error_type=type(exc).__name__,
            message=str(exc),
            version=__version__,
        )
    return ResultRecord(
        command=command,
        regime=regime_name,
        inputs=result.inputs,
        value=result.value,
        error_estimate=result.error_estimate,
        convention_tag=result.convention_tag,
        extras=result.extras,
        version=__version__,
    )


def evaluate(config: RunConfig) -> list[RecordUnion]:
    """Evaluate every point of ``config`` and return records in grid order.

    Raises:
        ConfigError: If the config cannot be evaluated at all.
    """
    check_required(config)
    points = grid_points(config)
    worker = partial(evaluate_point, config)
    if config.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(worker, points))
    else:
        records = [worker(point) for point in points]

    for index, record in enumerate(records):
        if record.status == "error":
            logger.warning(
                record.message,
                extra={
                    "command": record.command,
                    "point_index": index,
                    "error_type": record.error_type,
                },
            )
        else:
            logger.debug(
                "evaluated",
                extra={
                    "command": record.command,
                    "point_index": index,
                    "value": record.value,
                    "error_estimate": record.error_estimate,
                },
            )
    return records


def run(config: RunConfig, stream=None) -> int:
    """Evaluate, write records, and return the exit status."""
    records = evaluate(config)
    write_records(records, config, stream if stream is not None else sys.stdout.buffer)
    failed = sum(1 for r in records if r.status == "error")
    logger.info(
        "run finished: %d points, %d errors",
        len(records),
        failed,
        extra={"command": config.evaluated_command},
    )
    return EXIT_EVALUATION_ERROR if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    configure_logging(verbose="--verbose" in args)
    try:
        config = parse_config(args)
    except ConfigError as exc:
        logger.error("usage error: %s", exc, extra={"error_type": "ConfigError"})
        print(f"graviton-decoherence: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
