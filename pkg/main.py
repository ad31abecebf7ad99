"""FastAPI application exposing the decoherence evaluations over HTTP.

Exports ``app`` for use with ``uvicorn main:app``. ``POST /evaluate`` takes
the same RunConfig the CLI builds and returns the records the CLI would emit.
"""

import logging
import traceback

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from cli.logs import configure_logging
from cli.runner import evaluate
from models.config import RunConfig
from models.errors import ConfigError
from models.records import RecordUnion
from physics import __version__

configure_logging()
logger = logging.getLogger("decoherence.service")


# ---------------------------------------------------------------------------
# FastAPI application
# ---------------------------------------------------------------------------

app = FastAPI(title="Graviton Decoherence", version=__version__)


@app.exception_handler(ConfigError)
async def config_error_handler(request: Request, exc: ConfigError) -> JSONResponse:
    """Usage errors are the client's: 422 naming the offending key."""
    logger.info("rejected config", extra={"error_type": "ConfigError"})
    return JSONResponse(status_code=422, content={"detail": str(exc), "key": exc.key})


@app.exception_handler(Exception)
async def catch_all_handler(request: Request, exc: Exception) -> JSONResponse:
    """Log unexpected failures and answer with a generic 500."""
    logger.error(
        "Unhandled exception: %s: %s\n%s",
        type(exc).__name__,
        exc,
        traceback.format_exc(),
    )
    return JSONResponse(status_code=500, content={"detail": "internal error"})


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------


@app.get("/health")
async def health() -> dict:
    return {"status": "healthy", "version": __version__}


@app.post("/evaluate", response_model=list[RecordUnion])
def evaluate_endpoint(config: RunConfig) -> list[RecordUnion]:
    """Evaluate one point or a sweep and return its records in grid order."""
    logger.info("evaluate request", extra={"command": config.evaluated_command})
    records = evaluate(config)
    failed = sum(1 for r in records if r.status == "error")
    logger.info(
        "evaluate response: %d records, %d errors",
        len(records),
        failed,
        extra={"command": config.evaluated_command},
    )
    return records
