"""Record writers: one JSON object per line, or plot-ready CSV.

Floats are written in their shortest round-trip form in both formats, and
no timestamps are emitted, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from typing import Optional

import orjson

from models.config import RunConfig
from models.records import RecordUnion

TRAILING_COLUMNS = ("value", "error_estimate", "convention_tag", "status", "message")


def records_to_json_lines(records: Sequence[RecordUnion]) -> bytes:
    return b"".join(orjson.dumps(r.model_dump(mode="json")) + b"\n" for r in records)


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_columns(records: Sequence[RecordUnion], config: RunConfig) -> list[str]:
    """Sweep axes first (or, for a single point, every echoed input)."""
    if config.grid:
        return [axis.name for axis in config.grid] + list(TRAILING_COLUMNS)
    leading: list[str] = []
    for record in records:
        for key in record.inputs:
            if key not in leading:
                leading.append(key)
    return leading + list(TRAILING_COLUMNS)


def records_to_csv(records: Sequence[RecordUnion], config: RunConfig) -> str:
    columns = csv_columns(records, config)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(columns)
    for record in records:
        row: dict[str, object] = dict(record.inputs)
        row["value"] = record.value
        row["error_estimate"] = record.error_estimate
        row["convention_tag"] = getattr(record, "convention_tag", None)
        row["status"] = record.status
        row["message"] = getattr(record, "message", None)
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buffer.getvalue()


def render(records: Sequence[RecordUnion], config: RunConfig) -> bytes:
    if config.output_format == "csv":
        return records_to_csv(records, config).encode("utf-8")
    return records_to_json_lines(records)


def write_records(
    records: Sequence[RecordUnion], config: RunConfig, stream: Optional[io.BufferedIOBase] = None
) -> None:
    """Write to ``config.out`` when set, else to ``stream`` (binary)."""
    payload = render(records, config)
    if config.out:
        with open(config.out, "wb") as fh:
            fh.write(payload)
        return
    if stream is not None:
        stream.write(payload)
        stream.flush()
