"""Tabular report rendering.

A :class:`Table` is a header, rows of numbers or strings, and optional
metadata.  CSV output is canonical: ``# key=value`` lines for metadata, one
header row, LF line endings, ``.`` as decimal point, fixed precision, no
thousands separators.  Parsing that output and writing it again gives the
same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Union

Cell = Union[float, str, None]

DEFAULT_PRECISION = 2


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    metadata: dict[str, Cell] = field(default_factory=dict)
    precision: int = DEFAULT_PRECISION


def format_cell(value: Cell, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    text = f"{value:.{precision}f}"
    # Keep "-0.00" out of the output; it would not survive a round trip as a distinct value.
    if text.startswith("-") and float(text) == 0:
        text = text[1:]
    return text


def _parse_cell(text: str) -> Cell:
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def to_csv(table: Table, metadata: bool = True) -> str:
    buf = io.StringIO()
    if metadata:
        buf.write(f"# precision={table.precision}\n")
        for key, value in table.metadata.items():
            buf.write(f"# {key}={format_cell(value, table.precision)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(v, table.precision) for v in row])
    return buf.getvalue()


def from_csv(text: str) -> Table:
    lines = text.splitlines(keepends=True)
    meta: dict[str, Cell] = {}
    precision = DEFAULT_PRECISION
    body_start = 0
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = i
            break
        key, _, value = line[1:].strip().partition("=")
        if key == "precision":
            precision = int(value)
        else:
            meta[key] = _parse_cell(value)
    else:
        body_start = len(lines)
    reader = csv.reader(io.StringIO("".join(lines[body_start:])))
    records = list(reader)
    if not records:
        raise ValueError("CSV report has no header row")
    rows = [[_parse_cell(c) for c in rec] for rec in records[1:]]
    return Table(records[0], rows, meta, precision)


def _json_value(value: Cell, precision: Optional[int]) -> Any:
    if isinstance(value, float) and precision is not None:
        return round(value, precision)
    return value


def to_json(table: Table, full_precision: bool = False) -> str:
    precision = None if full_precision else table.precision
    payload = {
        "metadata": {k: _json_value(v, precision) for k, v in table.metadata.items()},
        "rows": [
            {c: _json_value(v, precision) for c, v in zip(table.columns, row)}
            for row in table.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    raise ValueError(f"unknown format {fmt!r}")
