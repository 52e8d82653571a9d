"""CSV reading and writing for processing-time tables.

One row per machine, one column per job, plain decimal numbers. A header
row is accepted only when asked for.
"""

from __future__ import annotations

import csv
import io
import math

from .core import ProcessingTimeTable, _as_table

__all__ = ["TableParseError", "parse_table", "format_table", "read_table", "write_table"]


class TableParseError(ValueError):
    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        where = ""
        if row is not None:
            where = f"row {row}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.row = row
        self.column = column


def parse_table(text: str, header: bool = False) -> ProcessingTimeTable:
    """Parse CSV text into a table; row/column numbers in errors are 1-based file positions."""
    rows = [(n, r) for n, r in enumerate(csv.reader(io.StringIO(text)), start=1) if any(c.strip() for c in r)]
    if header and rows:
        rows = rows[1:]
    if not rows:
        raise TableParseError("empty table")
    width = len(rows[0][1])
    data = []
    for lineno, row in rows:
        if len(row) != width:
            raise TableParseError(f"ragged row: {len(row)} columns, expected {width}", row=lineno)
        values = []
        for col, cell in enumerate(row, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise TableParseError(f"not a number: {cell.strip()!r}", row=lineno, column=col) from None
            if not math.isfinite(v):
                raise TableParseError(f"not a finite number: {cell.strip()!r}", row=lineno, column=col)
            if v < 0:
                raise TableParseError(f"negative processing time {v}", row=lineno, column=col)
            values.append(v)
        data.append(values)
    return ProcessingTimeTable(data)


def _fmt(v: float) -> str:
    return str(int(v)) if v.is_integer() and abs(v) < 2**53 else repr(v)


def format_table(table: ProcessingTimeTable) -> str:
    """CSV text that :func:`parse_table` reads back to an identical table."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in _as_table(table).x.tolist():
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_table(path, header: bool = False) -> ProcessingTimeTable:
    with open(path, newline="") as fh:
        return parse_table(fh.read(), header=header)


def write_table(table: ProcessingTimeTable, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(format_table(table))
