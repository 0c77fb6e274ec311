"""CSV loading for series data.

Cells are kept as raw strings at load time; numeric interpretation happens
when a column pair is extracted, so a stray word in an unrelated column never
blocks loading. The tool only ever reads data files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .errors import EmptyFile, IngestError, NoSuchColumn, RaggedRows


@dataclass(frozen=True)
class DataTable:
    names: tuple[str, ...]
    columns: tuple[tuple[str, ...], ...]

    @property
    def row_count(self) -> int:
        return len(self.columns[0]) if self.columns else 0


def load_csv(path: str) -> DataTable:
    """Parse an RFC-4180-style CSV with a header row.

    Row numbers in errors count the header as row 1.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path}: file is empty") from None
        names = tuple(header)
        if len(set(names)) != len(names):
            raise IngestError(f"{path}: duplicate column names in header")
        cols: list[list[str]] = [[] for _ in names]
        row_no = 1
        for row in reader:
            row_no += 1
            if len(row) != len(names):
                raise RaggedRows(
                    f"{path}: row {row_no} has {len(row)} cells, expected {len(names)}",
                    row=row_no,
                )
            for col, cell in zip(cols, row):
                col.append(cell)
    if not cols or not cols[0]:
        raise EmptyFile(f"{path}: no data rows")
    return DataTable(names, tuple(tuple(col) for col in cols))


def extract_series(table: DataTable, xcol: str, ycol: str) -> tuple[list[tuple[float, float]], int]:
    """Numeric (x, y) pairs in row order, plus how many rows were dropped
    because either cell was non-numeric or non-finite."""

    def column(name: str) -> tuple[str, ...]:
        try:
            return table.columns[table.names.index(name)]
        except ValueError:
            raise NoSuchColumn(f"no column named {name!r}") from None

    xs, ys = column(xcol), column(ycol)
    points: list[tuple[float, float]] = []
    dropped = 0
    for sx, sy in zip(xs, ys):
        try:
            x, y = float(sx), float(sy)
        except ValueError:
            dropped += 1
            continue
        if not (math.isfinite(x) and math.isfinite(y)):
            dropped += 1
            continue
        points.append((x, y))
    return points, dropped


__all__ = ["DataTable", "extract_series", "load_csv"]
