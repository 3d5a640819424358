"""Typed loading of rate-sweep CSV tables.

The sweep CSV is the sole data interface between the simulator and this
package.  Its schema is fixed: a single header line naming twelve columns,
then one row per (SNR, scheme) cell.  Numeric cells are written with the
``%.12g`` format, optional cells are empty strings.  This module parses a
file into typed rows and can write those rows back out; for any file that
follows the schema the round trip reproduces the input text byte for byte,
which is how callers can verify that plotting never alters the data.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "CSV_HEADER",
    "COLUMNS",
    "TableError",
    "SweepRow",
    "SweepTable",
    "read_table",
    "parse_table_text",
    "row_to_cells",
    "table_to_csv_text",
]

# Versioned schema of the sweep CSV (column order is part of the contract).
CSV_HEADER = "snr_db,scheme,min_rate,t,beta,n_hat,r1,r2,r3,r4,trials,seed"
COLUMNS = tuple(CSV_HEADER.split(","))

# Columns that may legitimately be empty (benchmark schemes report no
# power split, no common-rate share, and no candidate values).
_OPTIONAL = frozenset({"t", "beta", "n_hat", "r1", "r2", "r3", "r4"})
_INT_COLUMNS = frozenset({"n_hat", "trials", "seed"})


class TableError(ValueError):
    """A sweep CSV does not conform to the schema or holds no data."""


@dataclass(frozen=True)
class SweepRow:
    """One (SNR, scheme) cell of a sweep table."""

    snr_db: float
    scheme: str
    min_rate: float
    t: float | None
    beta: float | None
    n_hat: int | None
    r1: float | None
    r2: float | None
    r3: float | None
    r4: float | None
    trials: int
    seed: int


@dataclass(frozen=True)
class SweepTable:
    """All rows of one sweep CSV plus the provenance needed for labeling."""

    path: str
    rows: tuple[SweepRow, ...]

    def label(self) -> str:
        """Panel title: the input file's stem."""
        return Path(self.path).stem

    def schemes(self) -> tuple[str, ...]:
        """Scheme names in first-appearance order."""
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(row.scheme, None)
        return tuple(seen)

    def series(self, scheme: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
        """(snr_db, min_rate) pairs for one scheme, sorted by SNR."""
        pairs = sorted(
            (row.snr_db, row.min_rate) for row in self.rows if row.scheme == scheme
        )
        if not pairs:
            raise TableError(f"no rows for scheme {scheme!r} in {self.path}")
        xs, ys = zip(*pairs)
        return tuple(xs), tuple(ys)

    def snr_range(self) -> tuple[float, float]:
        values = [row.snr_db for row in self.rows]
        return min(values), max(values)

    def rate_range(self) -> tuple[float, float]:
        values = [row.min_rate for row in self.rows]
        return min(values), max(values)


def _parse_cell(column: str, cell: str, line_no: int, path: str):
    if cell == "":
        if column in _OPTIONAL:
            return None
        raise TableError(
            f"{path}:{line_no}: column {column!r} must not be empty"
        )
    if column == "scheme":
        return cell
    try:
        if column in _INT_COLUMNS:
            return int(cell)
        return float(cell)
    except ValueError as exc:
        raise TableError(
            f"{path}:{line_no}: column {column!r} has non-numeric cell {cell!r}"
        ) from exc


def parse_table_text(text: str, path: str = "<memory>") -> SweepTable:
    """Parse the full text of a sweep CSV into a typed table.

    Raises TableError on a header that is not exactly the versioned schema,
    on any row with the wrong cell count or an unparsable cell, and on a
    file with a valid header but no data rows.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline
    if not lines or lines[0] != CSV_HEADER:
        found = lines[0] if lines else "<empty file>"
        raise TableError(
            f"{path}: header mismatch: expected {CSV_HEADER!r}, found {found!r}"
        )
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(COLUMNS):
            raise TableError(
                f"{path}:{line_no}: expected {len(COLUMNS)} cells, found {len(cells)}"
            )
        values = {
            column: _parse_cell(column, cell, line_no, path)
            for column, cell in zip(COLUMNS, cells)
        }
        rows.append(SweepRow(**values))
    if not rows:
        raise TableError(f"{path}: no data rows")
    return SweepTable(path=path, rows=tuple(rows))


def read_table(path: str | Path) -> SweepTable:
    """Load one sweep CSV from disk."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_table_text(text, path=str(path))


def _format_number(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".12g")


def row_to_cells(row: SweepRow) -> list[str]:
    """Render one typed row back into its twelve CSV cells."""
    cells = []
    for column in COLUMNS:
        value = getattr(row, column)
        if value is None:
            cells.append("")
        elif column == "scheme":
            cells.append(value)
        else:
            cells.append(_format_number(value))
    return cells


def table_to_csv_text(table: SweepTable) -> str:
    """Serialize a table back to CSV text (header, rows, trailing newline).

    For input produced with the schema's ``%.12g`` cell format this inverts
    parsing exactly, so ``table_to_csv_text(read_table(p))`` equals the file
    content at ``p`` byte for byte.
    """
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in table.rows:
        out.write(",".join(row_to_cells(row)) + "\n")
    return out.getvalue()
