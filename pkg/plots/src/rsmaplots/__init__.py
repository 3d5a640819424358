"""Figure rendering for rate-sweep CSV tables.

Consumes the simulator's sweep CSVs purely through their fixed schema and
turns them into min-rate-versus-SNR figures: one panel per input file, one
line per scheme, deterministic image output.
"""

from .figure import (
    SCHEME_STYLE,
    X_LABEL,
    Y_LABEL,
    FigureSpec,
    build_figure,
    render,
    scheme_style,
)
from .table import (
    COLUMNS,
    CSV_HEADER,
    SweepRow,
    SweepTable,
    TableError,
    parse_table_text,
    read_table,
    row_to_cells,
    table_to_csv_text,
)

__version__ = "0.1.0"

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
    "FigureSpec",
    "SCHEME_STYLE",
    "X_LABEL",
    "Y_LABEL",
    "build_figure",
    "render",
    "scheme_style",
    "__version__",
]
