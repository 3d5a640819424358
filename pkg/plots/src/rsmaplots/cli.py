"""Command-line entry point: render sweep CSVs into a figure.

Usage::

    plot --in sweep_a.csv sweep_b.csv --out figure.svg [--format svg|png]

Exit codes: 0 on success, 1 on input/output errors (bad schema, empty
data, unreadable or unwritable paths), 2 on command-line usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figure import FigureSpec, render
from .table import TableError

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description=(
            "Render rate-sweep CSV tables into a min-rate-vs-SNR figure, "
            "one panel per input file, one line per scheme."
        ),
    )
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        metavar="CSV",
        help="input sweep CSV file(s); each becomes one panel",
    )
    parser.add_argument(
        "--out",
        required=True,
        metavar="PATH",
        help="output image path",
    )
    parser.add_argument(
        "--format",
        choices=("svg", "png"),
        default=None,
        help=(
            "image format; default is inferred from the --out suffix "
            "(.png means png, anything else svg)"
        ),
    )
    return parser


def _resolve_format(explicit: str | None, out_path: str) -> str:
    if explicit is not None:
        return explicit
    return "png" if Path(out_path).suffix.lower() == ".png" else "svg"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = _resolve_format(args.format, args.out)
    spec = FigureSpec(
        inputs=tuple(args.inputs), output=args.out, image_format=fmt
    )
    try:
        written = render(spec)
    except (TableError, OSError) as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {written} ({fmt}, {len(spec.inputs)} panel(s))", file=sys.stderr
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
