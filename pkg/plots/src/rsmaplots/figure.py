"""Assemble min-rate-versus-SNR figures from sweep tables.

One panel per input CSV, one line per scheme within a panel, fixed marker
and color per known scheme so series stay distinguishable across figures.
Rendering is deterministic: the same inputs produce byte-identical image
files (SVG ids are salted with a fixed string and no timestamps are
embedded).
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")  # headless batch rendering only

import matplotlib.pyplot as plt

from .table import SweepTable, read_table

__all__ = [
    "X_LABEL",
    "Y_LABEL",
    "SCHEME_STYLE",
    "FigureSpec",
    "scheme_style",
    "build_figure",
    "render",
]

X_LABEL = "SNR [dB]"
Y_LABEL = "min rate [bits/s/Hz]"

_FORMATS = ("svg", "png")
_HASH_SALT = "rsma-plots"

# marker, color per scheme the simulator emits
SCHEME_STYLE = {
    "rsma-proposed": ("o", "tab:blue"),
    "rsma-oracle": ("s", "tab:red"),
    "sdma-zf": ("^", "tab:green"),
    "sdma-mrt": ("v", "tab:orange"),
}
_FALLBACK_MARKERS = ("D", "P", "X", "*", "h", "p")
_FALLBACK_COLORS = (
    "tab:purple",
    "tab:brown",
    "tab:pink",
    "tab:gray",
    "tab:olive",
    "tab:cyan",
)


@dataclass(frozen=True)
class FigureSpec:
    """What to plot: input CSVs, output path, image format, axis labels."""

    inputs: tuple[str, ...]
    output: str
    image_format: str = "svg"
    x_label: str = X_LABEL
    y_label: str = Y_LABEL

    def __post_init__(self):
        if len(self.inputs) == 0:
            raise ValueError("FigureSpec needs at least one input CSV")
        if self.image_format not in _FORMATS:
            raise ValueError(
                f"image_format must be one of {_FORMATS}, got {self.image_format!r}"
            )


def scheme_style(scheme: str, fallback_index: int) -> tuple[str, str]:
    """(marker, color) for a scheme; unknown schemes get a stable fallback."""
    try:
        return SCHEME_STYLE[scheme]
    except KeyError:
        return (
            _FALLBACK_MARKERS[fallback_index % len(_FALLBACK_MARKERS)],
            _FALLBACK_COLORS[fallback_index % len(_FALLBACK_COLORS)],
        )


def build_figure(
    tables: list[SweepTable] | tuple[SweepTable, ...],
    x_label: str = X_LABEL,
    y_label: str = Y_LABEL,
):
    """One panel per table, one line per scheme, legend and grid per panel."""
    if not tables:
        raise ValueError("no tables to plot")
    n_panels = len(tables)
    fig, axes = plt.subplots(
        1, n_panels, figsize=(6.0 * n_panels, 4.5), squeeze=False
    )
    for ax, tab in zip(axes[0], tables):
        fallback = 0
        for scheme in tab.schemes():
            marker, color = scheme_style(scheme, fallback)
            if scheme not in SCHEME_STYLE:
                fallback += 1
            xs, ys = tab.series(scheme)
            ax.plot(xs, ys, marker=marker, color=color, label=scheme)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.set_title(tab.label())
        ax.grid(True, alpha=0.4)
        ax.legend()
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> str:
    """Read the CSVs named by ``spec``, draw the figure, write the image file.

    Returns the output path.  Raises TableError for schema mismatches or
    empty inputs and OSError for unreadable/unwritable paths.
    """
    tables = [read_table(path) for path in spec.inputs]
    fig = build_figure(tables, x_label=spec.x_label, y_label=spec.y_label)
    if spec.image_format == "svg":
        metadata = {"Date": None}  # drop the render timestamp
    else:
        metadata = {"Software": _HASH_SALT}  # fixed, version-free tag
    try:
        with plt.rc_context({"svg.hashsalt": _HASH_SALT}):
            fig.savefig(spec.output, format=spec.image_format, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.output
