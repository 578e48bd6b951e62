"""Panel-grid rendering of sweep CSV files.

The input is a flat CSV with one row per (parameters, time) sample, as
written by the cavitylink sweep commands. One subplot is drawn per distinct
value of the panel_by column, one line per distinct value of the curve_by
column within that panel, and the points of each line are exactly the CSV
rows in file order. Nothing is recomputed, sorted, smoothed or interpolated;
the figure is a pure function of the file, so re-rendering an unchanged
CSV reproduces the image byte for byte.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

MAX_PANELS = 8
Y_RANGE = (0.0, 1.02)


class RenderError(ValueError):
    """Input CSV or spec cannot be rendered."""


class MissingColumnError(RenderError):
    """A referenced column is absent from the CSV header."""

    def __init__(self, column: str, header: tuple[str, ...]):
        super().__init__(
            f"column {column!r} not in CSV header ({', '.join(header)})")
        self.column = column


class EmptyTableError(RenderError):
    """The CSV has no header or no data rows."""


@dataclass(frozen=True)
class FigureSpec:
    """What to read, how to group it and where to write the image."""

    csv_path: str
    panel_by: str
    curve_by: str
    y_column: str
    out_path: str
    x_column: str = "t"
    x_label: str | None = None
    y_label: str | None = None

    def __post_init__(self) -> None:
        for name in ("csv_path", "panel_by", "curve_by", "y_column", "out_path", "x_column"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")


def load_table(path: str) -> tuple[tuple[str, ...], list[dict[str, str]]]:
    """Header and rows of a CSV file; raises EmptyTableError if either is absent."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyTableError(f"{path}: no CSV header")
        rows = list(reader)
    if not rows:
        raise EmptyTableError(f"{path}: no data rows")
    return tuple(reader.fieldnames), rows


def _unique_in_order(values: list[str]) -> list[str]:
    return list(dict.fromkeys(values))


def _short(value: str) -> str:
    """Compact display form: floats shortened to 6 significant digits."""
    try:
        return f"{float(value):.6g}"
    except ValueError:
        return value


def _parse_floats(rows: list[dict[str, str]], column: str) -> list[float]:
    out = []
    for k, row in enumerate(rows, start=2):  # header is line 1
        try:
            out.append(float(row[column]))
        except ValueError:
            raise RenderError(
                f"line {k}: {row[column]!r} in column {column!r} is not a number"
            ) from None
    return out


def render(spec: FigureSpec) -> Figure:
    """Draw the panel grid described by spec and write it to spec.out_path."""
    header, rows = load_table(spec.csv_path)
    for column in (spec.x_column, spec.y_column, spec.panel_by, spec.curve_by):
        if column not in header:
            raise MissingColumnError(column, header)

    panels = _unique_in_order([row[spec.panel_by] for row in rows])
    if len(panels) > MAX_PANELS:
        raise RenderError(f"{len(panels)} panels exceed the limit of {MAX_PANELS}")

    n_cols = 1 if len(panels) == 1 else 2
    n_rows = math.ceil(len(panels) / n_cols)
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(4.4 * n_cols, 3.2 * n_rows), squeeze=False)

    flat = list(axes.flat)
    for ax in flat[len(panels):]:
        fig.delaxes(ax)
    for ax, panel in zip(flat, panels):
        panel_rows = [row for row in rows if row[spec.panel_by] == panel]
        for curve in _unique_in_order([row[spec.curve_by] for row in panel_rows]):
            curve_rows = [row for row in panel_rows if row[spec.curve_by] == curve]
            xs = _parse_floats(curve_rows, spec.x_column)
            ys = _parse_floats(curve_rows, spec.y_column)
            ax.plot(xs, ys, linewidth=1.2, label=_short(curve))
        ax.set_ylim(*Y_RANGE)
        ax.set_title(f"{spec.panel_by} = {_short(panel)}", fontsize=10)
        ax.set_xlabel(spec.x_label or spec.x_column)
        ax.set_ylabel(spec.y_label or spec.y_column)
        ax.legend(title=spec.curve_by, fontsize=8, title_fontsize=8)

    fig.tight_layout()
    save_kwargs = {"metadata": {"Date": None}} if spec.out_path.endswith(".svg") else {}
    fig.savefig(spec.out_path, dpi=150, **save_kwargs)
    return fig


__all__ = [
    "MAX_PANELS",
    "Y_RANGE",
    "RenderError",
    "MissingColumnError",
    "EmptyTableError",
    "FigureSpec",
    "load_table",
    "render",
]
