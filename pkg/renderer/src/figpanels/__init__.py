"""Multi-panel figure renderer for fidelity sweep CSV files."""

from .render import (
    MAX_PANELS,
    Y_RANGE,
    EmptyTableError,
    FigureSpec,
    MissingColumnError,
    RenderError,
    load_table,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_PANELS",
    "Y_RANGE",
    "EmptyTableError",
    "FigureSpec",
    "MissingColumnError",
    "RenderError",
    "load_table",
    "render",
    "__version__",
]
