"""Figure regeneration for accelbell sweep output, consumed via its CSV contract."""

from .figure import (
    CLASSICAL_BOUND,
    DEFAULT_XLIM,
    DEFAULT_YLIM,
    EXPECTED_HEADER,
    QUANTUM_MAX_TICK,
    CsvFormatError,
    FigureSpec,
    build_figure,
    read_rows,
    render,
)

__all__ = [
    "CLASSICAL_BOUND",
    "CsvFormatError",
    "DEFAULT_XLIM",
    "DEFAULT_YLIM",
    "EXPECTED_HEADER",
    "FigureSpec",
    "QUANTUM_MAX_TICK",
    "build_figure",
    "read_rows",
    "render",
]
