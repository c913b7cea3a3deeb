"""Line plot of the CHSH statistic against the acceleration ratio.

Input is the sweep CSV contract: exact header ``r,a_over_kc,S``, one numeric
row per grid point.  The axis cosmetics (extra y tick at 2.82 near the
quantum maximum 2*sqrt(2), y limits just below/above the physical range,
x limits spanning the default sweep's acceleration span) are pinned so that
renders of the same data stay comparable across runs and machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

EXPECTED_HEADER = "r,a_over_kc,S"
DEFAULT_XLIM = (-1.0, 85.0)
DEFAULT_YLIM = (-0.05, 2.99)
QUANTUM_MAX_TICK = 2.82
CLASSICAL_BOUND = 2.0


class CsvFormatError(ValueError):
    """The CSV input violates the sweep contract; points at the offending line."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class FigureSpec:
    """What to read, where to render, and the axis dressing."""

    input_csv: Path
    output_image: Path
    classical_bound: bool = False
    xlim: tuple[float, float] = DEFAULT_XLIM
    ylim: tuple[float, float] = DEFAULT_YLIM


def read_rows(path: Path | str) -> list[tuple[float, float, float]]:
    """Parse a sweep CSV into (r, a_over_kc, S) triples.

    The header must match ``r,a_over_kc,S`` byte for byte; any malformed row
    raises `CsvFormatError` carrying its 1-based line number.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CsvFormatError(1, "empty file, expected the sweep CSV header")
    if lines[0] != EXPECTED_HEADER:
        raise CsvFormatError(1, f"bad header {lines[0]!r}, expected {EXPECTED_HEADER!r}")
    rows = []
    for line_number, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 3:
            raise CsvFormatError(line_number, f"expected 3 fields, got {len(fields)}")
        try:
            rows.append(tuple(float(field) for field in fields))
        except ValueError:
            raise CsvFormatError(line_number, f"non-numeric field in {line!r}") from None
    return rows


def build_figure(
    rows: list[tuple[float, float, float]],
    classical_bound: bool = False,
    xlim: tuple[float, float] = DEFAULT_XLIM,
    ylim: tuple[float, float] = DEFAULT_YLIM,
):
    """Assemble the figure: S against a/(|k|c), one polyline point per row."""
    fig, ax = plt.subplots()
    ax.plot([row[1] for row in rows], [row[2] for row in rows])
    ax.set_yticks(list(ax.get_yticks()) + [QUANTUM_MAX_TICK])
    ax.set_ylim(*ylim)
    ax.set_xlim(*xlim)
    if classical_bound:
        ax.axhline(CLASSICAL_BOUND, color="gray", linestyle="--", linewidth=1.0)
    ax.set_xlabel("a / |k|c", fontsize=14, labelpad=10)
    ax.set_ylabel("S", fontsize=14, labelpad=10, rotation=0)
    fig.tight_layout()
    return fig, ax


def render(spec: FigureSpec) -> Path:
    """Render the CSV named by `spec` to a PNG or SVG (chosen by extension).

    An extensionless output path defaults to SVG.  Needs at least two data
    rows; the CSV itself is only ever read.
    """
    rows = read_rows(spec.input_csv)
    if len(rows) < 2:
        raise ValueError(f"need at least 2 data rows to draw a line, got {len(rows)}")
    out = Path(spec.output_image)
    if out.suffix == "":
        out = out.with_suffix(".svg")
    if out.suffix not in (".png", ".svg"):
        raise ValueError(f"unsupported image format {out.suffix!r}, use .png or .svg")
    fig, _ = build_figure(
        rows, classical_bound=spec.classical_bound, xlim=spec.xlim, ylim=spec.ylim
    )
    try:
        fig.savefig(out)
    finally:
        plt.close(fig)
    return out
