"""Sweep the CHSH statistic over the squeeze parameter; detect the S = 2 crossing.

This is the command-line surface of the package:

    sweep [--mode compat|faithful] [--bob-obs global|reduced]
          [--n-max INT | --epsilon FLOAT] [--theta FLOAT]
          [--r-start FLOAT] [--r-stop FLOAT] [--r-step FLOAT]
          [--level FLOAT] [--format csv|json] [--out PATH] [--find-crossing]

Exit codes: 0 success, 2 usage error, 3 I/O error.  The grid is half-open
[r_start, r_stop) with arange semantics, and output bytes are deterministic:
the same spec always produces the same file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .rindler import TruncationSpec, acceleration_from_squeeze
from .wigner import ExperimentConfig, chsh

SWEEP_MODES = ("compat", "faithful")
CSV_HEADER = "r,a_over_kc,S"
CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class SweepSpec:
    """A grid of squeeze parameters plus the per-point experiment settings."""

    r_start: float = 0.0
    r_stop: float = 2.0
    r_step: float = 0.01
    theta: float = math.pi / 4
    trunc: TruncationSpec = TruncationSpec.fixed(3)
    mode: str = "compat"
    bob_observables: str = "global"
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if self.mode not in SWEEP_MODES:
            raise ValueError(f"unknown sweep mode {self.mode!r}; expected one of {SWEEP_MODES}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.r_start < 0.0:
            raise ValueError(f"r_start must be >= 0, got {self.r_start}")
        if self.r_step <= 0.0:
            raise ValueError(f"r_step must be > 0, got {self.r_step}")
        if not self.r_start < self.r_stop:
            raise ValueError(f"need r_start < r_stop, got [{self.r_start}, {self.r_stop})")
        # Delegate the mode/observable consistency rules to the experiment config.
        ExperimentConfig(
            mode=self.mode,
            theta=self.theta,
            r=self.r_start,
            trunc=self.trunc,
            bob_observables=self.bob_observables,
        )

    def grid(self) -> np.ndarray:
        """Half-open grid [r_start, r_stop) with arange semantics."""
        return np.arange(self.r_start, self.r_stop, self.r_step)


@dataclass(frozen=True)
class SweepRow:
    """One grid point: squeeze parameter, acceleration ratio, CHSH statistic."""

    r: float
    a_over_kc: float
    s: float


@dataclass(frozen=True)
class CrossingReport:
    """Linear-interpolation crossing of the statistic through a level."""

    r_cross: float
    a_cross: float
    bracket: tuple[SweepRow, SweepRow]


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per grid point, in ascending r; deterministic for a given spec."""
    rows = []
    for r in spec.grid():
        r = float(r)
        config = ExperimentConfig(
            mode=spec.mode,
            theta=spec.theta,
            r=r,
            trunc=spec.trunc,
            bob_observables=spec.bob_observables,
        )
        rows.append(SweepRow(r, acceleration_from_squeeze(r), chsh(config).s))
    return rows


def find_crossing(rows: Sequence[SweepRow], level: float = CLASSICAL_BOUND) -> CrossingReport | None:
    """First adjacent pair whose statistics straddle `level`, or None.

    The crossing coordinates come from linear interpolation of (r, S) and
    (a_over_kc, S) within the bracketing pair.
    """
    if len(rows) < 2:
        raise ValueError(f"need at least 2 rows to bracket a crossing, got {len(rows)}")
    for before, after in zip(rows, rows[1:]):
        if after.r <= before.r:
            raise ValueError("rows must be sorted in strictly ascending r")
    for before, after in zip(rows, rows[1:]):
        lo, hi = before.s - level, after.s - level
        if lo == 0.0:
            return CrossingReport(before.r, before.a_over_kc, (before, after))
        if lo * hi < 0.0 or hi == 0.0:
            fraction = (level - before.s) / (after.s - before.s)
            return CrossingReport(
                before.r + fraction * (after.r - before.r),
                before.a_over_kc + fraction * (after.a_over_kc - before.a_over_kc),
                (before, after),
            )
    return None


def _format_csv(rows: Sequence[SweepRow]) -> str:
    # 9 significant digits keeps regression files byte-identical across platforms.
    lines = [CSV_HEADER]
    lines.extend(f"{row.r:.9g},{row.a_over_kc:.9g},{row.s:.9g}" for row in rows)
    return "\n".join(lines) + "\n"


def _spec_document(spec: SweepSpec) -> dict:
    return {
        "r_start": spec.r_start,
        "r_stop": spec.r_stop,
        "r_step": spec.r_step,
        "theta": spec.theta,
        "trunc": {"n_max": spec.trunc.n_max, "epsilon": spec.trunc.epsilon},
        "mode": spec.mode,
        "bob_observables": spec.bob_observables,
        "output_format": spec.output_format,
    }


def _row_document(row: SweepRow) -> dict:
    return {"r": row.r, "a_over_kc": row.a_over_kc, "S": row.s}


def _crossing_document(crossing: CrossingReport | None) -> dict | None:
    if crossing is None:
        return None
    return {
        "r_cross": crossing.r_cross,
        "a_cross": crossing.a_cross,
        "bracket": [_row_document(row) for row in crossing.bracket],
    }


def _format_json(rows: Sequence[SweepRow], crossing: CrossingReport | None, spec: SweepSpec) -> str:
    document = {
        "spec": _spec_document(spec),
        "rows": [_row_document(row) for row in rows],
        "crossing": _crossing_document(crossing),
    }
    return json.dumps(document, indent=2) + "\n"


def write_output(
    rows: Sequence[SweepRow],
    crossing: CrossingReport | None,
    spec: SweepSpec,
    out: str | Path | None = None,
) -> None:
    """Write CSV or JSON to `out`, or to stdout when `out` is None.

    CSV carries the exact header ``r,a_over_kc,S`` and LF line endings; the
    crossing, when given, only appears in the JSON document (CSV stays a pure
    table).  Output is byte-identical across runs with an identical spec.
    """
    if not rows:
        raise ValueError("refusing to write an empty sweep")
    if spec.output_format == "csv":
        text = _format_csv(rows)
    else:
        text = _format_json(rows, crossing, spec)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweep",
        description="Sweep the CHSH statistic S over the squeeze parameter r "
        "and report S versus the acceleration ratio a/(|k|c).",
    )
    parser.add_argument("--mode", choices=SWEEP_MODES, default="compat")
    parser.add_argument(
        "--bob-obs",
        choices=("global", "reduced"),
        default="global",
        help="accelerated-wing observable support (faithful mode only)",
    )
    trunc = parser.add_mutually_exclusive_group()
    trunc.add_argument("--n-max", type=int, default=None, help="fixed ladder dimension (default 3)")
    trunc.add_argument(
        "--epsilon", type=float, default=None, help="derive the ladder dimension from a tail tolerance"
    )
    parser.add_argument("--theta", type=float, default=math.pi / 4)
    parser.add_argument("--r-start", type=float, default=0.0)
    parser.add_argument("--r-stop", type=float, default=2.0)
    parser.add_argument("--r-step", type=float, default=0.01)
    parser.add_argument("--level", type=float, default=CLASSICAL_BOUND, help="crossing level for --find-crossing")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
    parser.add_argument("--find-crossing", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.epsilon is not None:
        trunc = TruncationSpec.adaptive(args.epsilon)
    else:
        trunc = TruncationSpec.fixed(args.n_max if args.n_max is not None else 3)
    try:
        spec = SweepSpec(
            r_start=args.r_start,
            r_stop=args.r_stop,
            r_step=args.r_step,
            theta=args.theta,
            trunc=trunc,
            mode=args.mode,
            bob_observables=args.bob_obs,
            output_format=args.format,
        )
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return 2

    rows = run_sweep(spec)
    crossing = find_crossing(rows, level=args.level) if args.find_crossing else None
    try:
        write_output(rows, crossing, spec, args.out)
    except OSError as exc:
        print(f"sweep: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3

    if args.find_crossing and spec.output_format == "csv":
        if crossing is None:
            print(f"no S = {args.level:g} crossing on the grid", file=sys.stderr)
        else:
            print(
                f"S = {args.level:g} crossing at r = {crossing.r_cross:.6g}, "
                f"a/|k|c = {crossing.a_cross:.6g}",
                file=sys.stderr,
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
