"""Command-line entry point:

    figures --in PATH --out PATH [--classical-bound] [--xlim A B] [--ylim A B]

Exit codes: 0 success, 2 bad input (usage, parse, or too little data),
3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .figure import DEFAULT_XLIM, DEFAULT_YLIM, CsvFormatError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Plot the CHSH statistic S against the acceleration ratio "
        "a/(|k|c) from a sweep CSV.",
    )
    parser.add_argument("--in", dest="input_csv", type=Path, required=True, help="sweep CSV path")
    parser.add_argument("--out", dest="output_image", type=Path, required=True,
                        help="image path (.png or .svg; extensionless defaults to .svg)")
    parser.add_argument("--classical-bound", action="store_true",
                        help="draw a horizontal reference at S = 2")
    parser.add_argument("--xlim", nargs=2, type=float, metavar=("A", "B"), default=DEFAULT_XLIM)
    parser.add_argument("--ylim", nargs=2, type=float, metavar=("A", "B"), default=DEFAULT_YLIM)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.input_csv,
        output_image=args.output_image,
        classical_bound=args.classical_bound,
        xlim=tuple(args.xlim),
        ylim=tuple(args.ylim),
    )
    try:
        rendered = render(spec)
    except (CsvFormatError, ValueError) as exc:
        print(f"figures: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"figures: {exc}", file=sys.stderr)
        return 3
    print(rendered)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
