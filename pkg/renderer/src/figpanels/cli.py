"""Command-line wrapper around the renderer.

    figpanels --csv fig2.csv --panel-by nu_over_lambda --curve-by F_label \
              --y F --out fig2.png

Exit codes: 0 on success, 1 for usage errors, unreadable input and
unrenderable CSV content.
"""

from __future__ import annotations

import argparse
import sys

import matplotlib.pyplot as plt

from .render import FigureSpec, RenderError, render

EXIT_OK = 0
EXIT_USAGE = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A002 - argparse signature
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="figpanels", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--panel-by", required=True, help="column that selects the subplot")
    parser.add_argument("--curve-by", required=True, help="column that selects the line")
    parser.add_argument("--y", required=True, help="column plotted on the y axis")
    parser.add_argument("--x", default="t", help="column plotted on the x axis (default t)")
    parser.add_argument("--out", required=True, help="output image path (.png, .svg, .pdf)")
    parser.add_argument("--x-label", default=None, help="x axis label (default: column name)")
    parser.add_argument("--y-label", default=None, help="y axis label (default: column name)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        spec = FigureSpec(
            csv_path=args.csv,
            panel_by=args.panel_by,
            curve_by=args.curve_by,
            y_column=args.y,
            out_path=args.out,
            x_column=args.x,
            x_label=args.x_label,
            y_label=args.y_label,
        )
        fig = render(spec)
    except (RenderError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    n_panels = len(fig.axes)
    plt.close(fig)
    print(f"wrote {args.out} ({n_panels} panels)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
