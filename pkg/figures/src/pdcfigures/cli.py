"""render_figures <figure-id|all> --data <dir> --out <dir>"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .loaders import MissingDataError
from .recipes import RECIPES
from .render import render, render_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="render_figures",
        description="render publication-style figures from pdckit outputs",
    )
    ap.add_argument("figure", choices=sorted(RECIPES) + ["all"])
    ap.add_argument("--data", type=Path, required=True,
                    help="directory with pdckit CSV/JSON outputs")
    ap.add_argument("--out", type=Path, default=Path("figures-out"))
    ap.add_argument("--format", choices=("png", "svg"), default="png")
    args = ap.parse_args(argv)

    try:
        if args.figure == "all":
            written = render_all(args.data, args.out, args.format)
        else:
            written = [render(args.figure, args.data,
                              args.out / f"{args.figure}.{args.format}", args.format)]
    except MissingDataError as exc:
        print(f"render_figures: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
