"""CLI: render one image per figure from the simulator's reproduce CSVs."""

from __future__ import annotations

import argparse
import os
import sys

from .csvio import CsvFormatError
from .render import FigureSpec, render

# figure name -> (variant labels, panel layout, default observable)
FIGURE_DEFS = {
    "fig1": (("n_c=2", "n_c=3", "n_c=4", "n_c=5"), (2, 2), "GQD"),
    "fig2": (("n_c=2", "n_c=3", "n_c=4", "n_c=5"), (2, 2), "QFI"),
    "fig3": (("N=3", "N=4"), (1, 1), "GQD"),
    "fig4": (("kappa=0.3", "kappa=3"), (1, 1), "GQD"),
    "fig5": (("kappa=0.3", "kappa=3"), (1, 1), "GQD"),
}


def build_spec(figure: str, indir: str, outdir: str, fmt: str,
               observable: str | None = None) -> FigureSpec:
    labels, layout, default_obs = FIGURE_DEFS[figure]
    y_label = (observable or default_obs).upper()
    csvs = tuple(os.path.join(indir, f"{figure}_{v}.csv") for v in range(len(labels)))
    return FigureSpec(input_csvs=csvs, panel_layout=layout, curve_labels=labels,
                      output_path=os.path.join(outdir, f"{figure}.{fmt}"),
                      y_label=y_label)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plot",
                                     description="Render simulator CSV time series to images.")
    parser.add_argument("--figure", required=True, choices=sorted(FIGURE_DEFS))
    parser.add_argument("--indir", required=True, help="directory with <figure>_<variant>.csv")
    parser.add_argument("--outdir", required=True)
    parser.add_argument("--format", default="png", choices=("png", "svg"))
    parser.add_argument("--observable", choices=("gqd", "qfi"),
                        help="override the figure's default y column")
    args = parser.parse_args(argv)

    os.makedirs(args.outdir, exist_ok=True)
    spec = build_spec(args.figure, args.indir, args.outdir, args.format, args.observable)
    try:
        out = render(spec)
    except (CsvFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
