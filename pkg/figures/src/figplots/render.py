"""Multi-panel rendering of simulator time series."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .csvio import CsvFormatError, read_timeseries  # noqa: E402

FIGSIZE_PER_PANEL = (5.0, 3.4)
DPI = 120


@dataclass(frozen=True)
class FigureSpec:
    input_csvs: tuple[str, ...]
    panel_layout: tuple[int, int]   # rows x cols
    curve_labels: tuple[str, ...]
    output_path: str
    y_label: str                    # "GQD" or "QFI"

    def __post_init__(self):
        if len(self.curve_labels) != len(self.input_csvs):
            raise ValueError(
                f"{len(self.curve_labels)} labels for {len(self.input_csvs)} CSVs")
        if self.y_label not in ("GQD", "QFI"):
            raise ValueError(f"y_label must be GQD or QFI, got {self.y_label!r}")


def render(spec: FigureSpec) -> str:
    """Render one image from the spec; returns the output path.

    With as many panels as input CSVs, each series gets its own panel;
    with a single panel, all series are overlaid.
    """
    column = spec.y_label.lower()
    series = []
    for path in spec.input_csvs:
        ts = read_timeseries(path)
        if column not in ts.columns:
            raise CsvFormatError(
                f"{ts.path}: no column {column!r}; available: {', '.join(ts.columns[1:])}")
        series.append(ts)

    rows, cols = spec.panel_layout
    n_panels = rows * cols
    if n_panels not in (1, len(series)):
        raise ValueError(f"panel layout {rows}x{cols} fits neither 1 nor {len(series)} panels")

    fig, axes = plt.subplots(rows, cols, squeeze=False,
                             figsize=(FIGSIZE_PER_PANEL[0] * cols,
                                      FIGSIZE_PER_PANEL[1] * rows))
    flat = [ax for row in axes for ax in row]
    for i, (ts, label) in enumerate(zip(series, spec.curve_labels)):
        ax = flat[0] if n_panels == 1 else flat[i]
        ax.plot(ts.data["t"], ts.data[column], label=label, linewidth=1.0)
    for ax in flat:
        ax.set_xlabel("scaled time")
        ax.set_ylabel(spec.y_label)
        ax.legend(fontsize="small")
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=DPI)
    plt.close(fig)
    return spec.output_path
