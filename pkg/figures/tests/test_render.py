import struct

import pytest

from figplots.cli import build_spec, main
from figplots.csvio import CsvFormatError
from figplots.render import FigureSpec, render


def make_csv(path, columns=("gqd",), n=5, scale=1.0):
    lines = ["# seed=42", "# label=test", "t," + ",".join(columns)]
    for k in range(n):
        row = [f"{0.05 * k:.6f}"] + [f"{scale * (k + 1) / n:.6f}" for _ in columns]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def png_dimensions(path):
    with open(path, "rb") as f:
        header = f.read(24)
    assert header[:8] == b"\x89PNG\r\n\x1a\n"
    w, h = struct.unpack(">II", header[16:24])
    return w, h


class TestRender:
    def test_four_panel_png(self, tmp_path):
        csvs = tuple(make_csv(tmp_path / f"v{i}.csv", scale=i + 1) for i in range(4))
        spec = FigureSpec(input_csvs=csvs, panel_layout=(2, 2),
                          curve_labels=("a", "b", "c", "d"),
                          output_path=str(tmp_path / "out.png"), y_label="GQD")
        out = render(spec)
        w, h = png_dimensions(out)
        assert w > 0 and h > 0

    def test_overlay_panel(self, tmp_path):
        csvs = tuple(make_csv(tmp_path / f"v{i}.csv") for i in range(2))
        spec = FigureSpec(input_csvs=csvs, panel_layout=(1, 1),
                          curve_labels=("a", "b"),
                          output_path=str(tmp_path / "out.svg"), y_label="GQD")
        render(spec)
        text = (tmp_path / "out.svg").read_text()
        assert text.lstrip().startswith("<?xml")

    def test_deterministic_dimensions(self, tmp_path):
        csvs = (make_csv(tmp_path / "v.csv"),)
        dims = []
        for name in ("a.png", "b.png"):
            spec = FigureSpec(input_csvs=csvs, panel_layout=(1, 1),
                              curve_labels=("x",),
                              output_path=str(tmp_path / name), y_label="GQD")
            dims.append(png_dimensions(render(spec)))
        assert dims[0] == dims[1]

    def test_wrong_column_lists_available(self, tmp_path):
        csvs = (make_csv(tmp_path / "v.csv", columns=("gqd",)),)
        spec = FigureSpec(input_csvs=csvs, panel_layout=(1, 1), curve_labels=("x",),
                          output_path=str(tmp_path / "o.png"), y_label="QFI")
        with pytest.raises(CsvFormatError, match="gqd"):
            render(spec)

    def test_empty_data_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        path.write_text("# seed=42\nt,gqd\n")
        spec = FigureSpec(input_csvs=(str(path),), panel_layout=(1, 1),
                          curve_labels=("x",),
                          output_path=str(tmp_path / "o.png"), y_label="GQD")
        with pytest.raises(CsvFormatError, match="no data rows"):
            render(spec)

    def test_label_count_mismatch(self, tmp_path):
        with pytest.raises(ValueError):
            FigureSpec(input_csvs=("a.csv",), panel_layout=(1, 1),
                       curve_labels=("x", "y"), output_path="o.png", y_label="GQD")

    def test_inputs_not_mutated(self, tmp_path):
        path = make_csv(tmp_path / "v.csv")
        before = open(path).read()
        spec = FigureSpec(input_csvs=(path,), panel_layout=(1, 1), curve_labels=("x",),
                          output_path=str(tmp_path / "o.png"), y_label="GQD")
        render(spec)
        assert open(path).read() == before


class TestCli:
    def test_fig1_renders(self, tmp_path):
        indir = tmp_path / "in"
        outdir = tmp_path / "out"
        indir.mkdir()
        for v in range(4):
            make_csv(indir / f"fig1_{v}.csv", scale=v + 1)
        rc = main(["--figure", "fig1", "--indir", str(indir), "--outdir", str(outdir)])
        assert rc == 0
        assert png_dimensions(outdir / "fig1.png")

    def test_fig4_two_curves(self, tmp_path):
        indir = tmp_path / "in"
        outdir = tmp_path / "out"
        indir.mkdir()
        for v in range(2):
            make_csv(indir / f"fig4_{v}.csv", columns=("gqd", "qfi"))
        rc = main(["--figure", "fig4", "--indir", str(indir),
                   "--outdir", str(outdir), "--format", "svg"])
        assert rc == 0
        assert (outdir / "fig4.svg").exists()

    def test_observable_override(self, tmp_path):
        indir = tmp_path / "in"
        outdir = tmp_path / "out"
        indir.mkdir()
        for v in range(2):
            make_csv(indir / f"fig5_{v}.csv", columns=("gqd", "qfi"))
        rc = main(["--figure", "fig5", "--indir", str(indir),
                   "--outdir", str(outdir), "--observable", "qfi"])
        assert rc == 0

    def test_missing_csv_nonzero_exit(self, tmp_path, capsys):
        rc = main(["--figure", "fig3", "--indir", str(tmp_path),
                   "--outdir", str(tmp_path)])
        assert rc == 1
        assert "fig3_0.csv" in capsys.readouterr().err

    def test_build_spec_layouts(self, tmp_path):
        spec = build_spec("fig2", "in", "out", "png")
        assert spec.panel_layout == (2, 2) and spec.y_label == "QFI"
        spec = build_spec("fig3", "in", "out", "svg")
        assert spec.panel_layout == (1, 1) and len(spec.input_csvs) == 2
