import subprocess
import sys

import matplotlib.pyplot as plt
import pytest
from PIL import Image

from accelbell_figures import (
    EXPECTED_HEADER,
    QUANTUM_MAX_TICK,
    CsvFormatError,
    FigureSpec,
    build_figure,
    read_rows,
    render,
)
from accelbell_figures.cli import main


@pytest.fixture(scope="module")
def default_sweep_csv(tmp_path_factory):
    """Default sweep CSV produced through the upstream CLI, not its library."""
    path = tmp_path_factory.mktemp("sweep") / "default.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "accelbell.sweep", "--out", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return path


@pytest.fixture
def tiny_csv(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text(f"{EXPECTED_HEADER}\n0,0,2.82842712\n0.5,2.1,2.4\n")
    return path


class TestReadRows:
    def test_reads_triples(self, tiny_csv):
        rows = read_rows(tiny_csv)
        assert len(rows) == 2
        assert rows[0] == (0.0, 0.0, 2.82842712)

    def test_header_mismatch(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("radius,a,S\n0,0,1\n")
        with pytest.raises(CsvFormatError) as err:
            read_rows(bad)
        assert err.value.line_number == 1

    def test_malformed_row_reports_line_number(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(f"{EXPECTED_HEADER}\n0,0,1\n0.1,oops,1\n")
        with pytest.raises(CsvFormatError) as err:
            read_rows(bad)
        assert err.value.line_number == 3

    def test_wrong_field_count_reports_line_number(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(f"{EXPECTED_HEADER}\n0,0\n")
        with pytest.raises(CsvFormatError) as err:
            read_rows(bad)
        assert err.value.line_number == 2


class TestBuildFigure:
    def test_point_count_matches_rows(self, default_sweep_csv):
        rows = read_rows(default_sweep_csv)
        fig, ax = build_figure(rows)
        try:
            assert len(ax.lines[0].get_xdata()) == len(rows) == 200
        finally:
            plt.close(fig)

    def test_quantum_max_tick_present(self, tiny_csv):
        fig, ax = build_figure(read_rows(tiny_csv))
        try:
            assert QUANTUM_MAX_TICK in list(ax.get_yticks())
        finally:
            plt.close(fig)

    def test_two_rows_make_a_straight_segment(self, tiny_csv):
        fig, ax = build_figure(read_rows(tiny_csv))
        try:
            assert len(ax.lines[0].get_xdata()) == 2
        finally:
            plt.close(fig)

    def test_classical_bound_line(self, tiny_csv):
        fig, ax = build_figure(read_rows(tiny_csv), classical_bound=True)
        try:
            assert len(ax.lines) == 2
            assert list(ax.lines[1].get_ydata()) == [2.0, 2.0]
        finally:
            plt.close(fig)

    def test_default_sweep_polyline_monotone_decreasing(self, default_sweep_csv):
        rows = read_rows(default_sweep_csv)
        fig, ax = build_figure(rows)
        try:
            ydata = list(ax.lines[0].get_ydata())
        finally:
            plt.close(fig)
        assert all(b <= a + 1e-9 for a, b in zip(ydata, ydata[1:]))


class TestRender:
    def test_renders_png(self, tiny_csv, tmp_path):
        out = render(FigureSpec(tiny_csv, tmp_path / "plot.png"))
        assert out.exists() and out.stat().st_size > 0

    def test_extensionless_defaults_to_svg(self, tiny_csv, tmp_path):
        out = render(FigureSpec(tiny_csv, tmp_path / "plot"))
        assert out.suffix == ".svg"
        assert out.read_text().lstrip().startswith("<?xml")

    def test_unknown_extension_rejected(self, tiny_csv, tmp_path):
        with pytest.raises(ValueError):
            render(FigureSpec(tiny_csv, tmp_path / "plot.pdf"))

    def test_fewer_than_two_rows_rejected(self, tmp_path):
        single = tmp_path / "single.csv"
        single.write_text(f"{EXPECTED_HEADER}\n0,0,2.8\n")
        with pytest.raises(ValueError):
            render(FigureSpec(single, tmp_path / "plot.png"))

    def test_input_untouched_and_dimensions_stable(self, tiny_csv, tmp_path):
        before = tiny_csv.read_bytes()
        first = render(FigureSpec(tiny_csv, tmp_path / "one.png"))
        second = render(FigureSpec(tiny_csv, tmp_path / "two.png"))
        assert tiny_csv.read_bytes() == before
        with Image.open(first) as a, Image.open(second) as b:
            assert a.size == b.size


class TestCli:
    def test_default_sweep_end_to_end(self, default_sweep_csv, tmp_path):
        out = tmp_path / "figure.png"
        code = main(["--in", str(default_sweep_csv), "--out", str(out), "--classical-bound"])
        assert code == 0
        assert out.exists() and out.stat().st_size > 0

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        code = main(["--in", str(bad), "--out", str(tmp_path / "x.png")])
        assert code == 2

    def test_missing_input_exit_code(self, tmp_path):
        code = main(["--in", str(tmp_path / "absent.csv"), "--out", str(tmp_path / "x.png")])
        assert code == 3

    def test_axis_overrides(self, tiny_csv, tmp_path):
        out = tmp_path / "zoom.svg"
        code = main(
            ["--in", str(tiny_csv), "--out", str(out), "--xlim", "0", "10", "--ylim", "0", "3"]
        )
        assert code == 0
        assert out.exists()
