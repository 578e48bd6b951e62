"""Acceptance test for the renderer against the primary tool's fig2 output.

The CSV is produced by invoking the installed cavitylink command line, not
by importing the primary package, so this file exercises the renderer in
exactly the way a user would chain the two tools.
"""

import subprocess
import sys

import matplotlib.pyplot as plt
import pytest

from figpanels import FigureSpec, MissingColumnError, render


@pytest.fixture(scope="module")
def fig2_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("fig2") / "fig2.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "cavitylink", "sweep", "--preset", "fig2",
         "--out", str(path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return str(path)


@pytest.fixture(autouse=True)
def close_figures():
    yield
    plt.close("all")


def fig2_spec(fig2_csv, out_path):
    return FigureSpec(
        csv_path=fig2_csv,
        panel_by="nu_over_lambda",
        curve_by="F_label",
        y_column="F",
        out_path=out_path,
    )


def test_criterion_10_four_panels_two_curves(fig2_csv, tmp_path):
    out = tmp_path / "fig2.png"
    fig = render(fig2_spec(fig2_csv, str(out)))
    assert len(fig.axes) == 4
    for ax in fig.axes:
        lines = ax.get_lines()
        assert len(lines) == 2
        assert [line.get_label() for line in lines] == ["F1", "F2"]
        assert ax.get_ylim() == (0.0, 1.02)
        for line in lines:
            xs, ys = line.get_xdata(), line.get_ydata()
            assert len(xs) == 201
            assert min(xs) == 0.0
            assert all(0.0 <= y <= 1.0 + 1e-12 for y in ys)
    assert out.stat().st_size > 0


def test_criterion_10_missing_column_is_named(fig2_csv, tmp_path):
    lines = open(fig2_csv, encoding="utf-8").read().splitlines()
    stripped = tmp_path / "no_f.csv"
    stripped.write_text(
        "\n".join(",".join(line.split(",")[:-1]) for line in lines) + "\n",
        encoding="utf-8",
    )
    with pytest.raises(MissingColumnError, match="'F'") as info:
        render(fig2_spec(str(stripped), str(tmp_path / "x.png")))
    assert info.value.column == "F"
