"""Rendering behaviour: data loading, failure modes, output placement.

All inputs are synthetic files written by the conftest fixtures; the
assertions are about schema checks, axis coverage, and the rule that a
failed render must not leave an image behind.
"""

import json

import pytest

from ddisac_figures import (
    AxisSpec,
    DataError,
    FigureSpec,
    SeriesSpec,
    render,
)


def lines_spec(tmp_path, sweep_csv, crlb_csv, **series_overrides):
    envelope = {
        "kind": "envelope",
        "path": sweep_csv.name,
        "y": "crlb_tau_s2",
        "label": "family",
        "where": {"status": "ok"},
        "style": {"color": "#4c72b0", "alpha": 0.3},
    }
    envelope.update(series_overrides)
    return FigureSpec(
        figure_id="demo",
        kind="lines",
        output="out/demo.png",
        x=AxisSpec(label="SNR (dB)", column="snr_db"),
        y=AxisSpec(label="delay bound", scale="log"),
        series=(
            SeriesSpec(**envelope),
            SeriesSpec(
                kind="line", path=crlb_csv.name, y="crlb_tau_s2",
                label="fixed", style={"linestyle": "--", "marker": "o"},
            ),
        ),
        base_dir=tmp_path,
    )


def test_lines_figure_renders(tmp_path, sweep_csv, crlb_csv):
    spec = lines_spec(tmp_path, sweep_csv, crlb_csv)
    result = render(spec)
    assert result.path == tmp_path / "out" / "demo.png"
    assert result.path.stat().st_size > 0
    assert result.points == {"family": 3, "fixed": 3}
    # axes must cover the data: snr 0..20, bounds down to 1e-11
    assert result.x_range[0] <= 0 and result.x_range[1] >= 20
    assert result.y_range[0] <= 1e-11 and result.y_range[1] >= 3e-10


def test_failed_render_writes_no_image(tmp_path, sweep_csv, crlb_csv):
    spec = lines_spec(
        tmp_path, sweep_csv, crlb_csv, where={"status": "no-such-status"},
    )
    with pytest.raises(DataError, match="no data rows"):
        render(spec)
    assert not (tmp_path / "out" / "demo.png").exists()


def test_foreign_header_rejected(tmp_path, crlb_csv, make_csv):
    bad = make_csv("bad.csv", ["a", "b", "c"], [[1, 2, 3]])
    spec = lines_spec(tmp_path, bad, crlb_csv)
    with pytest.raises(DataError, match="matches no known artifact schema"):
        render(spec)


def test_column_absent_from_schema(tmp_path, crlb_csv):
    # capacity_stderr exists in the sweep schema but not in crlb files
    spec = lines_spec(tmp_path, crlb_csv, crlb_csv, y="capacity_stderr",
                      where={})
    with pytest.raises(DataError, match="not in the crlb schema"):
        render(spec)


def test_duplicate_x_rejected_for_line(tmp_path, sweep_csv, make_csv):
    rows = [["", "", "", 10, 1e-9, 1e3, 0.0, 1.0, "discrete_cell"]] * 2
    dup = make_csv("dup.csv", "crlb", rows)
    spec = lines_spec(tmp_path, sweep_csv, dup)
    with pytest.raises(DataError, match="duplicate x"):
        render(spec)


def test_non_numeric_cell_rejected(tmp_path, sweep_csv, make_csv):
    rows = [["", "", "", 10, "NaN", 1e3, 0.0, 1.0, "discrete_cell"]]
    bad = make_csv("nan.csv", "crlb", rows)
    spec = lines_spec(tmp_path, sweep_csv, bad)
    with pytest.raises(DataError, match="non-numeric"):
        render(spec)


def test_log_axis_rejects_non_positive(tmp_path, sweep_csv, make_csv):
    rows = [
        ["", "", "", 0, -1e-9, 1e3, 0.0, 1.0, "discrete_cell"],
        ["", "", "", 10, 1e-9, 1e3, 0.0, 1.0, "discrete_cell"],
    ]
    neg = make_csv("neg.csv", "crlb", rows)
    spec = lines_spec(tmp_path, sweep_csv, neg)
    with pytest.raises(DataError, match="non-positive values on a log axis"):
        render(spec)


def test_rows_with_empty_cells_are_skipped(tmp_path, sweep_csv, crlb_csv):
    # sweep fixture carries one failed row with empty numeric cells
    spec = lines_spec(tmp_path, sweep_csv, crlb_csv, where={})
    result = render(spec)
    assert result.points["family"] == 3


def test_capacity_schema_accepted(tmp_path, capacity_csv):
    spec = FigureSpec(
        figure_id="cap",
        kind="lines",
        output="cap.png",
        x=AxisSpec(label="SNR (dB)", column="snr_db"),
        y=AxisSpec(label="capacity"),
        series=(
            SeriesSpec(kind="line", path=capacity_csv.name,
                       y="capacity_mean", label="fixed pulse"),
        ),
        base_dir=tmp_path,
    )
    result = render(spec)
    assert result.points == {"fixed pulse": 3}
    assert result.y_range[1] >= 40.0


def test_dual_axis_renders(tmp_path, beta_crlb_csv):
    spec = FigureSpec(
        figure_id="dual",
        kind="dual_axis",
        output="dual.pdf",
        x=AxisSpec(label="coupling", column="beta_c"),
        y=AxisSpec(label="delay bound", scale="log"),
        y2=AxisSpec(label="doppler bound", scale="log"),
        series=(
            SeriesSpec(kind="line", path=beta_crlb_csv.name,
                       y="crlb_tau_s2", label="delay"),
            SeriesSpec(kind="line", path=beta_crlb_csv.name,
                       y="crlb_nu_hz2", label="doppler", axis="right"),
        ),
        base_dir=tmp_path,
    )
    result = render(spec)
    assert result.path.stat().st_size > 0
    assert result.y2_range is not None
    assert result.y2_range[0] <= 1e4 / 17 and result.y2_range[1] >= 1e4


def test_bars_figure_renders(tmp_path, report_json):
    a = report_json("a.json", ipr=7.1, cond=4e12, cap=105.0)
    b = report_json("b.json", ipr=1.7e-4, cond=8.3, cap=315.0)
    spec = FigureSpec(
        figure_id="bars",
        kind="bars",
        output="bars.svg",
        x=AxisSpec(label="metric"),
        y=AxisSpec(label="value", scale="log"),
        series=(
            SeriesSpec(kind="bars", path=a.name, label="untuned",
                       metrics=("ipr", "condition_number", "jensen_capacity_bits")),
            SeriesSpec(kind="bars", path=b.name, label="tuned",
                       metrics=("ipr", "condition_number", "jensen_capacity_bits")),
        ),
        base_dir=tmp_path,
    )
    result = render(spec)
    assert result.path.stat().st_size > 0
    assert result.points == {"untuned": 3, "tuned": 3}


def test_bars_missing_metric_fails(tmp_path, report_json):
    path = report_json("a.json")
    doc = json.loads(path.read_text(encoding="utf-8"))
    del doc["ipr"]
    path.write_text(json.dumps(doc), encoding="utf-8")
    spec = FigureSpec(
        figure_id="bars",
        kind="bars",
        output="bars.pdf",
        x=AxisSpec(label="metric"),
        y=AxisSpec(label="value"),
        series=(
            SeriesSpec(kind="bars", path=path.name, label="untuned",
                       metrics=("ipr",)),
        ),
        base_dir=tmp_path,
    )
    with pytest.raises(DataError, match="missing report key"):
        render(spec)


def scatter_spec(tmp_path, sweep_csv, tradeoff_json):
    return FigureSpec(
        figure_id="cloud",
        kind="scatter",
        output="cloud.png",
        x=AxisSpec(label="delay bound", column="crlb_tau_s2", scale="log"),
        y=AxisSpec(label="capacity"),
        series=(
            SeriesSpec(kind="scatter", path=sweep_csv.name,
                       y="capacity_mean", label="cloud",
                       where={"snr_db": 20, "status": "ok"}),
            SeriesSpec(kind="point", path=tradeoff_json.name,
                       key="comm_optimal", x="crlb_tau_s2",
                       y="capacity_mean", label="capacity corner"),
            SeriesSpec(kind="point", path=tradeoff_json.name,
                       key="sensing_optimal", x="crlb_tau_s2",
                       y="capacity_mean", label="sensing corner"),
        ),
        base_dir=tmp_path,
    )


def test_scatter_with_corner_points(tmp_path, sweep_csv, tradeoff_json):
    result = render(scatter_spec(tmp_path, sweep_csv, tradeoff_json))
    assert result.points == {
        "cloud": 3, "capacity corner": 1, "sensing corner": 1,
    }
    # corners sit inside the drawn ranges
    assert result.x_range[0] <= 1e-12 and result.x_range[1] >= 5e-12
    assert result.y_range[1] >= 110.0


def test_missing_corner_key_fails(tmp_path, sweep_csv, tradeoff_json):
    doc = json.loads(tradeoff_json.read_text(encoding="utf-8"))
    del doc["sensing_optimal"]
    tradeoff_json.write_text(json.dumps(doc), encoding="utf-8")
    spec = scatter_spec(tmp_path, sweep_csv, tradeoff_json)
    with pytest.raises(DataError, match="has no 'sensing_optimal'"):
        render(spec)
    assert not (tmp_path / "cloud.png").exists()


def test_render_leaves_inputs_unchanged(tmp_path, sweep_csv, crlb_csv):
    before = sweep_csv.read_bytes(), crlb_csv.read_bytes()
    render(lines_spec(tmp_path, sweep_csv, crlb_csv))
    assert (sweep_csv.read_bytes(), crlb_csv.read_bytes()) == before


def test_out_override(tmp_path, sweep_csv, crlb_csv):
    spec = lines_spec(tmp_path, sweep_csv, crlb_csv)
    other = tmp_path / "elsewhere" / "demo.pdf"
    result = render(spec, out=other)
    assert result.path == other
    assert other.stat().st_size > 0
    assert not (tmp_path / "out" / "demo.png").exists()


def test_axis_limits_applied(tmp_path, sweep_csv, crlb_csv):
    base = lines_spec(tmp_path, sweep_csv, crlb_csv)
    spec = FigureSpec(
        figure_id=base.figure_id, kind=base.kind, output=base.output,
        x=AxisSpec(label="SNR (dB)", column="snr_db", limits=(-5.0, 30.0)),
        y=base.y, series=base.series, base_dir=tmp_path,
    )
    result = render(spec)
    assert result.x_range == (-5.0, 30.0)
