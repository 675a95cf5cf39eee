"""Static validation of figure spec files."""

import pytest

from ddisac_figures import FigureSpec, SpecError, load_spec
from ddisac_figures.spec import AxisSpec, SeriesSpec


def lines_doc(**overrides):
    doc = {
        "figure_id": "demo",
        "kind": "lines",
        "output": "demo.pdf",
        "x": {"column": "snr_db", "label": "SNR (dB)"},
        "y": {"label": "bound", "scale": "log"},
        "series": [
            {
                "kind": "envelope",
                "path": "sweep.csv",
                "y": "crlb_tau_s2",
                "label": "family",
                "where": {"status": "ok"},
            },
            {
                "kind": "line",
                "path": "crlb.csv",
                "y": "crlb_tau_s2",
                "label": "fixed",
                "style": {"color": "#c44e52", "linestyle": "--"},
            },
        ],
    }
    doc.update(overrides)
    return doc


def test_valid_spec_loads(spec_file):
    path = spec_file(lines_doc())
    spec = load_spec(path)
    assert spec.figure_id == "demo"
    assert spec.kind == "lines"
    assert spec.x.column == "snr_db"
    assert spec.y.scale == "log"
    assert len(spec.series) == 2
    assert spec.series[0].where == {"status": "ok"}
    # relative paths resolve against the spec file's directory
    assert spec.resolve("sweep.csv") == path.parent / "sweep.csv"


def test_unknown_top_level_field(spec_file):
    with pytest.raises(SpecError, match="unknown fields"):
        load_spec(spec_file(lines_doc(watermark=True)))


def test_missing_required_field(spec_file):
    doc = lines_doc()
    del doc["output"]
    with pytest.raises(SpecError, match="missing field 'output'"):
        load_spec(spec_file(doc))


def test_unknown_figure_kind(spec_file):
    with pytest.raises(SpecError, match="unknown figure kind"):
        load_spec(spec_file(lines_doc(kind="heatmap")))


def test_unknown_series_kind(spec_file):
    doc = lines_doc()
    doc["series"][0]["kind"] = "ribbon"
    with pytest.raises(SpecError, match="unknown series kind"):
        load_spec(spec_file(doc))


def test_unknown_series_field(spec_file):
    doc = lines_doc()
    doc["series"][0]["smoothing"] = 3
    with pytest.raises(SpecError, match="unknown series fields"):
        load_spec(spec_file(doc))


def test_unknown_axis_scale(spec_file):
    doc = lines_doc()
    doc["y"]["scale"] = "symlog"
    with pytest.raises(SpecError, match="unknown axis scale"):
        load_spec(spec_file(doc))


def test_unknown_column_rejected(spec_file):
    doc = lines_doc()
    doc["series"][0]["y"] = "banana"
    with pytest.raises(SpecError, match="not in any artifact schema"):
        load_spec(spec_file(doc))


def test_unknown_filter_column_rejected(spec_file):
    doc = lines_doc()
    doc["series"][0]["where"] = {"stats": "ok"}
    with pytest.raises(SpecError, match="filter column"):
        load_spec(spec_file(doc))


def test_style_typo_rejected(spec_file):
    doc = lines_doc()
    doc["series"][1]["style"] = {"colour": "red"}
    with pytest.raises(SpecError, match="unknown style keys"):
        load_spec(spec_file(doc))


def test_series_kind_must_match_figure_kind(spec_file):
    doc = lines_doc()
    doc["series"][0]["kind"] = "scatter"
    with pytest.raises(SpecError, match="not allowed"):
        load_spec(spec_file(doc))


def test_output_suffix_checked(spec_file):
    with pytest.raises(SpecError, match="output must end in"):
        load_spec(spec_file(lines_doc(output="demo.txt")))


def test_lines_figure_needs_x_column(spec_file):
    doc = lines_doc()
    doc["x"] = {"label": "SNR (dB)"}
    with pytest.raises(SpecError, match="needs x.column"):
        load_spec(spec_file(doc))


def test_dual_axis_needs_y2():
    series = (
        SeriesSpec(kind="line", path="a.csv", y="crlb_tau_s2", label="a"),
    )
    with pytest.raises(SpecError, match="needs a y2 axis"):
        FigureSpec(
            figure_id="d", kind="dual_axis", output="d.pdf",
            x=AxisSpec(label="b", column="beta_c"),
            y=AxisSpec(label="l"), series=series,
        )


def test_right_axis_requires_dual(spec_file):
    doc = lines_doc()
    doc["series"][1]["axis"] = "right"
    with pytest.raises(SpecError, match="right-axis series"):
        load_spec(spec_file(doc))


def test_point_series_needs_corner_key(spec_file):
    doc = {
        "figure_id": "t",
        "kind": "scatter",
        "output": "t.png",
        "x": {"column": "crlb_tau_s2", "label": "bound", "scale": "log"},
        "y": {"label": "capacity"},
        "series": [
            {
                "kind": "point",
                "path": "tradeoff.json",
                "key": "best_ever",
                "x": "crlb_tau_s2",
                "y": "capacity_mean",
                "label": "corner",
            }
        ],
    }
    with pytest.raises(SpecError, match="point series key"):
        load_spec(spec_file(doc))


def test_bars_metrics_validated(spec_file):
    doc = {
        "figure_id": "b",
        "kind": "bars",
        "output": "b.pdf",
        "x": {"label": "metric"},
        "y": {"label": "value", "scale": "log"},
        "series": [
            {
                "kind": "bars",
                "path": "report.json",
                "metrics": ["ipr", "trace"],
                "label": "pulse",
            }
        ],
    }
    with pytest.raises(SpecError, match="bars series needs metrics"):
        load_spec(spec_file(doc))


def test_axis_limits_must_increase():
    with pytest.raises(SpecError, match="increasing"):
        AxisSpec(label="x", limits=(2.0, 1.0))


def test_non_json_spec_rejected(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpecError, match="not valid JSON"):
        load_spec(path)


def test_missing_spec_file_rejected(tmp_path):
    with pytest.raises(SpecError, match="cannot read spec"):
        load_spec(tmp_path / "absent.json")
