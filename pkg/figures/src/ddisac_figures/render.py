"""Turns a validated figure spec plus artifact files into an image.

Rendering is a pure function of (spec, file contents): inputs are never
modified, all series are loaded and checked before a figure object is
created, and the output file is only written once drawing succeeded, so
a failing run leaves no image behind.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from matplotlib.figure import Figure

from .schemas import CSV_SCHEMAS
from .spec import FigureSpec, SeriesSpec, SpecError


class DataError(RuntimeError):
    """An input artifact is missing, malformed, or empty."""


@dataclass(frozen=True)
class RenderResult:
    """Where the image went and what the axes ended up covering."""

    path: Path
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    y2_range: tuple[float, float] | None
    points: dict[str, int]


def _read_csv(path: Path) -> tuple[str, list[dict[str, str]]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise DataError(f"{path} is empty")
            for name, schema in CSV_SCHEMAS.items():
                if tuple(header) == schema:
                    rows = [dict(zip(header, row)) for row in reader if row]
                    return name, rows
            raise DataError(
                f"{path} header {header!r} matches no known artifact schema"
            )
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _read_json(path: Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DataError(f"{path}: top level must be an object")
    return doc


def _matches(row: dict[str, str], where: dict) -> bool:
    for column, wanted in where.items():
        cell = row.get(column, "")
        if isinstance(wanted, (int, float)):
            try:
                if float(cell) != float(wanted):
                    return False
            except ValueError:
                return False
        elif cell != str(wanted):
            return False
    return True


def _numeric(cell: str) -> float:
    value = float(cell)  # ValueError propagates with context below
    if not math.isfinite(value):
        raise ValueError(cell)
    return value


def _pairs(
    series: SeriesSpec, x_column: str, path: Path
) -> list[tuple[float, float]]:
    """Row-wise (x, y) values, silently dropping rows with empty cells."""
    schema, rows = _read_csv(path)
    for column in (x_column, series.y, *series.where):
        if column not in CSV_SCHEMAS[schema]:
            raise DataError(
                f"series {series.label!r}: column {column!r} not in the "
                f"{schema} schema of {path}"
            )
    out = []
    for i, row in enumerate(rows, start=2):
        if not _matches(row, series.where):
            continue
        xc, yc = row[x_column], row[series.y]
        if xc == "" or yc == "":
            continue
        try:
            out.append((_numeric(xc), _numeric(yc)))
        except ValueError:
            raise DataError(
                f"{path}:{i}: non-numeric value in {x_column!r}/{series.y!r}"
            ) from None
    if not out:
        raise DataError(
            f"series {series.label!r} has no data rows after filtering {path}"
        )
    return out


def _line_data(series: SeriesSpec, x_column: str, path: Path):
    pairs = sorted(_pairs(series, x_column, path))
    xs = [x for x, _ in pairs]
    if len(set(xs)) != len(xs):
        raise DataError(
            f"series {series.label!r}: duplicate x values in {path}; "
            "a line series needs one row per x"
        )
    return xs, [y for _, y in pairs]


def _envelope_data(series: SeriesSpec, x_column: str, path: Path):
    groups: dict[float, list[float]] = {}
    for x, y in _pairs(series, x_column, path):
        groups.setdefault(x, []).append(y)
    xs = sorted(groups)
    lows = [min(groups[x]) for x in xs]
    means = [sum(groups[x]) / len(groups[x]) for x in xs]
    highs = [max(groups[x]) for x in xs]
    return xs, lows, means, highs


def _point_data(series: SeriesSpec, path: Path) -> tuple[float, float]:
    doc = _read_json(path)
    corner = doc.get(series.key)
    if not isinstance(corner, dict):
        raise DataError(f"{path} has no {series.key!r} object")
    try:
        return float(corner[series.x]), float(corner[series.y])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(
            f"{path}:{series.key}: cannot read fields {series.x!r}, {series.y!r}"
        ) from exc


def _bars_data(series: SeriesSpec, path: Path) -> list[float]:
    doc = _read_json(path)
    values = []
    for metric in series.metrics:
        if metric not in doc:
            raise DataError(f"{path} is missing report key {metric!r}")
        value = doc[metric]
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise DataError(f"{path}: report key {metric!r} is not finite")
        values.append(float(value))
    return values


def _check_log(label: str, values, scale: str) -> None:
    if scale == "log" and min(values) <= 0.0:
        raise DataError(
            f"series {label!r} has non-positive values on a log axis"
        )


def render(spec: FigureSpec, out: str | Path | None = None) -> RenderResult:
    """Draw one figure and write it to its output path.

    `out` overrides the spec's output path (resolved against the
    current directory instead of the spec file).  Returns the final
    axis ranges so callers can check the data is covered.
    """
    x_column = spec.x.column

    # load every series before any drawing
    loaded: list[tuple[SeriesSpec, str, object]] = []
    for series in spec.series:
        path = spec.resolve(series.path)
        effective_x = series.x or x_column
        if series.kind == "line":
            data = _line_data(series, effective_x, path)
        elif series.kind == "envelope":
            data = _envelope_data(series, effective_x, path)
        elif series.kind == "scatter":
            if effective_x is None:
                raise SpecError(
                    f"scatter series {series.label!r} needs x (or figure x.column)"
                )
            pairs = _pairs(series, effective_x, path)
            data = ([x for x, _ in pairs], [y for _, y in pairs])
        elif series.kind == "point":
            data = _point_data(series, path)
        else:
            data = _bars_data(series, path)
        loaded.append((series, series.kind, data))

    fig = Figure(figsize=(6.4, 4.4), constrained_layout=True)
    ax = fig.add_subplot()
    ax2 = None
    points: dict[str, int] = {}

    if spec.kind == "bars":
        metrics = loaded[0][0].metrics
        for series, _, _ in loaded:
            if series.metrics != metrics:
                raise SpecError("all bars series must list the same metrics")
        width = 0.8 / len(loaded)
        for i, (series, _, values) in enumerate(loaded):
            _check_log(series.label, values, spec.y.scale)
            positions = [
                j + (i - (len(loaded) - 1) / 2.0) * width
                for j in range(len(metrics))
            ]
            ax.bar(positions, values, width, label=series.label, **series.style)
            points[series.label] = len(values)
        ax.set_xticks(range(len(metrics)))
        ax.set_xticklabels(metrics)
    else:
        for series, kind, data in loaded:
            target = ax
            if series.axis == "right":
                if ax2 is None:
                    ax2 = ax.twinx()
                target = ax2
            y_scale = spec.y2.scale if series.axis == "right" else spec.y.scale
            if kind == "line":
                xs, ys = data
                _check_log(series.label, ys, y_scale)
                target.plot(xs, ys, label=series.label, **series.style)
                points[series.label] = len(xs)
            elif kind == "envelope":
                xs, lows, means, highs = data
                _check_log(series.label, lows, y_scale)
                style = dict(series.style)
                alpha = style.pop("alpha", 0.25)
                color = style.pop("color", None)
                target.fill_between(
                    xs, lows, highs, alpha=alpha, color=color,
                    label=series.label, linewidth=0,
                )
                target.plot(xs, means, color=color, **style)
                points[series.label] = len(xs)
            elif kind == "scatter":
                xs, ys = data
                _check_log(series.label, ys, y_scale)
                if spec.x.scale == "log":
                    _check_log(series.label, xs, "log")
                style = {"s": 9, "alpha": 0.4, **series.style}
                style["s"] = style.pop("markersize", style["s"])
                target.scatter(xs, ys, label=series.label, **style)
                points[series.label] = len(xs)
            else:  # point
                x, y = data
                style = {
                    "marker": "*", "markersize": 12, "zorder": 5,
                    "linestyle": "none", **series.style,
                }
                target.plot([x], [y], label=series.label, **style)
                points[series.label] = 1

    if spec.kind != "bars":
        # bars use categorical ticks; set_xscale would reset them
        ax.set_xscale(spec.x.scale)
    ax.set_yscale(spec.y.scale)
    ax.set_xlabel(spec.x.label)
    ax.set_ylabel(spec.y.label)
    if spec.x.limits:
        ax.set_xlim(spec.x.limits)
    if spec.y.limits:
        ax.set_ylim(spec.y.limits)
    if ax2 is not None:
        ax2.set_yscale(spec.y2.scale)
        ax2.set_ylabel(spec.y2.label)
        if spec.y2.limits:
            ax2.set_ylim(spec.y2.limits)
    if spec.title:
        ax.set_title(spec.title)
    if spec.kind != "bars":
        ax.grid(True, which="both", alpha=0.3)

    handles, labels = ax.get_legend_handles_labels()
    if ax2 is not None:
        h2, l2 = ax2.get_legend_handles_labels()
        handles, labels = handles + h2, labels + l2
    if labels:
        ax.legend(handles, labels, fontsize=8)

    out_path = Path(out) if out is not None else spec.resolve(spec.output)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=160)
    return RenderResult(
        path=out_path,
        x_range=ax.get_xlim(),
        y_range=ax.get_ylim(),
        y2_range=ax2.get_ylim() if ax2 is not None else None,
        points=points,
    )
