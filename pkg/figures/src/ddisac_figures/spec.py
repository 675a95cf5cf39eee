"""Figure descriptions and their validation.

A figure spec is a JSON file naming the input artifacts, the axes, and
the series to draw.  Validation here is static: referenced column names
must belong to the declared artifact schemas, kinds and scales must be
known, styling must be of the right type.  Whether the files exist and
actually carry those columns is checked at render time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .schemas import KNOWN_COLUMNS, REPORT_METRICS, TRADEOFF_POINT_KEYS, TRADEOFF_POINTS

FIGURE_KINDS = ("lines", "dual_axis", "bars", "scatter")
SERIES_KINDS = ("line", "envelope", "scatter", "point", "bars")
AXIS_SCALES = ("linear", "log")
OUTPUT_SUFFIXES = (".pdf", ".png", ".svg")

# which series kinds each figure kind accepts
_ALLOWED = {
    "lines": ("line", "envelope"),
    "dual_axis": ("line",),
    "bars": ("bars",),
    "scatter": ("scatter", "point"),
}


class SpecError(ValueError):
    """The figure spec itself is malformed."""


@dataclass(frozen=True)
class AxisSpec:
    label: str
    scale: str = "linear"
    column: str | None = None
    limits: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.scale not in AXIS_SCALES:
            raise SpecError(f"unknown axis scale {self.scale!r}")
        if self.column is not None and self.column not in KNOWN_COLUMNS:
            raise SpecError(f"column {self.column!r} is not in any artifact schema")
        if self.limits is not None and not self.limits[0] < self.limits[1]:
            raise SpecError("axis limits must be increasing")


@dataclass(frozen=True)
class SeriesSpec:
    kind: str
    path: str
    label: str
    x: str | None = None
    y: str | None = None
    key: str | None = None
    metrics: tuple[str, ...] = ()
    axis: str = "left"
    where: dict = field(default_factory=dict)
    style: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in SERIES_KINDS:
            raise SpecError(f"unknown series kind {self.kind!r}")
        if self.axis not in ("left", "right"):
            raise SpecError(f"series axis must be 'left' or 'right', got {self.axis!r}")
        allowed_style = {
            "color", "linestyle", "marker", "alpha",
            "markersize", "linewidth", "zorder",
        }
        unknown_style = set(self.style) - allowed_style
        if unknown_style:
            raise SpecError(f"unknown style keys: {sorted(unknown_style)}")
        for name in (self.x, self.y):
            if name is not None and name not in KNOWN_COLUMNS | TRADEOFF_POINT_KEYS:
                raise SpecError(f"column {name!r} is not in any artifact schema")
        for name in self.where:
            if name not in KNOWN_COLUMNS:
                raise SpecError(f"filter column {name!r} is not in any artifact schema")
        if self.kind == "point":
            if self.key not in TRADEOFF_POINTS:
                raise SpecError(
                    f"point series key must be one of {TRADEOFF_POINTS}, got {self.key!r}"
                )
            if self.x is None or self.y is None:
                raise SpecError("point series needs x and y field names")
        if self.kind == "bars":
            unknown = [m for m in self.metrics if m not in REPORT_METRICS]
            if unknown or not self.metrics:
                raise SpecError(
                    f"bars series needs metrics from {sorted(REPORT_METRICS)}, "
                    f"got {list(self.metrics)}"
                )
        elif self.kind != "point" and self.y is None:
            raise SpecError(f"{self.kind} series needs a y column")


@dataclass(frozen=True)
class FigureSpec:
    """One renderable figure: axes, series, and the output file."""

    figure_id: str
    kind: str
    x: AxisSpec
    y: AxisSpec
    series: tuple[SeriesSpec, ...]
    output: str
    y2: AxisSpec | None = None
    title: str | None = None
    base_dir: Path = Path(".")

    def __post_init__(self) -> None:
        if not self.figure_id:
            raise SpecError("figure_id must be non-empty")
        if self.kind not in FIGURE_KINDS:
            raise SpecError(f"unknown figure kind {self.kind!r}")
        if not self.series:
            raise SpecError("figure needs at least one series")
        if Path(self.output).suffix not in OUTPUT_SUFFIXES:
            raise SpecError(
                f"output must end in one of {OUTPUT_SUFFIXES}, got {self.output!r}"
            )
        for s in self.series:
            if s.kind not in _ALLOWED[self.kind]:
                raise SpecError(
                    f"series kind {s.kind!r} not allowed in a {self.kind!r} figure"
                )
        if self.kind == "dual_axis" and self.y2 is None:
            raise SpecError("dual_axis figure needs a y2 axis")
        if self.kind != "dual_axis" and any(s.axis == "right" for s in self.series):
            raise SpecError("right-axis series only make sense in a dual_axis figure")
        if self.kind in ("lines", "dual_axis") and self.x.column is None:
            raise SpecError(f"{self.kind} figure needs x.column")

    def resolve(self, relative: str) -> Path:
        return (self.base_dir / relative).resolve()


def _axis(doc, context: str) -> AxisSpec:
    if not isinstance(doc, dict):
        raise SpecError(f"{context} axis must be an object")
    limits = doc.get("limits")
    return AxisSpec(
        label=str(doc.get("label", "")),
        scale=str(doc.get("scale", "linear")),
        column=doc.get("column"),
        limits=tuple(float(v) for v in limits) if limits is not None else None,
    )


def _series(doc) -> SeriesSpec:
    if not isinstance(doc, dict):
        raise SpecError("series entries must be objects")
    known = {"kind", "path", "label", "x", "y", "key", "metrics", "axis", "where", "style"}
    unknown = set(doc) - known
    if unknown:
        raise SpecError(f"unknown series fields: {sorted(unknown)}")
    for required in ("kind", "path", "label"):
        if required not in doc:
            raise SpecError(f"series is missing {required!r}")
    where = doc.get("where", {})
    style = doc.get("style", {})
    if not isinstance(where, dict) or not isinstance(style, dict):
        raise SpecError("series 'where' and 'style' must be objects")
    return SeriesSpec(
        kind=str(doc["kind"]),
        path=str(doc["path"]),
        label=str(doc["label"]),
        x=doc.get("x"),
        y=doc.get("y"),
        key=doc.get("key"),
        metrics=tuple(doc.get("metrics", ())),
        axis=str(doc.get("axis", "left")),
        where=dict(where),
        style=dict(style),
    )


def load_spec(path: str | Path) -> FigureSpec:
    """Parse and statically validate a figure spec file.

    Relative input and output paths inside the spec are resolved
    against the spec file's own directory.
    """
    spec_path = Path(path)
    try:
        text = spec_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec {spec_path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{spec_path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError(f"{spec_path}: top level must be an object")

    known = {"figure_id", "kind", "x", "y", "y2", "series", "output", "title"}
    unknown = set(doc) - known
    if unknown:
        raise SpecError(f"{spec_path}: unknown fields {sorted(unknown)}")
    for required in ("figure_id", "kind", "x", "y", "series", "output"):
        if required not in doc:
            raise SpecError(f"{spec_path}: missing field {required!r}")
    if not isinstance(doc["series"], list):
        raise SpecError(f"{spec_path}: series must be a list")

    return FigureSpec(
        figure_id=str(doc["figure_id"]),
        kind=str(doc["kind"]),
        x=_axis(doc["x"], "x"),
        y=_axis(doc["y"], "y"),
        y2=_axis(doc["y2"], "y2") if "y2" in doc else None,
        series=tuple(_series(s) for s in doc["series"]),
        output=str(doc["output"]),
        title=doc.get("title"),
        base_dir=spec_path.resolve().parent,
    )
