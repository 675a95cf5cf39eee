"""Figure rendering for delay-Doppler pulse design artifacts."""

from .render import DataError, RenderResult, render
from .spec import AxisSpec, FigureSpec, SeriesSpec, SpecError, load_spec

__all__ = [
    "AxisSpec",
    "DataError",
    "FigureSpec",
    "RenderResult",
    "SeriesSpec",
    "SpecError",
    "load_spec",
    "render",
]
