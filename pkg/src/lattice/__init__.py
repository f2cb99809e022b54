"""Lattice geometry: rectangles, directions and infected-site configurations."""

from .configuration import Config
from .geometry import (
    Direction,
    Rect,
    RectMetrics,
    Site,
    rect_metrics,
    side_distances,
    span_closure,
)

__all__ = [
    "Config",
    "Direction",
    "Rect",
    "RectMetrics",
    "Site",
    "rect_metrics",
    "side_distances",
    "span_closure",
]
