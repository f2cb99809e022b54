"""Buffers, frames and the growth events of a droplet inside a larger rectangle."""

from .detectors import (
    filled_subrectangles,
    find_long_thin_rectangle,
    find_two_big_rectangles,
    occur_disjointly_filled,
)
from .frames import (
    Frame,
    FrameSpec,
    buffer_rect,
    buffers,
    frame,
    frame_mask,
    inner_mask,
    norm,
    xy_counts,
)
from .growth import Criticality, criticality, event_d1, event_d2, fills_from

__all__ = [
    "Criticality",
    "Frame",
    "FrameSpec",
    "buffer_rect",
    "buffers",
    "criticality",
    "event_d1",
    "event_d2",
    "filled_subrectangles",
    "fills_from",
    "find_long_thin_rectangle",
    "find_two_big_rectangles",
    "frame",
    "frame_mask",
    "inner_mask",
    "norm",
    "occur_disjointly_filled",
    "xy_counts",
]
