"""Bootstrap dynamics: closure, double gaps, crossings and the rectangles process."""

from .automaton import (
    close_grid,
    closure,
    closure_within,
    is_internally_filled,
    naive_closure,
    neighbour_counts,
    percolates,
    step,
)
from .gaps import Orientation, crossed, double_gap
from .rectangles import (
    MergeNode,
    SpanSplit,
    al_witness,
    disjoint_span_split,
    filled_rectangles_in_history,
    minimal_percolating_subset,
    rectangles_process,
    span_split_violations,
)

__all__ = [
    "MergeNode",
    "Orientation",
    "SpanSplit",
    "al_witness",
    "close_grid",
    "closure",
    "closure_within",
    "crossed",
    "disjoint_span_split",
    "double_gap",
    "filled_rectangles_in_history",
    "is_internally_filled",
    "minimal_percolating_subset",
    "naive_closure",
    "neighbour_counts",
    "percolates",
    "rectangles_process",
    "span_split_violations",
    "step",
]
