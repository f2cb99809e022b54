"""Buffers and frames of a rectangle S inside a rectangle R.

The buffer of S in R in direction d is the part of R outside S reached by
translating S two steps along d. A selection vector x picks some buffers;
the frame is their union plus the corner sites with two neighbours in it.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..dynamics import neighbour_counts
from ..exceptions import PreconditionError
from ..lattice import Direction, Rect, Site
from ..lattice.configuration import BoolGrid

BUFFER_DEPTH = 2


def _no_selection() -> dict[Direction, int]:
    return {direction: 0 for direction in Direction}


@dataclass(frozen=True)
class FrameSpec:
    """Nested rectangles S in R with a 0/1 buffer selection per direction."""

    s: Rect
    r: Rect
    x: dict[Direction, int] = field(default_factory=_no_selection)

    def __post_init__(self) -> None:
        if not self.r.contains_rect(self.s):
            raise PreconditionError(f"{self.s} is not contained in {self.r}")
        if self.s.short < 2:
            raise PreconditionError(f"Frames need short(S) >= 2, got {self.s}")
        selection = _no_selection()
        for direction, bit in self.x.items():
            if bit not in (0, 1):
                raise PreconditionError(f"Selection for {direction.label} must be 0 or 1")
            selection[direction] = int(bit)
        object.__setattr__(self, "x", selection)

    @classmethod
    def selecting(cls, s: Rect, r: Rect, directions: set[Direction]) -> "FrameSpec":
        return cls(s, r, {direction: int(direction in directions) for direction in Direction})

    @property
    def selected(self) -> frozenset[Direction]:
        return frozenset(d for d, bit in self.x.items() if bit)

    def labels(self) -> dict[str, int]:
        return {direction.label: self.x[direction] for direction in Direction}


class Frame(NamedTuple):
    """The x-frame of S in R and the buffer counts of the selection."""

    square: frozenset[Site]
    blacksquare: frozenset[Site]
    xy_counts: tuple[int, int]


def buffer_rect(s: Rect, r: Rect, direction: Direction) -> Rect | None:
    """B_d(S, R) as a rectangle, or None when it is empty."""
    if direction is Direction.EAST:
        lo, hi = s.x_hi + 1, min(s.x_hi + BUFFER_DEPTH, r.x_hi)
        return Rect(lo, hi, s.y_lo, s.y_hi) if lo <= hi else None
    if direction is Direction.WEST:
        lo, hi = max(s.x_lo - BUFFER_DEPTH, r.x_lo), s.x_lo - 1
        return Rect(lo, hi, s.y_lo, s.y_hi) if lo <= hi else None
    if direction is Direction.NORTH:
        lo, hi = s.y_hi + 1, min(s.y_hi + BUFFER_DEPTH, r.y_hi)
        return Rect(s.x_lo, s.x_hi, lo, hi) if lo <= hi else None
    lo, hi = max(s.y_lo - BUFFER_DEPTH, r.y_lo), s.y_lo - 1
    return Rect(s.x_lo, s.x_hi, lo, hi) if lo <= hi else None


def buffers(
    spec: FrameSpec,
) -> tuple[dict[Direction, frozenset[Site]], frozenset[Direction], int]:
    """Per-direction buffers, the set Z of non-empty ones and z = |Z|."""
    per_direction: dict[Direction, frozenset[Site]] = {}
    for direction in Direction:
        rect = buffer_rect(spec.s, spec.r, direction)
        per_direction[direction] = frozenset(rect.sites()) if rect else frozenset()
    nonempty = frozenset(d for d, sites in per_direction.items() if sites)
    return per_direction, nonempty, len(nonempty)


def xy_counts(
    spec: FrameSpec, nonempty: frozenset[Direction] | None = None
) -> tuple[int, int]:
    """Selected non-empty horizontal (x) and vertical (y) buffers."""
    if nonempty is None:
        nonempty = buffers(spec)[1]
    x = sum(spec.x[d] for d in (Direction.EAST, Direction.WEST) if d in nonempty)
    y = sum(spec.x[d] for d in (Direction.NORTH, Direction.SOUTH) if d in nonempty)
    return x, y


def norm(spec: FrameSpec) -> int:
    """|x|, the number of selected non-empty buffers."""
    x, y = xy_counts(spec)
    return x + y


def _local_mask(r: Rect, rect: Rect) -> tuple[slice, slice]:
    return (
        slice(rect.x_lo - r.x_lo, rect.x_hi - r.x_lo + 1),
        slice(rect.y_lo - r.y_lo, rect.y_hi - r.y_lo + 1),
    )


def inner_mask(spec: FrameSpec) -> BoolGrid:
    """S as a boolean grid over R."""
    mask = np.zeros(spec.r.dims, dtype=bool)
    mask[_local_mask(spec.r, spec.s)] = True
    return mask


def frame_mask(spec: FrameSpec) -> BoolGrid:
    """The frame S_square as a boolean grid over R."""
    selected = np.zeros(spec.r.dims, dtype=bool)
    for direction in spec.selected:
        rect = buffer_rect(spec.s, spec.r, direction)
        if rect is not None:
            selected[_local_mask(spec.r, rect)] = True
    corners = (neighbour_counts(selected) >= 2) & ~inner_mask(spec)
    return selected | corners


def _mask_sites(r: Rect, mask: BoolGrid) -> frozenset[Site]:
    xs, ys = np.nonzero(mask)
    return frozenset(
        (int(x) + r.x_lo, int(y) + r.y_lo) for x, y in zip(xs, ys, strict=True)
    )


def frame(spec: FrameSpec) -> Frame:
    """S_square, S_blacksquare = S + S_square and the (x, y) buffer counts."""
    square = frame_mask(spec)
    return Frame(
        square=_mask_sites(spec.r, square),
        blacksquare=_mask_sites(spec.r, square | inner_mask(spec)),
        xy_counts=xy_counts(spec),
    )
