"""Double gaps and crossing predicates."""

from enum import Enum

import numpy as np

from ..lattice import Config, Direction, Rect


class Orientation(Enum):
    """Which lines a double gap is made of."""

    VERTICAL = "vertical"  # two adjacent empty columns
    HORIZONTAL = "horizontal"  # two adjacent empty rows


def _occupied_lines(config: Config, rect: Rect, orientation: Orientation) -> np.ndarray:
    window = config.window(rect)
    return window.any(axis=1 if orientation is Orientation.VERTICAL else 0)


def double_gap(config: Config, rect: Rect, orientation: Orientation) -> int | None:
    """First position of a double gap of A in R.

    For a vertical double gap this is the smallest x with columns x and x+1
    of R both empty; rectangles of width 1 have no adjacent pair and return
    None. The horizontal case scans rows the same way.
    """
    empty = ~_occupied_lines(config, rect, orientation)
    hits = np.flatnonzero(empty[:-1] & empty[1:])
    if hits.size == 0:
        return None
    start = rect.x_lo if orientation is Orientation.VERTICAL else rect.y_lo
    return start + int(hits[0])


def crossed(config: Config, rect: Rect, direction: Direction) -> bool:
    """Whether A crosses R travelling in ``direction``.

    ``Direction.EAST`` is the left-to-right crossing: no vertical double gap
    and the rightmost column meets A. The other three are symmetric.
    """
    orientation = Orientation.VERTICAL if direction.is_horizontal else Orientation.HORIZONTAL
    occupied = _occupied_lines(config, rect, orientation)
    if double_gap(config, rect, orientation) is not None:
        return False
    far_line = occupied[-1] if direction in (Direction.EAST, Direction.NORTH) else occupied[0]
    return bool(far_line)
