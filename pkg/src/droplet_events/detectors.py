"""Detectors for the rare configurations excluded before the hierarchy count.

These scan every sub-rectangle of R in the relevant size range, so they are
meant for desk-scale rectangles.
"""

import itertools
import logging
import math
from collections.abc import Iterator

import numpy as np

from ..dynamics import close_grid, is_internally_filled
from ..exceptions import PreconditionError
from ..lattice import Config, Rect
from ..numerics.constants import Constants

logger = logging.getLogger(__name__)

MAX_OVERLAP_SITES = 20


def _boundary_occupied(window: np.ndarray) -> bool:
    # a filled rectangle has an infected site on each of its four sides
    return bool(
        window[0, :].any() and window[-1, :].any() and window[:, 0].any() and window[:, -1].any()
    )


def _subrectangles(
    outer: Rect, short_range: tuple[int, int], long_min: int
) -> Iterator[Rect]:
    lo_short, hi_short = short_range
    for width in range(1, outer.width + 1):
        for height in range(1, outer.height + 1):
            short, long = min(width, height), max(width, height)
            if not lo_short <= short <= hi_short or long < long_min:
                continue
            for x_lo in range(outer.x_lo, outer.x_hi - width + 2):
                for y_lo in range(outer.y_lo, outer.y_hi - height + 2):
                    yield Rect.from_dims(width, height, x_lo, y_lo)


def filled_subrectangles(
    config: Config, outer: Rect, short_range: tuple[int, int], long_min: int
) -> Iterator[Rect]:
    """Internally filled S in R with short(S) in ``short_range`` and long(S) >= ``long_min``."""
    for rect in _subrectangles(outer, short_range, long_min):
        window = config.window(rect)
        if _boundary_occupied(window) and is_internally_filled(config, rect):
            yield rect


def find_long_thin_rectangle(
    config: Config, outer: Rect, constants: Constants
) -> Rect | None:
    """An internally filled long thin S in R, if one exists.

    Long thin means short <= B/q with long >= 3e^{2B}/q, or short <= 1/q
    with long >= B/(2q).
    """
    q = constants.q
    shapes = (
        (math.floor(constants.B / q), math.ceil(3.0 * math.exp(2.0 * constants.B) / q)),
        (math.floor(1.0 / q), math.ceil(constants.B / (2.0 * q))),
    )
    for short_cap, long_min in shapes:
        if long_min > outer.long or short_cap < 1:
            continue
        found = next(filled_subrectangles(config, outer, (1, short_cap), long_min), None)
        if found is not None:
            logger.debug(f"Long thin filled rectangle {found} inside {outer}")
            return found
    return None


def find_two_big_rectangles(
    config: Config, outer: Rect, constants: Constants
) -> tuple[Rect, Rect] | None:
    """Two disjointly filled rectangles of short side >= B/q, if present.

    Detects the strong form [A in (S1 - S2)] = S1 and [A in (S2 - S1)] = S2,
    which implies disjoint occurrence.
    """
    short_min = math.ceil(constants.B / constants.q)
    if short_min > outer.short:
        return None
    big = list(filled_subrectangles(config, outer, (short_min, outer.long), short_min))
    for first, second in itertools.combinations(big, 2):
        if _fills_without(config, first, second) and _fills_without(config, second, first):
            return first, second
    return None


def _fills_without(config: Config, rect: Rect, other: Rect) -> bool:
    grid = config.window(rect).copy()
    overlap = rect.intersection(other)
    if overlap is not None:
        grid[
            overlap.x_lo - rect.x_lo : overlap.x_hi - rect.x_lo + 1,
            overlap.y_lo - rect.y_lo : overlap.y_hi - rect.y_lo + 1,
        ] = False
    return bool(close_grid(grid).all())


def occur_disjointly_filled(config: Config, first: Rect, second: Rect) -> bool:
    """Whether R1 and R2 are internally filled by disjoint subsets of A.

    Infected sites of the overlap are assigned to one rectangle or the other
    in every possible way.

    Raises:
        PreconditionError: If the overlap holds more than ``MAX_OVERLAP_SITES`` infected sites
    """
    overlap = first.intersection(second)
    if overlap is None:
        return is_internally_filled(config, first) and is_internally_filled(config, second)

    shared = config.restrict(overlap).sorted_sites()
    if len(shared) > MAX_OVERLAP_SITES:
        raise PreconditionError(
            f"{len(shared)} infected overlap sites exceed {MAX_OVERLAP_SITES}"
        )
    base_first = config.without_sites(shared)
    for choice in itertools.product((0, 1), repeat=len(shared)):
        to_first = [site for site, side in zip(shared, choice, strict=True) if side == 0]
        to_second = [site for site, side in zip(shared, choice, strict=True) if side == 1]
        if is_internally_filled(base_first.with_sites(to_first), first) and is_internally_filled(
            base_first.with_sites(to_second), second
        ):
            return True
    return False
