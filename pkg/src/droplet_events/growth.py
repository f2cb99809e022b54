"""Growth events D1 and D2 and the criticality classes of outer rectangles."""

import math
from enum import Enum

from ..dynamics import close_grid
from ..lattice import Config, Rect
from ..numerics.constants import Constants
from .frames import FrameSpec, frame_mask, inner_mask


def fills_from(config: Config, inner: Rect, outer: Rect) -> bool:
    """Whether [S + (A in R)] = R, with the closure taken inside R."""
    grid = config.window(outer).copy()
    grid[
        inner.x_lo - outer.x_lo : inner.x_hi - outer.x_lo + 1,
        inner.y_lo - outer.y_lo : inner.y_hi - outer.y_lo + 1,
    ] = True
    return bool(close_grid(grid).all())


def event_d1(config: Config, spec: FrameSpec) -> bool:
    """D1: S together with the infected sites of R outside S_blacksquare fills R."""
    inner = inner_mask(spec)
    outside = config.window(spec.r) & ~(frame_mask(spec) | inner)
    return bool(close_grid(outside | inner).all())


def event_d2(config: Config, spec: FrameSpec) -> bool:
    """D2: D1 and no infected site in the frame S_square."""
    if (config.window(spec.r) & frame_mask(spec)).any():
        return False
    return event_d1(config, spec)


class Criticality(Enum):
    """Which growth bound applies to an outer rectangle."""

    ONE = "1-critical"
    TWO = "2-critical"
    NEITHER = "neither"
    BOTH_IMPOSSIBLE = "both-impossible"


def criticality(rect: Rect, constants: Constants) -> Criticality:
    """Classify R by the small-droplet and big-droplet conditions.

    1-critical: L1 <= short <= B/q and long <= 3e^{2B}/q.
    2-critical: short > B/q and long <= (1/2q) log(1/q).
    When R is neither and the constants leave both ranges empty,
    ``BOTH_IMPOSSIBLE`` is returned instead of ``NEITHER``.
    """
    q = constants.q
    small_cap = constants.B / q
    thin_cap = 3.0 * math.exp(2.0 * constants.B) / q
    big_cap = math.log(1.0 / q) / (2.0 * q)

    if constants.L1 <= rect.short <= small_cap and rect.long <= thin_cap:
        return Criticality.ONE
    if rect.short > small_cap and rect.long <= big_cap:
        return Criticality.TWO
    if constants.L1 > small_cap and big_cap <= small_cap:
        return Criticality.BOTH_IMPOSSIBLE
    return Criticality.NEITHER
