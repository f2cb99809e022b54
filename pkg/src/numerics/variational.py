"""Growth costs between nested rectangles.

``path_cost`` is the infimum of the integral of g(y)dx + g(x)dy over
increasing piecewise-linear paths between two points of the positive
quadrant. It is computed by dynamic programming over a shared coordinate
grid whose nodes are joined by right, up and diagonal segments; the grid
is refined until the value settles.
"""

import logging
import math
from functools import lru_cache

import numpy as np

from ..exceptions import InvalidRectangleError, PreconditionError
from ..lattice import Rect
from .constants import Constants
from .functions import FloatArray, _g_array, _g_scalar, g_antiderivative, g_integral

logger = logging.getLogger(__name__)

Point = tuple[float, float]

MIN_INTERVALS = 16
MAX_INTERVALS = 2048
CONVERGENCE_TOL = 1e-7
_SAME_POINT = 1e-12


def _coordinate_grid(a: Point, b: Point, intervals: int) -> FloatArray:
    """Uniform grid over [min a, max b] with the four endpoint coordinates added."""
    anchors = np.array([a[0], a[1], b[0], b[1]])
    base = np.linspace(min(a), max(b), intervals + 1)
    near_anchor = np.abs(base[:, None] - anchors[None, :]).min(axis=1) <= _SAME_POINT
    return np.unique(np.concatenate([base[~near_anchor], anchors]))


def _cumulative_integral(points: FloatArray) -> FloatArray:
    steps = [g_integral(float(lo), float(hi)) for lo, hi in zip(points[:-1], points[1:], strict=True)]
    return np.concatenate([[0.0], np.cumsum(steps)])


def _dynamic_program(a: Point, b: Point, intervals: int) -> float:
    points = _coordinate_grid(a, b, intervals)
    antiderivative = _cumulative_integral(points)

    in_x = (points >= a[0]) & (points <= b[0])
    in_y = (points >= a[1]) & (points <= b[1])
    xs, big_gx = points[in_x], antiderivative[in_x]
    ys, big_gy = points[in_y], antiderivative[in_y]
    gx = _g_array(xs)
    gy = _g_array(ys)
    dy = np.diff(ys)
    dgy = np.diff(big_gy)

    # column i holds the cheapest cost of reaching (xs[i], ys[j]) for every j
    cost = gx[0] * (ys - ys[0])
    for i in range(1, xs.size):
        dx = xs[i] - xs[i - 1]
        arrive = cost + dx * gy
        if ys.size > 1:
            diagonal = cost[:-1] + (dx / dy) * dgy + (dy / dx) * (big_gx[i] - big_gx[i - 1])
            arrive[1:] = np.minimum(arrive[1:], diagonal)
        # vertical moves inside the column have constant rate gx[i]
        cost = np.minimum.accumulate(arrive - gx[i] * ys) + gx[i] * ys
    return float(cost[-1])


@lru_cache(maxsize=8192)
def path_cost(
    a: Point,
    b: Point,
    tol: float = CONVERGENCE_TOL,
    max_intervals: int = MAX_INTERVALS,
) -> float:
    """Minimal cost of an increasing path from ``a`` to ``b``.

    Args:
        a: Start point, both coordinates positive
        b: End point, componentwise at least ``a``
        tol: Stop refining once successive values differ by less than this
        max_intervals: Refinement cap for the uniform part of the grid

    Returns:
        The optimised path cost

    Raises:
        PreconditionError: If a is not below b or a coordinate is not positive
    """
    if min(a) <= 0.0:
        raise PreconditionError(f"Path start {a} must be positive")
    if a[0] > b[0] or a[1] > b[1]:
        raise PreconditionError(f"{a} is not componentwise below {b}")
    if a == b:
        return 0.0
    if a[0] == b[0]:
        return _g_scalar(a[0]) * (b[1] - a[1])
    if a[1] == b[1]:
        return _g_scalar(a[1]) * (b[0] - a[0])

    intervals = MIN_INTERVALS
    previous = _dynamic_program(a, b, intervals)
    while intervals < max_intervals:
        intervals *= 2
        current = _dynamic_program(a, b, intervals)
        if abs(previous - current) < tol * max(1.0, abs(current)):
            return current
        previous = current
    logger.warning(
        f"Path cost {a} -> {b} not settled at {max_intervals} intervals "
        f"(last change above {tol})"
    )
    return previous


def growth_cost_dims(inner: tuple[int, int], outer: tuple[int, int], q: float) -> float:
    """U for rectangles given only by their dimensions."""
    if inner[0] > outer[0] or inner[1] > outer[1]:
        raise InvalidRectangleError(f"dims {inner} do not fit inside {outer}")
    return path_cost((q * inner[0], q * inner[1]), (q * outer[0], q * outer[1]))


def growth_cost(inner: Rect, outer: Rect, q: float) -> float:
    """U(S, R) = W(q dim(S), q dim(R)).

    Raises:
        InvalidRectangleError: If S is not contained in R
    """
    if not outer.contains_rect(inner):
        raise InvalidRectangleError(f"{inner} is not contained in {outer}")
    return growth_cost_dims(inner.dims, outer.dims, q)


def additive_cost(inner: Rect, outer: Rect, q: float) -> float:
    """Q(S, R) = s g((b - t)q) + t g((a - s)q) with dim(R) = (a, b), dim(S) = (a - s, b - t).

    Raises:
        InvalidRectangleError: If S is not contained in R
    """
    if not outer.contains_rect(inner):
        raise InvalidRectangleError(f"{inner} is not contained in {outer}")
    a, b = outer.dims
    s, t = a - inner.width, b - inner.height
    return s * _g_scalar((b - t) * q) + t * _g_scalar((a - s) * q)


def diagonal_cost(inner: Rect, outer: Rect, q: float) -> float:
    """Closed form of U(S, R)/q when long(S) <= short(R).

    (d - c)g(dq) + (2/q) * integral of g over [dq, aq] + (b - a)g(aq), with
    c, d the short and long side of S and a, b those of R.
    """
    if inner.long > outer.short:
        raise PreconditionError(f"long({inner}) exceeds short({outer})")
    a, b, c, d = outer.short, outer.long, inner.short, inner.long
    return (
        (d - c) * _g_scalar(d * q)
        + (2.0 / q) * g_integral(d * q, a * q)
        + (b - a) * _g_scalar(a * q)
    )


def offdiagonal_lower_bound(inner: Rect, outer: Rect, q: float) -> float:
    """(b - d)g(aq), a lower bound on U(S, R)/q when long(S) >= short(R)."""
    return (outer.long - inner.long) * _g_scalar(outer.short * q)


def u_lower_bound(
    inner: Rect, outer: Rect, q: float, absolute_constant: float = 2.0
) -> float:
    """Lower bound on U(S, R)/q for long(S) <= short(R).

    The error term O(phi(S)) is taken as ``absolute_constant * phi(S)``.
    """
    a, b = outer.short, outer.long
    phi = inner.phi
    return (
        (2.0 / q) * g_antiderivative(a * q)
        + (b - a) * _g_scalar(a * q)
        - 0.5 * phi * math.log1p(1.0 / (phi * q))
        - absolute_constant * phi
    )


def f_scale(rect: Rect, constants: Constants) -> float:
    """The admissible side growth f(R).

    delta * sqrt(short) up to short = B/q inclusive, and
    (delta / sqrt(q)) * exp(short * q) beyond.
    """
    q = constants.q
    short = rect.short
    if short <= constants.B / q:
        return constants.delta * math.sqrt(short)
    return constants.delta / math.sqrt(q) * math.exp(short * q)


def j_functional(rect: Rect, constants: Constants) -> float:
    """J(R) = (2/q) * integral of g over [0, aq] + (b - a)g(aq)."""
    q = constants.q
    a, b = rect.short, rect.long
    return (2.0 / q) * g_antiderivative(a * q) + (b - a) * _g_scalar(a * q)
