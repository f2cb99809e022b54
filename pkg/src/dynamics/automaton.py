"""The two-neighbour bootstrap automaton and its closure."""

import logging
from collections import deque

import numpy as np

from ..lattice import Config, Rect
from ..lattice.configuration import BoolGrid

logger = logging.getLogger(__name__)

THRESHOLD = 2


def neighbour_counts(grid: BoolGrid) -> np.ndarray:
    """Number of infected lattice neighbours of every site of ``grid``.

    Sites outside the grid count as uninfected.
    """
    counts = np.zeros(grid.shape, dtype=np.uint8)
    counts[1:, :] += grid[:-1, :]
    counts[:-1, :] += grid[1:, :]
    counts[:, 1:] += grid[:, :-1]
    counts[:, :-1] += grid[:, 1:]
    return counts


def step(config: Config) -> Config:
    """One synchronous update of the automaton."""
    grid = config.grid
    return Config(config.domain, grid | (neighbour_counts(grid) >= THRESHOLD))


def close_grid(grid: BoolGrid) -> BoolGrid:
    """Closure of a boolean grid.

    Queue-based: every newly infected site bumps the counters of its
    uninfected neighbours, and a counter reaching two infects that site.
    Each site is enqueued at most once.
    """
    width, height = grid.shape
    if not grid.any() or grid.all():
        return grid.copy()

    counts = neighbour_counts(grid)
    seeds = ~grid & (counts >= THRESHOLD)
    infected = bytearray((grid | seeds).astype(np.uint8).tobytes())
    counter = bytearray(counts.tobytes())

    queue = deque(int(i) for i in np.flatnonzero(seeds))
    last_row = (width - 1) * height
    while queue:
        i = queue.popleft()
        y = i % height
        for j, inside in (
            (i - height, i >= height),
            (i + height, i < last_row),
            (i - 1, y > 0),
            (i + 1, y < height - 1),
        ):
            if inside and not infected[j]:
                counter[j] += 1
                if counter[j] >= THRESHOLD:
                    infected[j] = 1
                    queue.append(j)

    closed = np.frombuffer(bytes(infected), dtype=np.uint8).reshape(width, height)
    return closed.astype(bool)


def closure(config: Config) -> Config:
    """Least fixed point of :func:`step` above ``config``."""
    return Config(config.domain, close_grid(config.grid))


def naive_closure(config: Config) -> Config:
    """Closure by iterating :func:`step` until nothing changes.

    Quadratic in the area; kept as an oracle for :func:`closure`.
    """
    current = config
    while True:
        following = step(current)
        if following == current:
            return current
        current = following


def closure_within(config: Config, rect: Rect) -> Config:
    """Closure of A∩R computed inside R, as a configuration over R."""
    return closure(config.restrict(rect))


def is_internally_filled(config: Config, rect: Rect) -> bool:
    """Whether [A∩R] = R."""
    window = config.window(rect)
    if window.all():
        return True
    return bool(close_grid(window).all())


def percolates(config: Config) -> bool:
    """Whether the closure of ``config`` is its whole domain."""
    return bool(close_grid(config.grid).all())
