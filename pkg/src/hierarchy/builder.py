"""Construct a good and satisfied hierarchy for an internally filled rectangle.

The builder walks down the rectangles-process splits of R, always into the
part closer to R, until the part is at distance at least f(R). What happens
next depends on how far that part ended up:

* close (at most 2f(R)): grow it back towards R while it stays at distance
  f(R), and hang the rest of the hierarchy under a single child;
* far after one step: R splits into two children;
* far after several steps: the previous part becomes a single child of R
  which then splits.

Budgets of infected sites are handed down so that sibling subtrees never
share a site.
"""

import logging
import math

from ..droplet_events import FrameSpec, buffers
from ..dynamics import disjoint_span_split, is_internally_filled
from ..exceptions import HierarchyConstructionError, PreconditionError
from ..lattice import Config, Direction, Rect, Site, side_distances
from ..numerics import Constants, f_scale
from .model import Hierarchy, HierarchyBuilder, Label, primary_key, zero_label

logger = logging.getLogger(__name__)

ABSORB_RADIUS = 2


def max_rectangle_long(q: float) -> float:
    """(1/2q) log(1/q), the largest long side the builder accepts."""
    return math.log(1.0 / q) / (2.0 * q)


def is_leaf_rect(rect: Rect, q: float) -> bool:
    return rect.short <= q ** -0.5


def build_hierarchy(config: Config, rect: Rect, constants: Constants) -> Hierarchy:
    """Build a good hierarchy for R satisfied by A.

    Args:
        config: Infected set A, whose domain contains R
        rect: Rectangle R, internally filled by A
        constants: Constants, including p

    Returns:
        Hierarchy with root rectangle R

    Raises:
        PreconditionError: If R is not internally filled or long(R) exceeds (1/2q) log(1/q)
        HierarchyConstructionError: If the recursion reaches a dead end
    """
    q = constants.q
    if rect.long > max_rectangle_long(q):
        raise PreconditionError(
            f"long({rect})={rect.long} exceeds (1/2q)log(1/q)={max_rectangle_long(q):.3f}"
        )
    if not is_internally_filled(config, rect):
        raise PreconditionError(f"{rect} is not internally filled")

    builder = _Construction(constants)
    builder.build(config.restrict(rect), rect)
    hierarchy = builder.target.freeze()
    logger.debug(f"Built hierarchy for {rect} with {hierarchy.size} vertices")
    return hierarchy


class _Construction:
    def __init__(self, constants: Constants):
        self.constants = constants
        self.q = constants.q
        self.target = HierarchyBuilder()

    def build(self, budget: Config, rect: Rect) -> int:
        vertex = self.target.add_vertex(rect)
        if is_leaf_rect(rect, self.q):
            return vertex

        f = f_scale(rect, self.constants)
        chain, splits = self._descend(budget, rect, f)
        nearest = chain[-1]
        distance = side_distances(nearest, rect)[1]

        if distance <= 2.0 * f:
            grown = self._grow(budget, nearest, rect, f)
            child = self.build(budget.restrict(grown), grown)
            label = self._label(budget, grown, rect, f) if len(self.target.children[child]) == 1 else None
            self.target.add_edge(vertex, child, label)
        elif len(chain) == 2:
            self._split(vertex, budget, *splits[0])
        else:
            middle = chain[-2]
            child = self.target.add_vertex(middle)
            self.target.add_edge(vertex, child)
            self._split(child, budget.restrict(middle), *splits[-1])
        return vertex

    def _descend(
        self, budget: Config, rect: Rect, f: float
    ) -> tuple[list[Rect], list[tuple[Rect, Rect]]]:
        chain = [rect]
        splits: list[tuple[Rect, Rect]] = []
        current = rect
        while True:
            if current.long < 2:
                raise HierarchyConstructionError(
                    f"Descent from {rect} reached the single cell {current}"
                )
            try:
                split = disjoint_span_split(budget, current)
            except PreconditionError as e:
                raise HierarchyConstructionError(f"Cannot split {current}: {e}") from e
            near, far = sorted(
                (split.s1, split.s2), key=lambda s: (side_distances(s, rect)[1], s.sort_key)
            )
            chain.append(near)
            splits.append((near, far))
            if side_distances(near, rect)[1] >= f:
                return chain, splits
            current = near

    def _candidates(self, budget: Config, inner: Rect, outer: Rect) -> list[Site]:
        """Budget sites outside S within l1 distance 2 of it."""
        reach = Rect(
            max(inner.x_lo - ABSORB_RADIUS, outer.x_lo),
            min(inner.x_hi + ABSORB_RADIUS, outer.x_hi),
            max(inner.y_lo - ABSORB_RADIUS, outer.y_lo),
            min(inner.y_hi + ABSORB_RADIUS, outer.y_hi),
        )
        return [
            site
            for site in budget.restrict(reach).sorted_sites()
            if not inner.contains(site)
            and inner.l1_gap(Rect(site[0], site[0], site[1], site[1])) <= ABSORB_RADIUS
        ]

    def _grow(self, budget: Config, start: Rect, rect: Rect, f: float) -> Rect:
        current = start
        while True:
            for site in self._candidates(budget, current, rect):
                grown = current.span(Rect(site[0], site[0], site[1], site[1]))
                if side_distances(grown, rect)[1] >= f:
                    current = grown
                    break
            else:
                return current

    def _label(self, budget: Config, inner: Rect, outer: Rect, f: float) -> Label:
        _, nonempty, _ = buffers(FrameSpec(inner, outer))
        label = zero_label()
        for direction in nonempty:
            label[direction] = 1
        if not self._candidates(budget, inner, outer):
            return label

        distances, farthest = side_distances(inner, outer)
        if farthest - math.floor(f) not in (0, 1):
            raise HierarchyConstructionError(
                f"Grown rectangle {inner} sits at distance {farthest} from {outer}, f={f:.3f}"
            )
        dropped = next(d for d in Direction if distances[d] == farthest)
        label[dropped] = 0
        return label

    def _split(self, vertex: int, budget: Config, first: Rect, second: Rect) -> None:
        primary, other = sorted((first, second), key=primary_key)
        self.target.add_edge(vertex, self.build(budget.restrict(primary), primary))
        self.target.add_edge(
            vertex, self.build(budget.restrict(other).without_rect(primary), other)
        )
