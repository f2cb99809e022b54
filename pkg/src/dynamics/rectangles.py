"""The rectangles process and the spanning results built on it.

The process starts with one 1x1 rectangle per infected site and repeatedly
merges two rectangles within graph distance 2 into their bounding rectangle.
Every rectangle it ever holds is internally filled by the sites merged into
it, which is what makes the merge history useful as a certificate.
"""

import logging
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import PreconditionError
from ..lattice import Config, Rect, Site
from .automaton import close_grid, is_internally_filled, percolates

logger = logging.getLogger(__name__)

MERGE_DISTANCE = 2


@dataclass(frozen=True)
class MergeNode:
    """A rectangle of the process together with the sites that fill it."""

    rect: Rect
    sites: frozenset[Site]
    children: tuple["MergeNode", ...] = field(default=())

    @property
    def is_site(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["MergeNode"]:
        """Pre-order traversal of the merge history below this node."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class SpanSplit:
    """Two rectangles disjointly internally filled whose union spans R."""

    s1: Rect
    s2: Rect
    witness1: frozenset[Site]
    witness2: frozenset[Site]


def rectangles_process(config: Config, rect: Rect | None = None) -> list[MergeNode]:
    """Run the rectangles process on A∩R.

    Merges happen in a fixed order: the pending rectangle is merged with the
    active rectangle of lowest lexicographic corner within distance 2, and
    the result is examined again before anything else.

    Args:
        config: Infected sites A
        rect: Region R to restrict to (defaults to the whole domain)

    Returns:
        The final rectangles with their merge histories, sorted by corner
    """
    region = rect or config.domain
    sites = config.restrict(region).sorted_sites()

    active: dict[int, MergeNode] = {}
    for index, site in enumerate(sites):
        active[index] = MergeNode(Rect(site[0], site[0], site[1], site[1]), frozenset([site]))
    next_id = len(sites)
    pending = deque(range(len(sites)))

    merges = 0
    while pending:
        node_id = pending.popleft()
        node = active.get(node_id)
        if node is None:
            continue

        partner_id = _lowest_partner(node_id, node.rect, active)
        if partner_id is None:
            continue

        partner = active.pop(partner_id)
        del active[node_id]
        first, second = sorted((node, partner), key=lambda n: n.rect.sort_key)
        merged = MergeNode(
            node.rect.span(partner.rect),
            node.sites | partner.sites,
            (first, second),
        )
        active[next_id] = merged
        pending.appendleft(next_id)
        next_id += 1
        merges += 1

    logger.debug(f"Rectangles process on {region}: {len(sites)} sites, {merges} merges")
    return sorted(active.values(), key=lambda n: n.rect.sort_key)


def _lowest_partner(node_id: int, rect: Rect, active: dict[int, MergeNode]) -> int | None:
    best_id: int | None = None
    best_key: tuple[int, int, int, int] | None = None
    for other_id, other in active.items():
        if other_id == node_id or rect.l1_gap(other.rect) > MERGE_DISTANCE:
            continue
        key = other.rect.sort_key
        if best_key is None or key < best_key:
            best_id, best_key = other_id, key
    return best_id


def filled_rectangles_in_history(forest: list[MergeNode]) -> list[MergeNode]:
    """Every rectangle the process held, each with its filling sites."""
    return [node for root in forest for node in root.walk()]


def minimal_percolating_subset(config: Config, rect: Rect) -> Config:
    """A minimal subset of A∩R whose closure inside R is R.

    Sites are tried for removal once each, in lexicographic order; a site
    that is still needed at its turn is needed forever after, so one pass
    yields a minimal set.

    Raises:
        PreconditionError: If R is not internally filled by A
    """
    if not is_internally_filled(config, rect):
        raise PreconditionError(f"{rect} is not internally filled")

    grid = np.array(config.window(rect), copy=True)
    for x, y in config.restrict(rect).sorted_sites():
        i, j = x - rect.x_lo, y - rect.y_lo
        grid[i, j] = False
        if not close_grid(grid).all():
            grid[i, j] = True
    return Config(rect, grid)


def disjoint_span_split(config: Config, rect: Rect) -> SpanSplit:
    """Split an internally filled R into two disjointly filled rectangles.

    The rectangles process is run on a minimal percolating subset of A∩R;
    the two rectangles of its final merge are returned with their sites.

    Raises:
        PreconditionError: If R is a single cell or not internally filled
    """
    if rect.long < 2:
        raise PreconditionError(f"Cannot split the single cell {rect}")
    minimal = minimal_percolating_subset(config, rect)
    forest = rectangles_process(minimal)
    if len(forest) != 1 or forest[0].rect != rect or forest[0].is_site:
        raise PreconditionError(f"Rectangles process did not span {rect}")
    first, second = forest[0].children
    return SpanSplit(first.rect, second.rect, first.sites, second.sites)


def span_split_violations(split: SpanSplit, config: Config, rect: Rect) -> list[str]:
    """Invariants of a :class:`SpanSplit` that fail, as messages."""
    problems = []
    for name, part, witness, other in (
        ("s1", split.s1, split.witness1, split.s2),
        ("s2", split.s2, split.witness2, split.s1),
    ):
        if not rect.contains_rect(part) or part == rect:
            problems.append(f"{name}={part} is not a proper subrectangle of {rect}")
            continue
        if any(site not in config or other.contains(site) or not part.contains(site) for site in witness):
            problems.append(f"witness of {name} leaves A∩({name}\\other)")
        if not is_internally_filled(Config.from_sites(part, witness), part):
            problems.append(f"witness of {name} does not fill {part}")
    if split.witness1 & split.witness2:
        problems.append("witnesses intersect")
    closed = close_grid(Config.from_rects(rect, [split.s1, split.s2]).grid)
    xs, ys = np.nonzero(closed)
    if xs.size == 0 or (xs.min(), xs.max(), ys.min(), ys.max()) != (0, rect.width - 1, 0, rect.height - 1):
        problems.append("closure of s1 and s2 does not span R")
    return problems


def al_witness(config: Config, k: int) -> Rect:
    """An internally filled rectangle with k <= long <= 2k.

    Walks down the merge history of a percolating configuration, always
    into the child with the longer long side. A merged long side is at most
    the sum of its children's plus 2, so that child keeps long >= k.

    Raises:
        PreconditionError: If A does not percolate or k is out of range
    """
    domain = config.domain
    if not 1 <= k <= domain.long:
        raise PreconditionError(f"k={k} outside [1, {domain.long}]")
    if not percolates(config):
        raise PreconditionError("Configuration does not percolate")

    forest = rectangles_process(config)
    node = forest[0]
    while node.rect.long > 2 * k:
        node = max(node.children, key=lambda child: child.rect.long)
    return node.rect
