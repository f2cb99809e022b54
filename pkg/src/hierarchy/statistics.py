"""Statistics of hierarchies, weighted counting and structural properties."""

import functools
import itertools
import logging
import math
from collections import defaultdict
from collections.abc import Iterator

from pydantic import BaseModel, Field

from ..exceptions import PreconditionError
from ..lattice import Direction, Rect, side_distances, span_closure
from ..numerics import Constants, f_scale
from .builder import is_leaf_rect, max_rectangle_long
from .model import Hierarchy, HierarchyBuilder, label_norm, zero_label

logger = logging.getLogger(__name__)


class HierarchyStats(BaseModel):
    """Counts and sums describing one hierarchy."""

    v: int = Field(..., description="Number of vertices")
    s: int = Field(..., description="Number of seeds (leaves)")
    m: int = Field(..., description="Number of large seeds")
    h: int = Field(..., description="Vertices on the longest root-to-leaf path")
    X: int = Field(..., description="Sum of seed semi-perimeters")
    up_phi_sum: int = Field(..., description="Semi-perimeters of upper trunk vertices")
    weight: float = Field(..., gt=0.0)
    log_weight: float


def _nonempty(inner: Rect, outer: Rect) -> frozenset[Direction]:
    distances, _ = side_distances(inner, outer)
    return frozenset(d for d, gap in distances.items() if gap > 0)


def is_large_seed(rect: Rect, q: float) -> bool:
    return rect.long >= 1.0 / (3.0 * math.sqrt(q))


def upper_trunk(hierarchy: Hierarchy, constants: Constants) -> list[int]:
    """Trunk vertices whose short side is at least B/q."""
    cap = constants.B / constants.q
    return [u for u in hierarchy.trunk_vertices() if hierarchy.rects[u].short >= cap]


def log_weight(hierarchy: Hierarchy, constants: Constants) -> float:
    total = 0.0
    for u, v in hierarchy.single_child_edges():
        ru, rv = hierarchy.rects[u], hierarchy.rects[v]
        selected = label_norm(hierarchy.label(u, v), _nonempty(rv, ru))
        if selected:
            total -= selected * math.log(f_scale(ru, constants))
    return total


def stats(hierarchy: Hierarchy, constants: Constants) -> HierarchyStats:
    q = constants.q
    seeds = [hierarchy.rects[u] for u in hierarchy.leaves()]
    log_w = log_weight(hierarchy, constants)
    return HierarchyStats(
        v=hierarchy.size,
        s=len(seeds),
        m=sum(is_large_seed(seed, q) for seed in seeds),
        h=hierarchy.height(),
        X=sum(seed.phi for seed in seeds),
        up_phi_sum=upper_trunk_semiperimeter(hierarchy, constants),
        weight=math.exp(log_w),
        log_weight=log_w,
    )


def log_weighted_count_bound(n_vertices: int, n_seeds: int, rect: Rect) -> float:
    """16(N + M log phi(R))."""
    if not n_vertices >= n_seeds >= 1:
        raise ValueError(f"Need N >= M >= 1, got N={n_vertices}, M={n_seeds}")
    return 16.0 * (n_vertices + n_seeds * math.log(rect.phi))


def weighted_count_bound(n_vertices: int, n_seeds: int, rect: Rect) -> float:
    """Upper bound on the total weight of hierarchies for R with N vertices and M seeds."""
    exponent = log_weighted_count_bound(n_vertices, n_seeds, rect)
    return math.inf if exponent > 700.0 else math.exp(exponent)


# Enumeration of good hierarchies. A subtree is (rect, ((label, subtree), ...))
# where label is the frozenset of selected directions on the edge to it.
_Subtree = tuple[Rect, tuple[tuple[frozenset[Direction], "_Subtree"], ...]]


def _subrectangles(rect: Rect) -> Iterator[Rect]:
    for x_lo, x_hi in itertools.combinations_with_replacement(range(rect.x_lo, rect.x_hi + 1), 2):
        for y_lo, y_hi in itertools.combinations_with_replacement(
            range(rect.y_lo, rect.y_hi + 1), 2
        ):
            yield Rect(x_lo, x_hi, y_lo, y_hi)


def _size(tree: _Subtree) -> int:
    return 1 + sum(_size(child) for _, child in tree[1])


def _labels(inner: Rect, outer: Rect, f: float) -> list[frozenset[Direction]]:
    """Labels allowed by (h) on a chain edge."""
    nonempty = _nonempty(inner, outer)
    allowed = [nonempty]
    distance = side_distances(inner, outer)[1]
    if distance - math.floor(f) in (0, 1):
        allowed.extend(nonempty - {d} for d in sorted(nonempty, key=lambda d: d.value))
    return allowed


def enumerate_good_hierarchies(
    rect: Rect, constants: Constants, max_vertices: int
) -> list[Hierarchy]:
    """Every good hierarchy for R with at most ``max_vertices`` vertices.

    Children of a split are unordered. Meant for toy rectangles: the search
    visits every pair of subrectangles at each split.
    """
    q = constants.q

    @functools.cache
    def grow(outer: Rect, budget: int) -> tuple[_Subtree, ...]:
        if budget < 1:
            return ()
        if is_leaf_rect(outer, q):
            return ((outer, ()),)
        if budget < 2:
            return ()

        f = f_scale(outer, constants)
        found: list[_Subtree] = []
        for inner in _subrectangles(outer):
            distance = side_distances(inner, outer)[1]
            if distance > 2.0 * f:
                continue
            for sub in grow(inner, budget - 1):
                if len(sub[1]) == 1:
                    if distance < f:
                        continue
                    labels = _labels(inner, outer, f)
                else:
                    labels = [frozenset()]
                found.extend((outer, ((label, sub),)) for label in labels)

        far = [s for s in _subrectangles(outer) if side_distances(s, outer)[1] >= f]
        for first, second in itertools.combinations(far, 2):
            if span_closure(first, second) != outer:
                continue
            for left in grow(first, budget - 2):
                for right in grow(second, budget - 1 - _size(left)):
                    found.append((outer, ((frozenset(), left), (frozenset(), right))))
        return tuple(found)

    trees = grow(rect, max_vertices)
    logger.debug(f"Enumerated {len(trees)} good hierarchies for {rect}")
    return [_freeze(tree) for tree in trees]


def _freeze(tree: _Subtree) -> Hierarchy:
    builder = HierarchyBuilder()

    def add(node: _Subtree) -> int:
        vertex = builder.add_vertex(node[0])
        for selected, child in node[1]:
            label = zero_label()
            for direction in selected:
                label[direction] = 1
            builder.add_edge(vertex, add(child), label)
        return vertex

    add(tree)
    return builder.freeze()


def total_weight_by_size(
    hierarchies: list[Hierarchy], constants: Constants
) -> dict[tuple[int, int], float]:
    """Total weight of the given hierarchies grouped by (vertices, seeds)."""
    totals: dict[tuple[int, int], float] = defaultdict(float)
    for hierarchy in hierarchies:
        key = (hierarchy.size, len(hierarchy.leaves()))
        totals[key] += math.exp(log_weight(hierarchy, constants))
    return dict(totals)


def small_seeds_hold(hierarchy: Hierarchy, constants: Constants) -> bool | None:
    """Every vertex has semi-perimeter at least delta q^{-1/4}.

    Returns None when R is outside the size range where this is claimed.
    """
    q = constants.q
    root = hierarchy.root_rect
    if root.long > max_rectangle_long(q) or root.short < q ** -0.5:
        return None
    floor = constants.delta * q ** -0.25
    return all(hierarchy.rects[u].phi >= floor for u in hierarchy.vertices())


def height_bounded_by_large_seeds(hierarchy: Hierarchy, constants: Constants) -> bool:
    """v(H) <= 2 h(H) m(H).

    Raises:
        PreconditionError: If short(R) < q^{-1/2}
    """
    root = hierarchy.root_rect
    if root.short < constants.q ** -0.5:
        raise PreconditionError(
            f"short({root})={root.short} is below q^(-1/2)={constants.q ** -0.5:.3f}"
        )
    summary = stats(hierarchy, constants)
    return summary.v <= 2 * summary.h * summary.m


def _weird_lower(rect: Rect, constants: Constants) -> bool:
    return rect.short <= constants.B / constants.q and rect.long >= 2.0 * constants.L1 * rect.short


def _weird_upper(rect: Rect, constants: Constants) -> bool:
    return rect.short >= constants.B / constants.q and rect.long >= 4.0 * rect.short


def height_or_vertex(hierarchy: Hierarchy, constants: Constants) -> bool:
    """Short height, or a vertex that is very elongated for its size."""
    if hierarchy.height() <= constants.L2 / math.sqrt(constants.q):
        return True
    return any(
        _weird_lower(rect, constants) or _weird_upper(rect, constants) for rect in hierarchy.rects
    )


def weird_vertex_height_holds(hierarchy: Hierarchy, constants: Constants) -> bool | None:
    """When only elongated small vertices explain a tall hierarchy, one of them bounds h.

    Returns None when the hierarchy is short or has an elongated large vertex.
    """
    height = hierarchy.height()
    if height <= constants.L2 / math.sqrt(constants.q):
        return None
    if any(_weird_upper(rect, constants) for rect in hierarchy.rects):
        return None
    scale = constants.L1 * constants.q**0.25
    return any(
        _weird_lower(rect, constants) and height <= scale * rect.long for rect in hierarchy.rects
    )


def upper_trunk_semiperimeter(hierarchy: Hierarchy, constants: Constants) -> int:
    """Sum of phi over trunk vertices with short side at least B/q."""
    return sum(hierarchy.rects[u].phi for u in upper_trunk(hierarchy, constants))


def upper_trunk_bound_holds(hierarchy: Hierarchy, constants: Constants) -> bool:
    """Upper trunk semi-perimeters sum to at most L2/q^{3/2}, unless a large vertex is elongated."""
    if any(_weird_upper(rect, constants) for rect in hierarchy.rects):
        return True
    return upper_trunk_semiperimeter(hierarchy, constants) <= constants.L2 / constants.q**1.5
