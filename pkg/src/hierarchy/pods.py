"""Pod inequalities: the growth cost of a hierarchy is at least that of one big seed.

The pod of a hierarchy is a rectangle no larger than all its seeds put
together. Both versions below are checked by exhausting integer dimensions.
"""

import itertools
import logging
import math

from pydantic import BaseModel, Field

from ..exceptions import PreconditionError
from ..numerics import g, growth_cost, growth_cost_dims
from .model import ROOT, Hierarchy

logger = logging.getLogger(__name__)

MAX_POD_SIDE = 64
TOLERANCE = 1e-9

Dims = tuple[int, int]


class PodResult(BaseModel):
    """Best pod found for a hierarchy and whether the inequality holds."""

    holds: bool
    edge_cost: float = Field(..., description="Sum of U over single-child edges")
    pod_cost: float = Field(..., description="Growth cost of the best pod(s)")
    slack: float = Field(..., description="2(s-1) q g(sqrt q)")
    pods: list[Dims] = Field(default_factory=list, description="Dimensions of the best pod(s)")
    vertex: int | None = None


def _seed_dims(hierarchy: Hierarchy) -> Dims:
    seeds = [hierarchy.rects[u] for u in hierarchy.leaves()]
    total = (sum(s.width for s in seeds), sum(s.height for s in seeds))
    if max(total) > MAX_POD_SIDE:
        raise PreconditionError(
            f"Seed dimensions {total} exceed the exhaustive search limit {MAX_POD_SIDE}"
        )
    return total


def edge_cost(hierarchy: Hierarchy, q: float) -> float:
    """Sum of U(R_v, R_u) over single-child edges."""
    return sum(
        growth_cost(hierarchy.rects[v], hierarchy.rects[u], q)
        for u, v in hierarchy.single_child_edges()
    )


def _dims_up_to(limit: Dims) -> list[Dims]:
    return list(itertools.product(range(1, limit[0] + 1), range(1, limit[1] + 1)))


def best_pod(hierarchy: Hierarchy, q: float, vertex: int | None = None) -> PodResult:
    """Minimise the pod cost over integer dimensions.

    Without ``vertex`` the pod S has dim(S) <= the summed seed dimensions and
    costs U(S, R). With ``vertex`` u there are two pods, S1 inside R_u and S2
    between R_u and R, with dim(S1) + dim(S2) - dim(R_u) <= the summed seed
    dimensions, costing U(S1, R_u) + U(S2, R).

    Raises:
        PreconditionError: If the summed seed dimensions exceed ``MAX_POD_SIDE``
    """
    seeds = _seed_dims(hierarchy)
    root = hierarchy.root_rect
    slack = 2.0 * (len(hierarchy.leaves()) - 1) * q * float(g(math.sqrt(q)))
    lhs = edge_cost(hierarchy, q)

    best_cost = math.inf
    best: list[Dims] = []
    if vertex is None or vertex == ROOT:
        limit = (min(seeds[0], root.width), min(seeds[1], root.height))
        for dims in _dims_up_to(limit):
            cost = growth_cost_dims(dims, root.dims, q)
            if cost < best_cost:
                best_cost, best = cost, [dims]
    else:
        middle = hierarchy.rects[vertex].dims
        outer_range = list(
            itertools.product(
                range(middle[0], root.width + 1), range(middle[1], root.height + 1)
            )
        )
        for inner in _dims_up_to(middle):
            for outer in outer_range:
                if (
                    inner[0] + outer[0] - middle[0] > seeds[0]
                    or inner[1] + outer[1] - middle[1] > seeds[1]
                ):
                    continue
                cost = growth_cost_dims(inner, middle, q) + growth_cost_dims(outer, root.dims, q)
                if cost < best_cost:
                    best_cost, best = cost, [inner, outer]

    holds = lhs >= best_cost - slack - TOLERANCE
    if not holds:
        logger.warning(
            f"Pod inequality fails for {root}: edges {lhs:.6g} < pod {best_cost:.6g} - {slack:.6g}"
        )
    return PodResult(
        holds=holds, edge_cost=lhs, pod_cost=best_cost, slack=slack, pods=best, vertex=vertex
    )


def verify_pod_inequality(hierarchy: Hierarchy, q: float, vertex: int | None = None) -> bool:
    return best_pod(hierarchy, q, vertex).holds
