"""Goodness and satisfaction checks for hierarchies."""

import logging
import math
from collections import Counter
from typing import Literal

from pydantic import BaseModel, Field, computed_field

from ..droplet_events import FrameSpec, buffer_rect, event_d1, event_d2, fills_from, frame
from ..dynamics import is_internally_filled
from ..exceptions import PreconditionError
from ..lattice import Config, Direction, Rect, Site, side_distances, span_closure
from ..numerics import Constants, f_scale
from .model import ROOT, Edge, Hierarchy

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    """One failed goodness condition."""

    condition: str = Field(..., description="Condition letter a to i, or tree for the tree shape")
    vertex: int | None = Field(default=None, description="Offending vertex")
    edge: tuple[int, int] | None = Field(default=None, description="Offending edge")
    message: str


class GoodnessReport(BaseModel):
    """Result of checking conditions (a) to (i) on a hierarchy."""

    violations: list[Violation] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def good(self) -> bool:
        return not self.violations

    def failed_conditions(self) -> set[str]:
        return {v.condition for v in self.violations}


class EventWitness(BaseModel):
    """The event attached to a leaf or a single-child edge and its witness."""

    kind: Literal["filled", "D1", "D2"]
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    sites: list[Site] = Field(default_factory=list, description="Infected sites used")
    closed: list[Site] = Field(
        default_factory=list, description="Uninfected sites the event relies on"
    )
    holds: bool


class SatisfactionCertificate(BaseModel):
    """Events (j), (k) and (l) with their witnesses and any overlaps among them."""

    witnesses: list[EventWitness] = Field(default_factory=list)
    trunk: list[tuple[int, int]] = Field(default_factory=list)
    collisions: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def leaves_filled(self) -> bool:
        return all(w.holds for w in self.witnesses if w.kind == "filled")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def off_trunk_hold(self) -> bool:
        return all(w.holds for w in self.witnesses if w.kind == "D1")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def trunk_hold(self) -> bool:
        return all(w.holds for w in self.witnesses if w.kind == "D2")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def satisfied(self) -> bool:
        return self.leaves_filled and self.off_trunk_hold and self.trunk_hold and not self.collisions


def _nonempty_buffers(inner: Rect, outer: Rect) -> frozenset[Direction]:
    return frozenset(d for d in Direction if buffer_rect(inner, outer, d) is not None)


def check_good(
    hierarchy: Hierarchy, constants: Constants, rect: Rect | None = None
) -> GoodnessReport:
    """Check that the hierarchy is a tree rooted at vertex 0, then conditions (a) to (i).

    Args:
        hierarchy: Hierarchy to check
        constants: Constants, including p
        rect: Expected root rectangle; the root is accepted as is when omitted

    Returns:
        Report listing every violated condition
    """
    q = constants.q
    report = GoodnessReport()

    def fail(condition: str, message: str, vertex: int | None = None, edge: Edge | None = None) -> None:
        report.violations.append(
            Violation(condition=condition, vertex=vertex, edge=edge, message=message)
        )

    if rect is not None and hierarchy.root_rect != rect:
        fail("a", f"root is {hierarchy.root_rect}, expected {rect}", vertex=ROOT)

    parents = Counter(v for _, v in hierarchy.edges())
    for u in hierarchy.vertices():
        expected = 0 if u == ROOT else 1
        if parents[u] != expected:
            fail("tree", f"{parents[u]} parents, expected {expected}", vertex=u)
    for u in sorted(set(hierarchy.vertices()) - hierarchy.reachable()):
        fail("tree", "not reachable from the root", vertex=u)

    for u in hierarchy.vertices():
        ru = hierarchy.rects[u]
        kids = hierarchy.children[u]
        if len(kids) > 2:
            fail("b", f"{len(kids)} children", vertex=u)
        for v in kids:
            if not ru.contains_rect(hierarchy.rects[v]):
                fail("c", f"{hierarchy.rects[v]} not inside {ru}", edge=(u, v))
        if len(kids) == 2:
            first, second = (hierarchy.rects[v] for v in kids)
            if span_closure(first, second) != ru:
                fail("d", f"children {first} and {second} do not span {ru}", vertex=u)
        if (not kids) != (ru.short <= q ** -0.5):
            fail("e", f"leaf={not kids} with short side {ru.short}", vertex=u)

    for u, v in hierarchy.edges():
        ru, rv = hierarchy.rects[u], hierarchy.rects[v]
        if not ru.contains_rect(rv):
            continue
        f = f_scale(ru, constants)
        distances, distance = side_distances(rv, ru)
        n_u, n_v = len(hierarchy.children[u]), len(hierarchy.children[v])
        label = hierarchy.label(u, v)

        if n_u == 1 and distance > 2.0 * f:
            fail("f", f"d={distance} exceeds 2f={2.0 * f:.3f}", edge=(u, v))
        if (n_u == 2 or n_v == 1) and distance < f:
            fail("g", f"d={distance} below f={f:.3f}", edge=(u, v))
        if n_u == 1 and n_v == 1:
            nonempty = _nonempty_buffers(rv, ru)
            z = len(nonempty)
            norm = sum(label[d] for d in nonempty)
            offset = distance - math.floor(f)
            if any(label[d] for d in Direction if d not in nonempty):
                fail("h", "label selects an empty buffer", edge=(u, v))
            elif not (norm == z or (norm == z - 1 and offset in (0, 1))):
                fail("h", f"|x|={norm}, z={z}, d={distance}, f={f:.3f}", edge=(u, v))
        elif any(label.values()):
            fail("i", "non-zero label away from a single-child chain", edge=(u, v))

    for violation in report.violations:
        logger.debug(f"Goodness ({violation.condition}) fails: {violation.message}")
    return report


def edge_budgets(hierarchy: Hierarchy, config: Config) -> dict[int, Config]:
    """Infected sites each vertex may use, as configurations over its rectangle.

    The root gets A in R. A single child gets its parent's budget inside its
    rectangle; at a split the trunk-side child gets the budget inside its
    rectangle and the other child what is left outside the first.
    """
    budgets = {ROOT: config.restrict(hierarchy.root_rect)}
    for u in hierarchy.walk():
        kids = hierarchy.ordered_children(u)
        if len(kids) == 1:
            budgets[kids[0]] = budgets[u].restrict(hierarchy.rects[kids[0]])
        elif len(kids) == 2:
            primary, other = kids
            budgets[primary] = budgets[u].restrict(hierarchy.rects[primary])
            budgets[other] = (
                budgets[u].restrict(hierarchy.rects[other]).without_rect(hierarchy.rects[primary])
            )
    return budgets


def _edge_witness(
    hierarchy: Hierarchy, config: Config, budget: Config, edge: Edge, on_trunk: bool
) -> EventWitness:
    u, v = edge
    ru, rv = hierarchy.rects[u], hierarchy.rects[v]
    label = hierarchy.label(u, v)
    kind: Literal["D1", "D2"] = "D2" if on_trunk else "D1"

    if not any(label.values()):
        outside = [s for s in budget.sorted_sites() if not rv.contains(s)]
        return EventWitness(
            kind=kind, edge=edge, sites=outside, holds=fills_from(budget, rv, ru)
        )

    try:
        spec = FrameSpec(rv, ru, label)
    except PreconditionError as e:
        logger.debug(f"Edge {edge} has no frame: {e}")
        return EventWitness(kind=kind, edge=edge, holds=False)

    framed = frame(spec)
    sites = [s for s in budget.sorted_sites() if s not in framed.blacksquare]
    closed = sorted(framed.square) if on_trunk else []
    holds = event_d2(budget, spec) if on_trunk else event_d1(budget, spec)
    if on_trunk:
        holds = holds and not any(s in config for s in framed.square)
    return EventWitness(kind=kind, edge=edge, sites=sites, closed=closed, holds=holds)


def check_satisfied(hierarchy: Hierarchy, config: Config) -> SatisfactionCertificate:
    """Check (j), (k) and (l) with disjoint witnesses.

    Leaves must be filled by their budget; single-child edges off the trunk
    carry D1 and those on the trunk carry D2. Witness sets, infected and
    uninfected, must be pairwise disjoint.

    Raises:
        PreconditionError: If some vertex is not reachable from the root
    """
    unreached = sorted(set(hierarchy.vertices()) - hierarchy.reachable())
    if unreached:
        raise PreconditionError(f"Vertices {unreached} are not reachable from the root")
    budgets = edge_budgets(hierarchy, config)
    trunk = set(hierarchy.trunk())
    certificate = SatisfactionCertificate(trunk=sorted(trunk))

    for u in hierarchy.leaves():
        ru = hierarchy.rects[u]
        sites = budgets[u].sorted_sites()
        holds = is_internally_filled(Config.from_sites(ru, sites), ru)
        certificate.witnesses.append(
            EventWitness(kind="filled", vertex=u, sites=sites, holds=holds)
        )

    for edge in hierarchy.single_child_edges():
        certificate.witnesses.append(
            _edge_witness(hierarchy, config, budgets[edge[0]], edge, edge in trunk)
        )

    owners: dict[Site, str] = {}
    for witness in certificate.witnesses:
        name = f"vertex {witness.vertex}" if witness.edge is None else f"edge {witness.edge}"
        for site in (*witness.sites, *witness.closed):
            if site in owners and owners[site] != name:
                certificate.collisions.append(f"{owners[site]} and {name} share {site}")
            owners.setdefault(site, name)

    if not certificate.satisfied:
        logger.debug(f"Hierarchy for {hierarchy.root_rect} is not satisfied")
    return certificate
