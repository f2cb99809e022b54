"""Hierarchies: rooted out-trees of nested rectangles with labelled edges."""

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass, field

from ..lattice import Direction, Rect

Edge = tuple[int, int]
Label = dict[Direction, int]

ROOT = 0


def zero_label() -> Label:
    return {direction: 0 for direction in Direction}


def label_norm(label: Label, nonempty: frozenset[Direction]) -> int:
    """Number of selected directions whose buffer is non-empty."""
    return sum(bit for direction, bit in label.items() if direction in nonempty)


def primary_key(rect: Rect) -> tuple[int, tuple[int, int, int, int]]:
    """Order on split children: larger short side first, then smaller corner."""
    return (-rect.short, rect.sort_key)


@dataclass(frozen=True)
class Hierarchy:
    """A hierarchy for ``rects[0]``.

    Vertex ``u`` is labelled ``rects[u]`` and has out-neighbours
    ``children[u]``. Edge labels default to the zero vector.
    """

    rects: tuple[Rect, ...]
    children: tuple[tuple[int, ...], ...]
    labels: dict[Edge, Label] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.rects) != len(self.children):
            raise ValueError("rects and children must have one entry per vertex")
        if not self.rects:
            raise ValueError("A hierarchy has at least one vertex")

    @property
    def root_rect(self) -> Rect:
        return self.rects[ROOT]

    @property
    def size(self) -> int:
        return len(self.rects)

    def vertices(self) -> range:
        return range(len(self.rects))

    def edges(self) -> list[Edge]:
        return [(u, v) for u in self.vertices() for v in self.children[u]]

    def label(self, u: int, v: int) -> Label:
        return zero_label() | self.labels.get((u, v), {})

    def is_leaf(self, u: int) -> bool:
        return not self.children[u]

    def leaves(self) -> list[int]:
        return [u for u in self.vertices() if self.is_leaf(u)]

    def split_vertices(self) -> list[int]:
        return [u for u in self.vertices() if len(self.children[u]) == 2]

    def single_child_edges(self) -> list[Edge]:
        return [(u, self.children[u][0]) for u in self.vertices() if len(self.children[u]) == 1]

    def parents(self) -> dict[int, int]:
        return {v: u for u, v in self.edges()}

    def ordered_children(self, u: int) -> tuple[int, ...]:
        """Children of ``u``, the trunk-side child first."""
        return tuple(sorted(self.children[u], key=lambda v: primary_key(self.rects[v])))

    def trunk(self) -> list[Edge]:
        """Edges of the root-to-leaf path through the larger-short-side children."""
        path: list[Edge] = []
        u = ROOT
        while self.children[u]:
            v = self.ordered_children(u)[0]
            path.append((u, v))
            u = v
        return path

    def trunk_vertices(self) -> list[int]:
        return [ROOT] + [v for _, v in self.trunk()]

    def walk(self, start: int = ROOT) -> Iterator[int]:
        """Pre-order traversal from ``start``."""
        stack = [start]
        while stack:
            u = stack.pop()
            yield u
            stack.extend(reversed(self.children[u]))

    def reachable(self, start: int = ROOT) -> set[int]:
        """Vertices reachable from ``start`` along child edges, cycles included."""
        seen = {start}
        queue = deque([start])
        while queue:
            for v in self.children[queue.popleft()]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def height(self) -> int:
        """Number of vertices on the longest root-to-leaf path."""
        depth = {ROOT: 1}
        for u in self.walk():
            for v in self.children[u]:
                depth[v] = depth[u] + 1
        return max(depth.values())

    def subtree_leaves(self, u: int) -> list[int]:
        return [w for w in self.walk(u) if self.is_leaf(w)]


@dataclass
class HierarchyBuilder:
    """Mutable accumulator used while assembling a :class:`Hierarchy`."""

    rects: list[Rect] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)
    labels: dict[Edge, Label] = field(default_factory=dict)

    def add_vertex(self, rect: Rect) -> int:
        self.rects.append(rect)
        self.children.append([])
        return len(self.rects) - 1

    def add_edge(self, u: int, v: int, label: Label | None = None) -> None:
        self.children[u].append(v)
        if label and any(label.values()):
            self.labels[(u, v)] = dict(label)

    def freeze(self) -> Hierarchy:
        return Hierarchy(
            rects=tuple(self.rects),
            children=tuple(tuple(c) for c in self.children),
            labels=dict(self.labels),
        )


def trunk(hierarchy: Hierarchy) -> list[Edge]:
    """Root-to-leaf edges through the larger-short-side children."""
    return hierarchy.trunk()
