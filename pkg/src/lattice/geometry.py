"""Axis-aligned integer rectangles and the four lattice directions."""

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from ..exceptions import InvalidRectangleError

Site = tuple[int, int]


class Direction(Enum):
    """One of the four unit vectors of the square lattice."""

    EAST = (1, 0)
    NORTH = (0, 1)
    WEST = (-1, 0)
    SOUTH = (0, -1)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        """Short label used in JSON documents (``+x``, ``-y``, ...)."""
        sign = "+" if self.dx + self.dy > 0 else "-"
        return sign + ("x" if self.dx else "y")

    @property
    def is_horizontal(self) -> bool:
        return self.dx != 0

    def negate(self) -> "Direction":
        return Direction((-self.dx, -self.dy))

    @classmethod
    def from_label(cls, label: str) -> "Direction":
        for direction in cls:
            if direction.label == label:
                return direction
        raise ValueError(f"Unknown direction label: {label!r}")


class RectMetrics(NamedTuple):
    """Derived measurements of a rectangle."""

    dims: tuple[int, int]
    phi: int
    short: int
    long: int


@dataclass(frozen=True, slots=True)
class Rect:
    """The rectangle [x_lo, x_hi] x [y_lo, y_hi] of lattice sites.

    Bounds are inclusive. Dimensions are reported as (width, height).
    """

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    def __post_init__(self) -> None:
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise InvalidRectangleError(
                f"Empty rectangle [{self.x_lo},{self.x_hi}]x[{self.y_lo},{self.y_hi}]"
            )

    @classmethod
    def from_dims(cls, width: int, height: int, x_lo: int = 0, y_lo: int = 0) -> "Rect":
        """Rectangle with the given dimensions and lower-left corner."""
        return cls(x_lo, x_lo + width - 1, y_lo, y_lo + height - 1)

    @classmethod
    def square(cls, n: int) -> "Rect":
        """The grid [0, n-1]^2."""
        return cls(0, n - 1, 0, n - 1)

    @classmethod
    def from_list(cls, bounds: list[int] | tuple[int, ...]) -> "Rect":
        if len(bounds) != 4:
            raise InvalidRectangleError(f"Expected four bounds, got {bounds!r}")
        return cls(*(int(b) for b in bounds))

    def to_list(self) -> list[int]:
        return [self.x_lo, self.x_hi, self.y_lo, self.y_hi]

    @property
    def width(self) -> int:
        return self.x_hi - self.x_lo + 1

    @property
    def height(self) -> int:
        return self.y_hi - self.y_lo + 1

    @property
    def dims(self) -> tuple[int, int]:
        return (self.width, self.height)

    @property
    def phi(self) -> int:
        """Semi-perimeter."""
        return self.width + self.height

    @property
    def short(self) -> int:
        return min(self.width, self.height)

    @property
    def long(self) -> int:
        return max(self.width, self.height)

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def corner(self) -> Site:
        return (self.x_lo, self.y_lo)

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        """Lexicographic order on the lower-left corner, then the upper-right."""
        return (self.x_lo, self.y_lo, self.x_hi, self.y_hi)

    def contains(self, site: Site) -> bool:
        x, y = site
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def __contains__(self, site: object) -> bool:
        return isinstance(site, tuple) and len(site) == 2 and self.contains(site)

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x_lo <= other.x_lo
            and other.x_hi <= self.x_hi
            and self.y_lo <= other.y_lo
            and other.y_hi <= self.y_hi
        )

    def sites(self) -> Iterator[Site]:
        """Sites in lexicographic (x, then y) order."""
        for x in range(self.x_lo, self.x_hi + 1):
            for y in range(self.y_lo, self.y_hi + 1):
                yield (x, y)

    def span(self, other: "Rect") -> "Rect":
        """Smallest rectangle containing both."""
        return Rect(
            min(self.x_lo, other.x_lo),
            max(self.x_hi, other.x_hi),
            min(self.y_lo, other.y_lo),
            max(self.y_hi, other.y_hi),
        )

    def intersection(self, other: "Rect") -> "Rect | None":
        x_lo, x_hi = max(self.x_lo, other.x_lo), min(self.x_hi, other.x_hi)
        y_lo, y_hi = max(self.y_lo, other.y_lo), min(self.y_hi, other.y_hi)
        if x_lo > x_hi or y_lo > y_hi:
            return None
        return Rect(x_lo, x_hi, y_lo, y_hi)

    def l1_gap(self, other: "Rect") -> int:
        """Graph distance between the nearest sites of the two rectangles."""
        gap_x = max(0, other.x_lo - self.x_hi, self.x_lo - other.x_hi)
        gap_y = max(0, other.y_lo - self.y_hi, self.y_lo - other.y_hi)
        return gap_x + gap_y

    def translate(self, dx: int, dy: int) -> "Rect":
        return Rect(self.x_lo + dx, self.x_hi + dx, self.y_lo + dy, self.y_hi + dy)

    def transpose(self) -> "Rect":
        return Rect(self.y_lo, self.y_hi, self.x_lo, self.x_hi)

    def side(self, direction: Direction) -> int:
        """Coordinate of the boundary line facing ``direction``."""
        if direction is Direction.EAST:
            return self.x_hi
        if direction is Direction.WEST:
            return self.x_lo
        if direction is Direction.NORTH:
            return self.y_hi
        return self.y_lo

    def grow(self, direction: Direction, amount: int = 1) -> "Rect":
        """Push the side facing ``direction`` outwards by ``amount``."""
        if direction is Direction.EAST:
            return Rect(self.x_lo, self.x_hi + amount, self.y_lo, self.y_hi)
        if direction is Direction.WEST:
            return Rect(self.x_lo - amount, self.x_hi, self.y_lo, self.y_hi)
        if direction is Direction.NORTH:
            return Rect(self.x_lo, self.x_hi, self.y_lo, self.y_hi + amount)
        return Rect(self.x_lo, self.x_hi, self.y_lo - amount, self.y_hi)

    def __str__(self) -> str:
        return f"[{self.x_lo},{self.x_hi}]x[{self.y_lo},{self.y_hi}]"


def rect_metrics(rect: Rect) -> RectMetrics:
    """Dimensions, semi-perimeter, short and long side of ``rect``."""
    return RectMetrics(rect.dims, rect.phi, rect.short, rect.long)


def side_distances(inner: Rect, outer: Rect) -> tuple[dict[Direction, int], int]:
    """Distance from each side of ``inner`` to the matching side of ``outer``.

    Args:
        inner: Rectangle S, which must lie inside ``outer``
        outer: Rectangle R

    Returns:
        Per-direction distances and their maximum d(S, R)

    Raises:
        InvalidRectangleError: If S is not contained in R
    """
    if not outer.contains_rect(inner):
        raise InvalidRectangleError(f"{inner} is not contained in {outer}")

    distances = {
        direction: abs(outer.side(direction) - inner.side(direction))
        for direction in Direction
    }
    return distances, max(distances.values())


def span_closure(first: Rect, second: Rect) -> Rect | None:
    """Closure of two completely infected rectangles, when it is a rectangle.

    Two full rectangles within graph distance 2 of each other infect their
    bounding rectangle. Farther apart, no site outside them has two infected
    neighbours and the closure is just the (non-rectangular) union.
    """
    if first.l1_gap(second) <= 2:
        return first.span(second)
    return None
