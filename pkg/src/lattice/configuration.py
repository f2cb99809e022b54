"""Dense infected-site configurations over a rectangular domain."""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..exceptions import InvalidRectangleError
from .geometry import Rect, Site

BoolGrid = npt.NDArray[np.bool_]


@dataclass(frozen=True, eq=False)
class Config:
    """A set of infected sites inside ``domain``.

    The grid is indexed ``grid[x - domain.x_lo, y - domain.y_lo]`` and is
    read-only once the configuration exists.
    """

    domain: Rect
    grid: BoolGrid

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=bool, copy=True)
        if grid.shape != self.domain.dims:
            raise InvalidRectangleError(
                f"Grid shape {grid.shape} does not match domain dims {self.domain.dims}"
            )
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)

    @classmethod
    def empty(cls, domain: Rect) -> "Config":
        return cls(domain, np.zeros(domain.dims, dtype=bool))

    @classmethod
    def full(cls, domain: Rect) -> "Config":
        return cls(domain, np.ones(domain.dims, dtype=bool))

    @classmethod
    def from_sites(cls, domain: Rect, sites: Iterable[Site]) -> "Config":
        """Build a configuration from explicit site coordinates.

        Raises:
            InvalidRectangleError: If a site lies outside the domain
        """
        grid = np.zeros(domain.dims, dtype=bool)
        for x, y in sites:
            if not domain.contains((x, y)):
                raise InvalidRectangleError(f"Site {(x, y)} outside domain {domain}")
            grid[x - domain.x_lo, y - domain.y_lo] = True
        return cls(domain, grid)

    @classmethod
    def from_rects(cls, domain: Rect, rects: Iterable[Rect]) -> "Config":
        """Configuration whose infected set is the union of ``rects``."""
        grid = np.zeros(domain.dims, dtype=bool)
        for rect in rects:
            if not domain.contains_rect(rect):
                raise InvalidRectangleError(f"{rect} outside domain {domain}")
            grid[cls._slices(domain, rect)] = True
        return cls(domain, grid)

    @staticmethod
    def _slices(domain: Rect, rect: Rect) -> tuple[slice, slice]:
        return (
            slice(rect.x_lo - domain.x_lo, rect.x_hi - domain.x_lo + 1),
            slice(rect.y_lo - domain.y_lo, rect.y_hi - domain.y_lo + 1),
        )

    def window(self, rect: Rect) -> BoolGrid:
        """Read-only view of the part of the grid covering ``rect``."""
        if not self.domain.contains_rect(rect):
            raise InvalidRectangleError(f"{rect} outside domain {self.domain}")
        return self.grid[self._slices(self.domain, rect)]

    @property
    def count(self) -> int:
        return int(self.grid.sum())

    def __len__(self) -> int:
        return self.count

    @property
    def infected(self) -> frozenset[Site]:
        xs, ys = np.nonzero(self.grid)
        return frozenset(
            (int(x) + self.domain.x_lo, int(y) + self.domain.y_lo)
            for x, y in zip(xs, ys, strict=True)
        )

    def sorted_sites(self) -> list[Site]:
        """Infected sites in lexicographic order."""
        # np.nonzero on a C-ordered (x, y) grid already yields x-major order
        xs, ys = np.nonzero(self.grid)
        return [
            (int(x) + self.domain.x_lo, int(y) + self.domain.y_lo)
            for x, y in zip(xs, ys, strict=True)
        ]

    def __contains__(self, site: object) -> bool:
        if not (isinstance(site, tuple) and len(site) == 2):
            return False
        if not self.domain.contains(site):
            return False
        x, y = site
        return bool(self.grid[x - self.domain.x_lo, y - self.domain.y_lo])

    def is_full(self) -> bool:
        return bool(self.grid.all())

    def restrict(self, rect: Rect) -> "Config":
        """A∩R as a configuration whose domain is ``rect``."""
        return Config(rect, self.window(rect))

    def embed(self, domain: Rect) -> "Config":
        """The same infected set viewed inside a larger domain."""
        if not domain.contains_rect(self.domain):
            raise InvalidRectangleError(f"{self.domain} outside domain {domain}")
        grid = np.zeros(domain.dims, dtype=bool)
        grid[self._slices(domain, self.domain)] = self.grid
        return Config(domain, grid)

    def with_sites(self, sites: Iterable[Site]) -> "Config":
        grid = self.grid.copy()
        for x, y in sites:
            if not self.domain.contains((x, y)):
                raise InvalidRectangleError(f"Site {(x, y)} outside domain {self.domain}")
            grid[x - self.domain.x_lo, y - self.domain.y_lo] = True
        return Config(self.domain, grid)

    def without_sites(self, sites: Iterable[Site]) -> "Config":
        grid = self.grid.copy()
        for x, y in sites:
            if self.domain.contains((x, y)):
                grid[x - self.domain.x_lo, y - self.domain.y_lo] = False
        return Config(self.domain, grid)

    def with_rect(self, rect: Rect) -> "Config":
        """Infect every site of ``rect``."""
        if not self.domain.contains_rect(rect):
            raise InvalidRectangleError(f"{rect} outside domain {self.domain}")
        grid = self.grid.copy()
        grid[self._slices(self.domain, rect)] = True
        return Config(self.domain, grid)

    def without_rect(self, rect: Rect) -> "Config":
        """Clear every site of ``rect`` that lies in the domain."""
        overlap = self.domain.intersection(rect)
        if overlap is None:
            return self
        grid = self.grid.copy()
        grid[self._slices(self.domain, overlap)] = False
        return Config(self.domain, grid)

    def union(self, other: "Config") -> "Config":
        self._check_same_domain(other)
        return Config(self.domain, self.grid | other.grid)

    def issubset(self, other: "Config") -> bool:
        self._check_same_domain(other)
        return not bool((self.grid & ~other.grid).any())

    def _check_same_domain(self, other: "Config") -> None:
        if self.domain != other.domain:
            raise InvalidRectangleError(
                f"Domains differ: {self.domain} and {other.domain}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Config):
            return NotImplemented
        return self.domain == other.domain and bool(
            np.array_equal(self.grid, other.grid)
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.grid.tobytes()))

    def __repr__(self) -> str:
        return f"Config(domain={self.domain}, infected={self.count})"
