"""JSON documents for configurations, frame specifications, hierarchies and estimate rows."""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator

from ..droplet_events import FrameSpec
from ..exceptions import BootstrapPercolationError, SerializationError
from ..hierarchy import Hierarchy
from ..lattice import Config, Direction, Rect
from ..montecarlo import Estimate

RectList = list[int]


def _check_rect(v: list[int]) -> list[int]:
    if len(v) != 4:
        raise ValueError("A rectangle is [x_lo, x_hi, y_lo, y_hi]")
    if v[0] > v[1] or v[2] > v[3]:
        raise ValueError(f"Empty rectangle {v}")
    return v


def _check_label(v: dict[str, int]) -> dict[str, int]:
    labels = {d.label for d in Direction}
    unknown = set(v) - labels
    if unknown:
        raise ValueError(f"Unknown directions {sorted(unknown)}; use {sorted(labels)}")
    if any(bit not in (0, 1) for bit in v.values()):
        raise ValueError("Direction selections must be 0 or 1")
    return v


def _label_to_domain(v: dict[str, int]) -> dict[Direction, int]:
    return {Direction.from_label(key): bit for key, bit in v.items()}


def _label_from_domain(label: dict[Direction, int]) -> dict[str, int]:
    return {d.label: label.get(d, 0) for d in Direction}


class ConfigDocument(BaseModel):
    """An infected set inside a rectangular domain."""

    domain: RectList = Field(..., description="[x_lo, x_hi, y_lo, y_hi]")
    infected: list[tuple[int, int]] = Field(default_factory=list, description="Infected sites")

    @field_validator("domain")
    @classmethod
    def validate_domain(cls, v: list[int]) -> list[int]:
        return _check_rect(v)

    @classmethod
    def from_domain(cls, config: Config) -> "ConfigDocument":
        return cls(domain=config.domain.to_list(), infected=config.sorted_sites())

    def to_domain(self) -> Config:
        try:
            return Config.from_sites(Rect.from_list(self.domain), self.infected)
        except BootstrapPercolationError as e:
            raise SerializationError(f"Invalid configuration document: {e}") from e


class FrameSpecDocument(BaseModel):
    """Nested rectangles S in R with a buffer selection."""

    s: RectList
    r: RectList
    x: dict[str, int] = Field(default_factory=dict, description="Selection per direction label")

    @field_validator("s", "r")
    @classmethod
    def validate_rects(cls, v: list[int]) -> list[int]:
        return _check_rect(v)

    @field_validator("x")
    @classmethod
    def validate_x(cls, v: dict[str, int]) -> dict[str, int]:
        return _check_label(v)

    @classmethod
    def from_domain(cls, spec: FrameSpec) -> "FrameSpecDocument":
        return cls(s=spec.s.to_list(), r=spec.r.to_list(), x=spec.labels())

    def to_domain(self) -> FrameSpec:
        try:
            return FrameSpec(
                Rect.from_list(self.s), Rect.from_list(self.r), _label_to_domain(self.x)
            )
        except BootstrapPercolationError as e:
            raise SerializationError(f"Invalid frame document: {e}") from e


class VertexDocument(BaseModel):
    id: int = Field(..., ge=0)
    rect: RectList
    children: list[int] = Field(default_factory=list)
    trunk: bool = False

    @field_validator("rect")
    @classmethod
    def validate_rect(cls, v: list[int]) -> list[int]:
        return _check_rect(v)


class EdgeDocument(BaseModel):
    parent: int = Field(..., ge=0)
    child: int = Field(..., ge=0)
    x: dict[str, int] = Field(default_factory=dict)
    trunk: bool = False

    @field_validator("x")
    @classmethod
    def validate_x(cls, v: dict[str, int]) -> dict[str, int]:
        return _check_label(v)


class HierarchyDocument(BaseModel):
    """A hierarchy with its trunk marked; vertex 0 is the root."""

    root: RectList
    vertices: list[VertexDocument] = Field(..., min_length=1)
    edges: list[EdgeDocument] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, hierarchy: Hierarchy) -> "HierarchyDocument":
        trunk_edges = set(hierarchy.trunk())
        trunk_vertices = set(hierarchy.trunk_vertices())
        return cls(
            root=hierarchy.root_rect.to_list(),
            vertices=[
                VertexDocument(
                    id=u,
                    rect=hierarchy.rects[u].to_list(),
                    children=list(hierarchy.children[u]),
                    trunk=u in trunk_vertices,
                )
                for u in hierarchy.vertices()
            ],
            edges=[
                EdgeDocument(
                    parent=u,
                    child=v,
                    x=_label_from_domain(hierarchy.label(u, v)),
                    trunk=(u, v) in trunk_edges,
                )
                for u, v in hierarchy.edges()
            ],
        )

    def to_domain(self) -> Hierarchy:
        """Rebuild the hierarchy; trunk flags are recomputed, not trusted."""
        ids = sorted(vertex.id for vertex in self.vertices)
        if ids != list(range(len(self.vertices))):
            raise SerializationError("Vertex ids must be 0..n-1")
        ordered = sorted(self.vertices, key=lambda vertex: vertex.id)
        if ordered[0].rect != self.root:
            raise SerializationError("Vertex 0 must carry the root rectangle")

        children = [list(vertex.children) for vertex in ordered]
        listed = {(e.parent, e.child) for e in self.edges}
        implied = {(u, v) for u, kids in enumerate(children) for v in kids}
        if listed - implied:
            stray = sorted(listed - implied)
            raise SerializationError(f"Edges {stray} are not parent-child pairs")
        seen_children = [v for kids in children for v in kids]
        if len(seen_children) != len(set(seen_children)) or 0 in seen_children:
            raise SerializationError("Every non-root vertex needs exactly one parent")
        if any(not 0 <= v < len(ordered) for v in seen_children):
            raise SerializationError("Child ids must refer to listed vertices")

        try:
            hierarchy = Hierarchy(
                rects=tuple(Rect.from_list(vertex.rect) for vertex in ordered),
                children=tuple(tuple(kids) for kids in children),
                labels={
                    (e.parent, e.child): _label_to_domain(e.x)
                    for e in self.edges
                    if any(e.x.values())
                },
            )
        except (BootstrapPercolationError, ValueError) as e:
            raise SerializationError(f"Invalid hierarchy document: {e}") from e

        unreached = sorted(set(hierarchy.vertices()) - hierarchy.reachable())
        if unreached:
            raise SerializationError(f"Vertices {unreached} are not reachable from vertex 0")
        return hierarchy


class EstimateRow(BaseModel):
    """One CSV row of an estimate."""

    event: str
    n_or_dims: str
    p: float
    trials: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    seed: int
    runtime_ms: float | None = None

    @classmethod
    def columns(cls) -> list[str]:
        return list(cls.model_fields)

    @classmethod
    def from_estimate(cls, estimate: Estimate) -> "EstimateRow":
        return cls(
            event=estimate.event,
            n_or_dims=estimate.region,
            p=estimate.p,
            trials=estimate.trials,
            p_hat=estimate.p_hat,
            ci_lo=estimate.ci_lo,
            ci_hi=estimate.ci_hi,
            seed=estimate.seed,
            runtime_ms=estimate.runtime_ms,
        )


def read_document(path: str, model: type[BaseModel]) -> Any:
    """Parse a JSON file into ``model``.

    Raises:
        SerializationError: If the file is missing or does not validate
    """
    path_obj = Path(path)
    try:
        with open(path_obj) as f:
            return model.model_validate(json.load(f))
    except FileNotFoundError as e:
        raise SerializationError(f"No such file: {path_obj}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise SerializationError(f"{path_obj} is not a valid {model.__name__}: {e}") from e
