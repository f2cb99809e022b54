"""Tests for the JSON documents."""

import json

import pytest
from pydantic import ValidationError

from src.droplet_events import FrameSpec
from src.exceptions import SerializationError
from src.hierarchy import build_hierarchy
from src.lattice import Config, Direction, Rect
from src.models import (
    ConfigDocument,
    EstimateRow,
    FrameSpecDocument,
    HierarchyDocument,
    read_document,
)
from src.montecarlo import Estimate


class TestConfigDocument:
    """Tests for ConfigDocument."""

    def test_round_trip(self):
        """Configurations survive a trip through JSON."""
        config = Config.from_sites(Rect(1, 4, 0, 2), [(1, 0), (3, 2)])
        document = ConfigDocument.from_domain(config)
        assert document.domain == [1, 4, 0, 2]
        parsed = ConfigDocument.model_validate_json(document.model_dump_json())
        assert parsed.to_domain() == config

    def test_empty_domain_rejected(self):
        """Inverted bounds fail validation."""
        with pytest.raises(ValidationError):
            ConfigDocument(domain=[3, 1, 0, 0])
        with pytest.raises(ValidationError):
            ConfigDocument(domain=[0, 1, 0])

    def test_site_outside_domain(self):
        """Sites outside the domain raise SerializationError."""
        document = ConfigDocument(domain=[0, 1, 0, 1], infected=[(5, 5)])
        with pytest.raises(SerializationError):
            document.to_domain()


class TestFrameSpecDocument:
    """Tests for FrameSpecDocument."""

    def test_to_domain(self):
        """Direction labels map to directions."""
        document = FrameSpecDocument(s=[2, 4, 2, 4], r=[0, 7, 0, 7], x={"+x": 1, "+y": 1})
        spec = document.to_domain()
        assert spec.selected == frozenset({Direction.EAST, Direction.NORTH})
        assert FrameSpecDocument.from_domain(spec).x == {"+x": 1, "-x": 0, "+y": 1, "-y": 0}

    def test_rejects_unknown_direction(self):
        """Only the four lattice directions are allowed."""
        with pytest.raises(ValidationError):
            FrameSpecDocument(s=[0, 1, 0, 1], r=[0, 3, 0, 3], x={"north": 1})

    def test_rejects_non_binary(self):
        """Selections are 0 or 1."""
        with pytest.raises(ValidationError):
            FrameSpecDocument(s=[0, 1, 0, 1], r=[0, 3, 0, 3], x={"+x": 2})

    def test_inner_outside_outer(self):
        """S must lie in R."""
        document = FrameSpecDocument(s=[0, 5, 0, 5], r=[0, 3, 0, 3])
        with pytest.raises(SerializationError):
            document.to_domain()

    def test_from_spec(self):
        """Specs serialise their rectangles as lists."""
        spec = FrameSpec(Rect(1, 2, 1, 2), Rect.square(4))
        document = FrameSpecDocument.from_domain(spec)
        assert document.s == [1, 2, 1, 2]
        assert document.r == [0, 3, 0, 3]


class TestHierarchyDocument:
    """Tests for HierarchyDocument."""

    def test_round_trip(self, diagonal, constants):
        """A built hierarchy survives serialisation."""
        config = diagonal(8)
        hierarchy = build_hierarchy(config, config.domain, constants)
        document = HierarchyDocument.from_domain(hierarchy)
        assert document.root == [0, 7, 0, 7]
        assert document.vertices[0].trunk
        assert sum(edge.trunk for edge in document.edges) == len(hierarchy.trunk())
        parsed = HierarchyDocument.model_validate_json(document.model_dump_json())
        assert parsed.to_domain() == hierarchy

    def test_labels_round_trip(self, diagonal, wide_constants):
        """Selected buffers are kept."""
        config = diagonal(12)
        hierarchy = build_hierarchy(config, config.domain, wide_constants)
        rebuilt = HierarchyDocument.from_domain(hierarchy).to_domain()
        assert rebuilt.label(0, 1) == hierarchy.label(0, 1)
        assert rebuilt.label(0, 1)[Direction.NORTH] == 1

    def test_root_must_match(self):
        """Vertex 0 carries the root."""
        document = HierarchyDocument(
            root=[0, 3, 0, 3], vertices=[{"id": 0, "rect": [0, 2, 0, 2]}]
        )
        with pytest.raises(SerializationError):
            document.to_domain()

    def test_ids_must_be_contiguous(self):
        """Vertex ids are 0..n-1."""
        document = HierarchyDocument(
            root=[0, 3, 0, 3],
            vertices=[{"id": 0, "rect": [0, 3, 0, 3]}, {"id": 2, "rect": [0, 1, 0, 1]}],
        )
        with pytest.raises(SerializationError):
            document.to_domain()

    def test_stray_edge(self):
        """Edges must match the children lists."""
        document = HierarchyDocument(
            root=[0, 3, 0, 3],
            vertices=[
                {"id": 0, "rect": [0, 3, 0, 3], "children": [1]},
                {"id": 1, "rect": [0, 1, 0, 1]},
            ],
            edges=[{"parent": 1, "child": 0}],
        )
        with pytest.raises(SerializationError):
            document.to_domain()

    def test_two_parents(self):
        """A vertex cannot hang under two parents."""
        document = HierarchyDocument(
            root=[0, 3, 0, 3],
            vertices=[
                {"id": 0, "rect": [0, 3, 0, 3], "children": [1, 2]},
                {"id": 1, "rect": [0, 2, 0, 2], "children": [2]},
                {"id": 2, "rect": [0, 1, 0, 1]},
            ],
        )
        with pytest.raises(SerializationError):
            document.to_domain()

    @pytest.mark.parametrize(
        "children",
        [[[], [2], [1]], [[], [], []]],
        ids=["cycle", "orphans"],
    )
    def test_unreachable_vertices(self, children):
        """Every vertex must hang below vertex 0."""
        document = HierarchyDocument(
            root=[0, 3, 0, 3],
            vertices=[
                {"id": 0, "rect": [0, 3, 0, 3], "children": children[0]},
                {"id": 1, "rect": [0, 1, 0, 1], "children": children[1]},
                {"id": 2, "rect": [0, 1, 0, 1], "children": children[2]},
            ],
        )
        with pytest.raises(SerializationError, match=r"\[1, 2\] are not reachable"):
            document.to_domain()

    def test_needs_a_vertex(self):
        """At least the root is listed."""
        with pytest.raises(ValidationError):
            HierarchyDocument(root=[0, 1, 0, 1], vertices=[])


class TestEstimateRow:
    """Tests for EstimateRow."""

    def test_columns(self):
        """Columns come in output order."""
        assert EstimateRow.columns() == [
            "event",
            "n_or_dims",
            "p",
            "trials",
            "p_hat",
            "ci_lo",
            "ci_hi",
            "seed",
            "runtime_ms",
        ]

    def test_from_estimate(self):
        """Region becomes n_or_dims."""
        estimate = Estimate.from_counts("filled", "4x4", 0.2, 3, 10, seed=1)
        row = EstimateRow.from_estimate(estimate)
        assert row.n_or_dims == "4x4"
        assert row.p_hat == pytest.approx(0.3)
        assert row.runtime_ms is None


class TestReadDocument:
    """Tests for read_document."""

    def test_reads_file(self, temp_dir):
        """Valid files parse into the model."""
        path = temp_dir / "config.json"
        path.write_text(json.dumps({"domain": [0, 2, 0, 2], "infected": [[1, 1]]}))
        document = read_document(str(path), ConfigDocument)
        assert document.to_domain().sorted_sites() == [(1, 1)]

    def test_missing_file(self, temp_dir):
        """Missing files raise SerializationError."""
        with pytest.raises(SerializationError):
            read_document(str(temp_dir / "absent.json"), ConfigDocument)

    def test_invalid_json(self, temp_dir):
        """Malformed JSON raises SerializationError."""
        path = temp_dir / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SerializationError):
            read_document(str(path), ConfigDocument)

    def test_wrong_shape(self, temp_dir):
        """Valid JSON of the wrong shape raises SerializationError."""
        path = temp_dir / "wrong.json"
        path.write_text(json.dumps({"domain": "everywhere"}))
        with pytest.raises(SerializationError):
            read_document(str(path), ConfigDocument)
