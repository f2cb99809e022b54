"""Tests for buffers, frames, growth events and the rare-configuration detectors."""

import pytest

from src.droplet_events import (
    Criticality,
    FrameSpec,
    buffer_rect,
    buffers,
    criticality,
    event_d1,
    event_d2,
    fills_from,
    find_long_thin_rectangle,
    find_two_big_rectangles,
    frame,
    norm,
    occur_disjointly_filled,
    xy_counts,
)
from src.dynamics import is_internally_filled
from src.exceptions import PreconditionError
from src.lattice import Config, Direction, Rect
from src.numerics import Constants

INNER = Rect(2, 4, 2, 4)
OUTER = Rect.square(8)


class TestBuffers:
    """Tests for buffer rectangles."""

    def test_buffers_two_deep(self):
        """Buffers are two lines deep when R leaves room."""
        assert buffer_rect(INNER, OUTER, Direction.EAST) == Rect(5, 6, 2, 4)
        assert buffer_rect(INNER, OUTER, Direction.WEST) == Rect(0, 1, 2, 4)
        assert buffer_rect(INNER, OUTER, Direction.NORTH) == Rect(2, 4, 5, 6)
        assert buffer_rect(INNER, OUTER, Direction.SOUTH) == Rect(2, 4, 0, 1)

    def test_buffers_clipped_by_outer(self):
        """Buffers stop at the sides of R."""
        assert buffer_rect(Rect(2, 6, 2, 4), OUTER, Direction.EAST) == Rect(7, 7, 2, 4)
        assert buffer_rect(Rect(2, 7, 2, 4), OUTER, Direction.EAST) is None

    def test_nonempty_set(self):
        """Z lists the directions with room in R."""
        spec = FrameSpec(Rect(0, 1, 0, 1), Rect.square(4))
        _, nonempty, z = buffers(spec)
        assert nonempty == frozenset({Direction.EAST, Direction.NORTH})
        assert z == 2


class TestFrameSpec:
    """Tests for FrameSpec validation."""

    def test_requires_containment(self):
        """S must lie in R."""
        with pytest.raises(PreconditionError):
            FrameSpec(Rect.square(9), OUTER)

    def test_requires_short_side_two(self):
        """Frames need short(S) >= 2."""
        with pytest.raises(PreconditionError):
            FrameSpec(Rect(2, 2, 2, 6), OUTER)

    def test_rejects_non_binary_selection(self):
        """Selections are 0 or 1."""
        with pytest.raises(PreconditionError):
            FrameSpec(INNER, OUTER, {Direction.EAST: 2})

    def test_missing_directions_default_to_zero(self):
        """Unlisted directions are unselected."""
        spec = FrameSpec(INNER, OUTER, {Direction.EAST: 1})
        assert spec.x[Direction.WEST] == 0
        assert spec.selected == frozenset({Direction.EAST})
        assert spec.labels()["+x"] == 1


class TestFrame:
    """Tests for frames and buffer counts."""

    def test_frame_with_corner(self):
        """Two adjacent selected buffers add their shared corner."""
        spec = FrameSpec.selecting(INNER, OUTER, {Direction.EAST, Direction.NORTH})
        framed = frame(spec)
        assert len(framed.square) == 13
        assert (5, 5) in framed.square
        assert (6, 6) not in framed.square
        assert framed.blacksquare == framed.square | frozenset(INNER.sites())
        assert framed.xy_counts == (1, 1)
        assert norm(spec) == 2

    def test_empty_selection_has_empty_frame(self):
        """Nothing selected, nothing framed."""
        framed = frame(FrameSpec(INNER, OUTER))
        assert framed.square == frozenset()
        assert framed.xy_counts == (0, 0)

    def test_selected_empty_buffer_not_counted(self):
        """A selected direction without room counts for nothing."""
        spec = FrameSpec.selecting(Rect(0, 1, 0, 1), Rect.square(4), {Direction.WEST})
        assert xy_counts(spec) == (0, 0)
        assert frame(spec).square == frozenset()


class TestGrowthEvents:
    """Tests for fills_from, D1 and D2 on a 2x2 corner droplet of a 4x4 square."""

    inner = Rect(0, 1, 0, 1)
    outer = Rect.square(4)

    def config(self, *sites):
        return Config.from_sites(self.outer, list(sites))

    def test_fills_from(self):
        """S plus a diagonal fills R."""
        assert fills_from(self.config((2, 2), (3, 3)), self.inner, self.outer)
        assert not fills_from(self.config((3, 3)), self.inner, self.outer)

    def test_unselected_frame(self):
        """With nothing selected D1 and D2 reduce to filling from S."""
        config = self.config((2, 2), (3, 3))
        spec = FrameSpec(self.inner, self.outer)
        assert event_d1(config, spec)
        assert event_d2(config, spec)

    def test_d2_needs_empty_frame(self):
        """An infected frame site breaks D2 but not D1."""
        spec = FrameSpec.selecting(self.inner, self.outer, {Direction.EAST})
        clean = self.config((2, 2), (3, 3))
        dirty = self.config((2, 2), (3, 3), (3, 0))
        assert event_d1(clean, spec) and event_d2(clean, spec)
        assert event_d1(dirty, spec)
        assert not event_d2(dirty, spec)

    def test_d1_ignores_frame_sites(self):
        """A needed site in the corner of the frame does not count for D1."""
        config = self.config((2, 2), (3, 3))
        spec = FrameSpec.selecting(self.inner, self.outer, {Direction.EAST, Direction.NORTH})
        assert (2, 2) in frame(spec).square
        assert fills_from(config, self.inner, self.outer)
        assert not event_d1(config, spec)
        assert not event_d2(config, spec)


class TestCriticality:
    """Tests for the criticality classes."""

    def test_one_critical(self):
        """Moderate short side with a small L1."""
        constants = Constants(p=0.01, L1=1.0)
        assert criticality(Rect.from_dims(10, 20), constants) is Criticality.ONE

    def test_two_critical(self):
        """Short side above B/q."""
        constants = Constants(p=0.01, B=0.5, L1=1.0)
        assert criticality(Rect.from_dims(60, 100), constants) is Criticality.TWO

    def test_neither(self):
        """Too long for either class."""
        constants = Constants(p=0.01, B=0.5, L1=1.0)
        assert criticality(Rect.from_dims(60, 300), constants) is Criticality.NEITHER

    def test_both_impossible(self):
        """Default constants leave both ranges empty at p = 0.01."""
        assert criticality(Rect.square(10), Constants(p=0.01)) is Criticality.BOTH_IMPOSSIBLE


class TestDetectors:
    """Tests for the long-thin, two-big and disjoint-occurrence detectors."""

    def test_long_thin_rectangle(self):
        """A filled 2x2 counts as long and thin at p = 0.3, B = 1."""
        constants = Constants(p=0.3, B=1.0)
        config = Config.from_sites(Rect.square(5), [(1, 1), (2, 2)])
        found = find_long_thin_rectangle(config, config.domain, constants)
        assert found is not None
        assert found.short <= 2 <= found.long
        assert is_internally_filled(config, found)

    def test_no_long_thin_rectangle(self):
        """Nothing infected, nothing found."""
        constants = Constants(p=0.3, B=1.0)
        config = Config.empty(Rect.square(5))
        assert find_long_thin_rectangle(config, config.domain, constants) is None

    def test_two_big_rectangles(self):
        """Two far-apart filled droplets are found when B/q is tiny."""
        constants = Constants(p=0.3, B=0.1)
        config = Config.from_sites(Rect.square(5), [(0, 0), (4, 4)])
        found = find_two_big_rectangles(config, config.domain, constants)
        assert found is not None
        first, second = found
        assert first.intersection(second) is None

    def test_two_big_rectangles_out_of_range(self):
        """Short side B/q beyond R means nothing to find."""
        config = Config.full(Rect.square(5))
        assert find_two_big_rectangles(config, config.domain, Constants(p=0.3)) is None

    def test_disjoint_occurrence_needs_shared_site_once(self):
        """A site in the overlap can serve only one rectangle."""
        domain = Rect.square(3)
        first, second = Rect(0, 1, 0, 1), Rect(1, 2, 1, 2)
        shared = Config.from_sites(domain, [(0, 0), (1, 1), (2, 2)])
        assert not occur_disjointly_filled(shared, first, second)
        separate = Config.from_sites(domain, [(0, 0), (1, 1), (2, 1), (1, 2)])
        assert occur_disjointly_filled(separate, first, second)

    def test_disjoint_occurrence_without_overlap(self):
        """Disjoint rectangles just need to be filled."""
        config = Config.from_sites(Rect.square(3), [(0, 0), (2, 2)])
        assert occur_disjointly_filled(config, Rect(0, 0, 0, 0), Rect(2, 2, 2, 2))
        assert not occur_disjointly_filled(config, Rect(0, 0, 0, 0), Rect(1, 1, 1, 1))

    def test_disjoint_occurrence_overlap_limit(self):
        """Too many infected overlap sites raise."""
        config = Config.full(Rect.square(6))
        with pytest.raises(PreconditionError):
            occur_disjointly_filled(config, Rect.square(5), Rect.square(5))
