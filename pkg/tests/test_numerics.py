"""Tests for the threshold function, growth costs, constants and bounds."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.droplet_events import FrameSpec
from src.exceptions import InvalidRectangleError, PreconditionError
from src.lattice import Direction, Rect
from src.numerics import (
    LAMBDA_EXACT,
    BoundReport,
    Constants,
    additive_cost,
    beta,
    cor_key_bound,
    crossing_bounds,
    diagonal_cost,
    droplet_bound,
    f_scale,
    g,
    g_antiderivative,
    g_integral,
    growth_cost,
    j_functional,
    key_big_bound,
    key_small_bound,
    lambda_constant,
    lambda_with_tail,
    leaving_diagonal_check,
    log_ratio_bound_holds,
    offdiagonal_lower_bound,
    path_cost,
    pc_lower_bound,
    seeds_bound,
    slope_bound_holds,
    small_z_bounds,
    tail_integral_bound_holds,
    thin_rectangle_bound,
    threshold_integral_check,
    two_big_rectangles_bound,
    u_lower_bound,
)


class TestThresholdFunction:
    """Tests for beta, g and its integral."""

    def test_beta_endpoints(self):
        """beta(0) = 0 and beta(1) = 1."""
        assert beta(0.0) == 0.0
        assert beta(1.0) == pytest.approx(1.0)
        with pytest.raises(PreconditionError):
            beta(1.5)

    def test_g_positive_and_decreasing(self):
        """g is positive and strictly decreasing."""
        values = g(np.linspace(0.01, 8.0, 200))
        assert (values > 0).all()
        assert (np.diff(values) < 0).all()

    def test_g_array_matches_scalar(self):
        """The vectorised and scalar paths agree."""
        zs = [0.05, 0.5, 0.999, 1.0, 1.5, 6.0]
        array = g(np.array(zs))
        for z, value in zip(zs, array, strict=True):
            assert value == pytest.approx(g(z), rel=1e-12)

    def test_g_continuous_at_switch(self):
        """The two formulas meet at z = 1."""
        assert g(1.0 - 1e-12) == pytest.approx(g(1.0 + 1e-12), rel=1e-9)

    def test_g_domain(self):
        """g needs z > 0."""
        with pytest.raises(PreconditionError):
            g(0.0)
        with pytest.raises(PreconditionError):
            g(np.array([1.0, -1.0]))

    def test_lambda(self):
        """The integral of g is pi^2/18."""
        assert lambda_constant() == pytest.approx(LAMBDA_EXACT, abs=1e-8)
        estimate, partial, tail = lambda_with_tail(10.0)
        assert partial < estimate < partial + tail
        assert estimate == pytest.approx(LAMBDA_EXACT, abs=1e-8)

    def test_integral_additivity(self):
        """Integrals over adjacent intervals add up."""
        assert g_integral(0.0, 2.0) == pytest.approx(
            g_integral(0.0, 0.7) + g_integral(0.7, 2.0), rel=1e-10
        )
        assert g_antiderivative(3.0) == pytest.approx(g_integral(0.0, 3.0), rel=1e-10)
        assert g_integral(1.0, 1.0) == 0.0
        with pytest.raises(PreconditionError):
            g_integral(2.0, 1.0)

    @pytest.mark.parametrize("z", [0.001, 0.01, 0.05])
    def test_small_z_sandwich(self, z):
        """-log(z)/2 - sqrt(z) <= g(z) <= -log(z)/2 + z."""
        lower, upper = small_z_bounds(z)
        assert lower <= g(z) <= upper

    @pytest.mark.parametrize("z", [0.01, 0.1, 1.0, 5.0])
    def test_log_ratio_bound(self, z):
        """e^{2g(z)} <= C/z with C = 50."""
        assert log_ratio_bound_holds(z, 50.0)

    @pytest.mark.parametrize("z", [0.1, 1.0, 3.0])
    def test_slope_bound(self, z):
        """Slope bounds hold for B = 5."""
        assert slope_bound_holds(z, 5.0)

    def test_tail_integral_bound(self):
        """The tail bound is only claimed from B on."""
        assert tail_integral_bound_holds(2.0, 5.0) is None
        assert tail_integral_bound_holds(6.0, 5.0) is True


class TestGrowthCosts:
    """Tests for W, U, Q and the closed forms."""

    q = 0.1

    def test_straight_paths(self):
        """Axis-parallel paths have constant rate."""
        assert path_cost((0.5, 1.0), (0.5, 2.0)) == pytest.approx(g(0.5) * 1.0)
        assert path_cost((0.5, 1.0), (1.5, 1.0)) == pytest.approx(g(1.0) * 1.0)
        assert path_cost((0.5, 1.0), (0.5, 1.0)) == 0.0

    def test_path_preconditions(self):
        """Paths must go up and right from a positive point."""
        with pytest.raises(PreconditionError):
            path_cost((1.0, 1.0), (0.5, 2.0))
        with pytest.raises(PreconditionError):
            path_cost((0.0, 1.0), (1.0, 2.0))

    def test_path_cost_below_corner_paths(self):
        """The optimum is at most either L-shaped path."""
        a, b = (0.2, 0.3), (0.9, 1.4)
        cost = path_cost(a, b)
        right_then_up = g(a[1]) * (b[0] - a[0]) + g(b[0]) * (b[1] - a[1])
        up_then_right = g(a[0]) * (b[1] - a[1]) + g(b[1]) * (b[0] - a[0])
        assert cost <= min(right_then_up, up_then_right) + 1e-9

    def test_path_cost_symmetric(self):
        """Swapping the axes does not change the cost."""
        assert path_cost((0.2, 0.3), (0.9, 1.4)) == pytest.approx(
            path_cost((0.3, 0.2), (1.4, 0.9)), rel=1e-4
        )

    def test_diagonal_closed_form(self):
        """U/q matches the closed form when long(S) <= short(R)."""
        inner, outer = Rect.from_dims(2, 3), Rect.from_dims(5, 8)
        assert growth_cost(inner, outer, self.q) / self.q == pytest.approx(
            diagonal_cost(inner, outer, self.q), rel=1e-4
        )

    def test_diagonal_closed_form_precondition(self):
        """The closed form needs long(S) <= short(R)."""
        with pytest.raises(PreconditionError):
            diagonal_cost(Rect.from_dims(2, 6), Rect.from_dims(5, 8), self.q)

    def test_additive_cost(self):
        """Q(S, R) = s g((b - t)q) + t g((a - s)q)."""
        inner, outer = Rect.from_dims(3, 4), Rect.from_dims(5, 7)
        expected = 2 * g(0.4) + 3 * g(0.3)
        assert additive_cost(inner, outer, self.q) == pytest.approx(expected)

    def test_growth_cost_below_additive_cost(self):
        """U(S, R) <= q Q(S, R)."""
        inner, outer = Rect.from_dims(3, 4), Rect.from_dims(5, 7)
        assert growth_cost(inner, outer, self.q) <= self.q * additive_cost(inner, outer, self.q) + 1e-9

    def test_growth_cost_requires_containment(self):
        """S must lie in R."""
        with pytest.raises(InvalidRectangleError):
            growth_cost(Rect.from_dims(6, 2), Rect.from_dims(5, 8), self.q)
        with pytest.raises(InvalidRectangleError):
            additive_cost(Rect.from_dims(6, 2), Rect.from_dims(5, 8), self.q)

    def test_offdiagonal_lower_bound(self):
        """(b - d) g(aq)."""
        inner, outer = Rect.from_dims(2, 9), Rect.from_dims(5, 12)
        assert offdiagonal_lower_bound(inner, outer, self.q) == pytest.approx(3 * g(0.5))

    def test_u_lower_bound_below_j(self, constants):
        """The lower bound subtracts positive error terms from J."""
        inner, outer = Rect.square(3), Rect.from_dims(10, 14)
        q = constants.q
        assert u_lower_bound(inner, outer, q) < j_functional(outer, constants)


class TestScales:
    """Tests for f and J."""

    def test_f_small_branch(self, constants):
        """delta sqrt(short) up to B/q."""
        assert f_scale(Rect.from_dims(16, 20), constants) == pytest.approx(0.05 * 4)

    def test_f_large_branch(self, constants):
        """(delta / sqrt(q)) e^{short q} beyond B/q."""
        q = constants.q
        expected = 0.05 / math.sqrt(q) * math.exp(50 * q)
        assert f_scale(Rect.square(50), constants) == pytest.approx(expected)

    def test_j_of_square(self, constants):
        """For a square only the integral term remains."""
        q = constants.q
        assert j_functional(Rect.square(10), constants) == pytest.approx(
            2.0 / q * g_antiderivative(10 * q)
        )


class TestConstants:
    """Tests for Constants and the report models."""

    def test_q(self):
        """q = -log(1 - p)."""
        assert Constants(p=0.5).q == pytest.approx(math.log(2.0))

    def test_p_range(self):
        """p must lie strictly between 0 and 1."""
        with pytest.raises(ValidationError):
            Constants(p=1.0)
        with pytest.raises(ValidationError):
            Constants(p=float("nan"))

    def test_frozen(self, constants):
        """Constants are immutable; with_p copies."""
        with pytest.raises(ValidationError):
            constants.p = 0.2
        assert constants.with_p(0.2).p == 0.2
        assert constants.p == 0.1

    def test_ordering_violations(self, constants):
        """Broken orderings are reported, not rejected."""
        assert constants.ordering_violations() == []
        broken = Constants(B=0.5, L1=10.0, L2=5.0)
        problems = broken.ordering_violations()
        assert any("B=0.5" in problem for problem in problems)
        assert any("L1=10.0 > L2=5.0" in problem for problem in problems)

    def test_bound_report_fields(self):
        """value, valid and vacuous derive from the log and preconditions."""
        report = BoundReport(formula="x", log_value=-1.0, preconditions={"a": True})
        assert report.value == pytest.approx(math.exp(-1.0))
        assert report.valid
        assert not report.vacuous
        overflow = BoundReport(formula="x", log_value=800.0, preconditions={"a": False})
        assert overflow.value == math.inf
        assert overflow.vacuous
        assert not overflow.valid


class TestBounds:
    """Tests for the bound evaluators."""

    def test_droplet_bound_takes_smaller_exponent(self):
        """The bound uses the smaller exponent and reports its preconditions."""
        report = droplet_bound(Rect.from_dims(40, 60), Constants(p=0.01))
        details = report.details
        assert report.log_value == pytest.approx(
            -min(details["lambda_branch"], details["j_branch"])
        )
        assert report.branch in ("lambda", "J")
        assert not report.preconditions["long_at_least_3e2B_over_q"]
        assert not report.valid

    def test_seeds_bound(self):
        """3^phi e^{-phi g(aq)} for a small seed."""
        constants = Constants(p=0.02, delta=0.1)
        rect = Rect.square(4)
        report = seeds_bound(rect, constants)
        expected = 8 * (math.log(3.0) - g(4 * constants.q))
        assert report.log_value == pytest.approx(expected)
        assert report.valid
        assert 0.0 < report.value < 1.0

    def test_crossing_bounds(self, constants):
        """Crossing costs one more column than avoiding a double gap."""
        rect = Rect.from_dims(20, 10)
        rate = g(10 * constants.q)
        no_gap, crossing = crossing_bounds(rect, constants, Direction.EAST)
        assert no_gap.log_value == pytest.approx(-19 * rate)
        assert crossing.log_value == pytest.approx(-20 * rate)
        _, upwards = crossing_bounds(rect, constants, Direction.NORTH)
        assert upwards.log_value == pytest.approx(-10 * g(20 * constants.q))

    def test_key_small_bound(self, constants):
        """With nothing selected only z and the gaps count."""
        spec = FrameSpec(Rect(1, 4, 1, 4), Rect.square(6))
        q, C = constants.q, constants.C
        expected = 4 * math.log(C) - 2 * g(6 * q) - 2 * g(6 * q)
        report = key_small_bound(spec, constants)
        assert report.log_value == pytest.approx(expected)
        assert report.inputs["z"] == 4

    def test_key_big_bound_preconditions(self, constants):
        """A toy droplet is not 2-critical."""
        spec = FrameSpec(Rect(1, 4, 1, 4), Rect.square(6))
        report = key_big_bound(spec, constants)
        assert not report.preconditions["short_above_B_over_q"]

    def test_cor_key_bound(self, constants):
        """Records f and Q and rejects j outside 1, 2."""
        spec = FrameSpec.selecting(Rect(1, 4, 1, 4), Rect.square(6), {Direction.EAST})
        report = cor_key_bound(spec, 1, constants)
        assert report.formula == "cor_key_1"
        assert report.details["f"] == pytest.approx(f_scale(Rect.square(6), constants))
        assert "outer_is_1_critical" in report.preconditions
        with pytest.raises(ValueError):
            cor_key_bound(spec, 3, constants)

    def test_thin_and_two_big(self, constants):
        """Closed-form union bounds."""
        rect = Rect.from_dims(30, 50)
        two_big = two_big_rectangles_bound(rect, constants)
        assert two_big.log_value == pytest.approx(8 * math.log(50) - 2 / constants.q)
        thin = thin_rectangle_bound(rect, constants)
        assert "target_log" in thin.details

    def test_leaving_diagonal(self):
        """Holds for a small C and fails once 4Cb dominates."""
        good = Constants(p=0.01, C=0.05, L1=50.0)
        check = leaving_diagonal_check(5, 400, good)
        assert check.valid
        assert check.holds
        assert not leaving_diagonal_check(5, 400, Constants(p=0.01, C=50.0, L1=50.0)).holds

    def test_threshold_integral(self):
        """J of a big square is far above its lower bound."""
        check = threshold_integral_check(120, 120, Constants(p=0.01))
        assert check.valid
        assert check.holds

    def test_pc_lower_bound(self, constants):
        """Vacuous at desk scale with the default L6."""
        result = pc_lower_bound(1024, constants)
        assert result.vacuous
        assert result.exponent is None
        assert result.log_n == pytest.approx(math.log(1024))
        with pytest.raises(PreconditionError):
            pc_lower_bound(1, constants)
