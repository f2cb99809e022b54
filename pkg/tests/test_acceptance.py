"""Large-sample checks of the structural and probabilistic results.

Slow: run with ``pytest --run-slow``.
"""

import itertools
import math

import numpy as np
import pytest

from src.dynamics import (
    al_witness,
    closure,
    disjoint_span_split,
    filled_rectangles_in_history,
    naive_closure,
    percolates,
    rectangles_process,
    span_split_violations,
)
from src.hierarchy import (
    best_pod,
    build_hierarchy,
    check_good,
    check_satisfied,
    enumerate_good_hierarchies,
    total_weight_by_size,
    weighted_count_bound,
)
from src.lattice import Config, Rect
from src.montecarlo import (
    TrialStream,
    Verdict,
    estimate_filled_conditioned,
    estimate_pc,
    sample_config,
    validate_inequality,
)
from src.numerics import (
    LAMBDA_EXACT,
    Constants,
    diagonal_cost,
    g,
    growth_cost,
    lambda_constant,
    small_z_bounds,
)

pytestmark = pytest.mark.slow


def constants_at_q(q: float) -> Constants:
    return Constants(p=-math.expm1(-q))


class TestNumerics:
    """Quadrature and path optimisation against closed forms."""

    def test_lambda(self):
        """The integral of g is pi^2/18."""
        assert lambda_constant() == pytest.approx(LAMBDA_EXACT, abs=1e-9)

    def test_small_z_sandwich(self):
        """The sandwich holds on sampled small z."""
        for z in np.random.default_rng(0).uniform(1e-6, 0.05, 1000):
            lower, upper = small_z_bounds(float(z))
            assert lower <= g(float(z)) <= upper

    def test_g_monotone_and_convex(self):
        """Differences of g are negative and increasing on a fine grid."""
        values = g(np.linspace(0.01, 10.0, 10_000))
        steps = np.diff(values)
        assert (steps < 0).all()
        assert (np.diff(steps) > -1e-12).all()

    def test_diagonal_oracle(self):
        """The optimiser matches the closed form on nested pairs near the diagonal."""
        q = 0.1
        pairs = [
            (Rect.from_dims(a, b), Rect.from_dims(c, d))
            for a, b, c, d in itertools.product((1, 2, 3), (2, 3, 4), (5, 6), (6, 9))
        ]
        for inner, outer in pairs:
            assert growth_cost(inner, outer, q) / q == pytest.approx(
                diagonal_cost(inner, outer, q), rel=1e-5
            )


class TestDynamics:
    """Closure and rectangles-process invariants on many samples."""

    def test_closure_exhaustive_4x4(self):
        """Every configuration of the 4x4 grid closes like the naive iteration."""
        rect = Rect.square(4)
        for bits in range(1 << 16):
            grid = np.array([(bits >> i) & 1 for i in range(16)], dtype=bool).reshape(4, 4)
            config = Config(rect, grid)
            assert closure(config) == naive_closure(config)

    def test_closure_sampled_8x8(self):
        """Random 8x8 configurations close like the naive iteration."""
        stream = TrialStream(1)
        for i in range(2000):
            config = sample_config(0.15, Rect.square(8), stream, i)
            assert closure(config) == naive_closure(config)

    def test_filled_rectangles_hold_half_perimeter(self):
        """Every internally filled rectangle holds at least phi/2 infected sites."""
        stream = TrialStream(2)
        for i in range(500):
            config = sample_config(0.12, Rect.square(16), stream, i)
            for node in filled_rectangles_in_history(rectangles_process(config)):
                assert 2 * len(node.sites) >= node.rect.phi

    def test_al_witness_every_scale(self):
        """A filled rectangle of every scale exists in a percolating sample."""
        stream = TrialStream(3)
        checked = 0
        for i in range(100):
            config = sample_config(0.3, Rect.square(32), stream, i)
            if not percolates(config):
                continue
            checked += 1
            for k in range(1, 33):
                rect = al_witness(config, k)
                assert k <= rect.long <= 2 * k
        assert checked > 0

    def test_span_split_on_filled_droplets(self):
        """Split invariants hold on rejection-sampled droplets."""
        rect = Rect.square(6)
        sample = estimate_filled_conditioned(rect, 0.3, 200, seed=4)
        for config in sample.configs:
            split = disjoint_span_split(config, rect)
            assert span_split_violations(split, config, rect) == []


class TestHierarchies:
    """Builder, counting and pod checks."""

    @pytest.mark.parametrize("q, side", [(0.2, 4), (0.3, 2)])
    def test_builder_output_is_good_and_satisfied(self, q, side):
        """Every built hierarchy passes both checkers."""
        constants = constants_at_q(q)
        rect = Rect.square(side)
        sample = estimate_filled_conditioned(rect, constants.p, 300, seed=5)
        assert not sample.partial
        for config in sample.configs:
            hierarchy = build_hierarchy(config, rect, constants)
            assert check_good(hierarchy, constants, rect).good
            certificate = check_satisfied(hierarchy, config)
            assert certificate.satisfied, certificate.collisions

    def test_weighted_counting(self):
        """Total weight per (N, M) stays below the counting bound."""
        rect = Rect.square(4)
        constants = Constants()
        totals = total_weight_by_size(enumerate_good_hierarchies(rect, constants, 3), constants)
        for (n_vertices, n_seeds), weight in totals.items():
            assert weight <= weighted_count_bound(n_vertices, n_seeds, rect)

    def test_pods(self):
        """The pod inequality holds for small good hierarchies at q = 0.2."""
        constants = constants_at_q(0.2)
        found = enumerate_good_hierarchies(Rect.square(4), constants, 4)
        assert found
        for hierarchy in found:
            if len(hierarchy.leaves()) <= 3:
                assert best_pod(hierarchy, constants.q).holds


class TestProbabilities:
    """Monte Carlo checks of the probability inequalities."""

    def test_validation_suites(self):
        """No suite fails at 10^5 trials; the checkable ones pass."""
        reports = validate_inequality("all", Constants(), 100_000, seed=11, workers=4)
        assert all(r.verdict is not Verdict.FAIL for r in reports)
        passing = {r.suite for r in reports if r.verdict is Verdict.PASS}
        assert {"double-gap", "seed-fill", "cor-key", "disjoint-occurrence"} <= passing

    def test_cor_key_bound_passes(self):
        """The growth bound holds on a 1-critical frame."""
        (report,) = validate_inequality("cor_key_bound", Constants(), 100_000, seed=12)
        assert all(report.preconditions.values())
        assert report.verdict is Verdict.PASS
        assert report.ci_hi <= report.bound

    def test_critical_probability_below_limit(self):
        """p_c(n) log n sits below pi^2/18 at desk scale."""
        for n in (64, 128):
            estimate = estimate_pc(n, 100, 0.01, seed=13)
            assert 0.0 < estimate.p * math.log(n) < LAMBDA_EXACT
