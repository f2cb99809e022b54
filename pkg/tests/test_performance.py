"""Performance benchmarks for bootstrap-percolation-workbench."""

import time

import pytest

from src.dynamics import closure, naive_closure, rectangles_process
from src.hierarchy import build_hierarchy
from src.lattice import Config, Rect
from src.montecarlo import Percolates, TrialStream, estimate_event, sample_config
from src.numerics import Constants, growth_cost

# Skip performance tests by default (run with: pytest --run-slow)
pytestmark = [pytest.mark.performance, pytest.mark.slow]


class TestClosurePerformance:
    """Benchmark the automaton."""

    @pytest.mark.benchmark
    def test_closure_64(self, benchmark):
        """Benchmark closure on a 64x64 grid near criticality."""
        config = sample_config(0.1, Rect.square(64), TrialStream(0), 0)
        result = benchmark(closure, config)
        assert config.issubset(result)

    @pytest.mark.benchmark
    def test_closure_beats_naive(self):
        """The queue closure is faster than iterating the step map."""
        config = Config.from_sites(Rect.square(48), [(i, i) for i in range(48)])

        start_time = time.time()
        for _ in range(5):
            closure(config)
        fast = time.time() - start_time

        start_time = time.time()
        naive_closure(config)
        slow = time.time() - start_time

        print("\nClosure on the 48x48 diagonal:")
        print(f"  Queue closure (5 runs): {fast:.3f}s")
        print(f"  Naive iteration (1 run): {slow:.3f}s")
        assert fast < 5 * slow

    @pytest.mark.benchmark
    def test_rectangles_process_128(self, benchmark):
        """Benchmark the rectangles process on a 128x128 grid."""
        config = sample_config(0.05, Rect.square(128), TrialStream(1), 0)
        forest = benchmark(rectangles_process, config)
        assert forest


class TestSamplingPerformance:
    """Benchmark Monte Carlo estimation."""

    @pytest.mark.benchmark
    def test_estimate_throughput(self):
        """Measure trials per second for percolation on 64x64."""
        trials = 200
        start_time = time.time()
        estimate = estimate_event(Percolates(), 0.1, Rect.square(64), trials, seed=0)
        elapsed = time.time() - start_time

        print("\nPercolation estimate on 64x64:")
        print(f"  Trials: {trials}")
        print(f"  Time: {elapsed:.2f}s")
        print(f"  Rate: {trials / elapsed:.1f} trials/s")
        assert estimate.trials == trials

    @pytest.mark.benchmark
    def test_parallel_speedup(self):
        """Workers split trials without changing the result."""
        rect = Rect.square(64)
        start_time = time.time()
        serial = estimate_event(Percolates(), 0.1, rect, 400, seed=0)
        serial_time = time.time() - start_time

        start_time = time.time()
        parallel = estimate_event(Percolates(), 0.1, rect, 400, seed=0, workers=4)
        parallel_time = time.time() - start_time

        print(f"\nSerial: {serial_time:.2f}s, 4 workers: {parallel_time:.2f}s")
        assert parallel.successes == serial.successes


class TestNumericsPerformance:
    """Benchmark the path optimiser and the hierarchy builder."""

    @pytest.mark.benchmark
    def test_growth_cost(self, benchmark):
        """Benchmark U for a moderately elongated pair."""
        cost = benchmark(growth_cost, Rect.from_dims(3, 10), Rect.from_dims(20, 25), 0.05)
        assert cost > 0

    @pytest.mark.benchmark
    def test_build_hierarchy(self, benchmark):
        """Benchmark the builder on the 8x8 diagonal."""
        config = Config.from_sites(Rect.square(8), [(i, i) for i in range(8)])
        hierarchy = benchmark(build_hierarchy, config, config.domain, Constants())
        assert hierarchy.size == 11
