"""Event-probability estimates, critical-probability bisection and conditioned sampling."""

import logging
import math
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..droplet_events import FrameSpec, event_d1, event_d2
from ..dynamics import Orientation, crossed, double_gap, is_internally_filled, percolates
from ..exceptions import PreconditionError
from ..lattice import Config, Direction, Rect
from .streams import TrialStream, sample_config

logger = logging.getLogger(__name__)

Z_95 = 1.959963984540054

EventPredicate = Callable[[Config], bool]


def wilson_interval(successes: int, trials: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return (0.0, 1.0)
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    margin = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    return (max(0.0, min(p, center - margin)), min(1.0, max(p, center + margin)))


def wilson_standard_error(successes: int, trials: int, z: float = Z_95) -> float:
    """Half-width of the Wilson interval in units of z."""
    lo, hi = wilson_interval(successes, trials, z)
    return (hi - lo) / (2.0 * z)


class Estimate(BaseModel):
    """Empirical frequency of an event with its 95% Wilson interval."""

    event: str = Field(..., description="Event identifier")
    region: str = Field("", description="Grid size or rectangle dimensions")
    p: float = Field(..., ge=0.0, le=1.0)
    trials: int = Field(..., ge=1)
    successes: int = Field(..., ge=0)
    p_hat: float = Field(..., ge=0.0, le=1.0)
    ci_lo: float = Field(..., ge=0.0, le=1.0)
    ci_hi: float = Field(..., ge=0.0, le=1.0)
    seed: int
    runtime_ms: float | None = None

    @model_validator(mode="after")
    def validate_interval(self) -> "Estimate":
        if not self.ci_lo <= self.p_hat <= self.ci_hi:
            raise ValueError(f"Interval [{self.ci_lo}, {self.ci_hi}] excludes {self.p_hat}")
        return self

    @property
    def standard_error(self) -> float:
        return wilson_standard_error(self.successes, self.trials)

    @classmethod
    def from_counts(
        cls,
        event: str,
        region: str,
        p: float,
        successes: int,
        trials: int,
        seed: int,
        **extra: float | None,
    ) -> "Estimate":
        lo, hi = wilson_interval(successes, trials)
        return cls(
            event=event,
            region=region,
            p=p,
            trials=trials,
            successes=successes,
            p_hat=successes / trials,
            ci_lo=lo,
            ci_hi=hi,
            seed=seed,
            **extra,
        )


# Event predicates are module-level classes so worker processes can unpickle them.


@dataclass(frozen=True)
class InternallyFilled:
    rect: Rect

    def __call__(self, config: Config) -> bool:
        return is_internally_filled(config, self.rect)


@dataclass(frozen=True)
class Percolates:
    def __call__(self, config: Config) -> bool:
        return percolates(config)


@dataclass(frozen=True)
class GrowthEvent:
    """D1 or D2 for a frame specification."""

    spec: FrameSpec
    kind: Literal["d1", "d2"] = "d1"

    def __call__(self, config: Config) -> bool:
        return event_d2(config, self.spec) if self.kind == "d2" else event_d1(config, self.spec)


@dataclass(frozen=True)
class CrossingEvent:
    rect: Rect
    direction: Direction = Direction.EAST

    def __call__(self, config: Config) -> bool:
        return crossed(config, self.rect, self.direction)


@dataclass(frozen=True)
class NoDoubleGapEvent:
    rect: Rect
    orientation: Orientation = Orientation.VERTICAL

    def __call__(self, config: Config) -> bool:
        return double_gap(config, self.rect, self.orientation) is None


def _count(
    event: EventPredicate, p: float, rect: Rect, stream: TrialStream, start: int, stop: int
) -> int:
    return sum(bool(event(sample_config(p, rect, stream, i))) for i in range(start, stop))


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    size = math.ceil(trials / workers)
    return [(lo, min(lo + size, trials)) for lo in range(0, trials, size)]


def count_successes(
    event: EventPredicate, p: float, rect: Rect, trials: int, stream: TrialStream, workers: int = 1
) -> int:
    """Number of trials 0..trials-1 in which ``event`` holds.

    Trial i always draws from substream i of ``stream``, so the count does
    not depend on ``workers``.
    """
    if workers <= 1 or trials < 2 * workers:
        return _count(event, p, rect, stream, 0, trials)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_count, event, p, rect, stream, lo, hi) for lo, hi in _chunks(trials, workers)
        ]
        return sum(f.result() for f in futures)


def _region(rect: Rect) -> str:
    return f"{rect.width}x{rect.height}"


def estimate_event(
    event: EventPredicate,
    p: float,
    rect: Rect,
    trials: int,
    seed: int,
    *,
    name: str | None = None,
    workers: int = 1,
    step: int = 0,
    record_timing: bool = False,
) -> Estimate:
    """Estimate P_p(event) on R from ``trials`` independent samples.

    Raises:
        PreconditionError: If trials < 1 or p is outside [0, 1]
    """
    if trials < 1:
        raise PreconditionError(f"trials must be >= 1, got {trials}")
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"p={p} outside [0, 1]")

    started = time.perf_counter()
    successes = count_successes(event, p, rect, trials, TrialStream(seed, step), workers)
    runtime = (time.perf_counter() - started) * 1000.0 if record_timing else None
    label = name or type(event).__name__
    logger.debug(f"{label} on {_region(rect)} at p={p}: {successes}/{trials}")
    return Estimate.from_counts(
        label, _region(rect), p, successes, trials, seed, runtime_ms=runtime
    )


class PcEstimate(Estimate):
    """Critical probability from bisection on the percolation frequency.

    The interval runs from the largest step whose interval lies below 1/2
    to the smallest step whose interval lies above it.
    """

    n: int
    bracket_lo: float
    bracket_hi: float
    steps: list[Estimate] = Field(default_factory=list)


def estimate_pc(
    n: int,
    trials_per_step: int,
    tol: float,
    seed: int,
    *,
    workers: int = 1,
    max_steps: int = 60,
    record_timing: bool = False,
) -> PcEstimate:
    """Bisect on p for P_p(A percolates [n]^2) = 1/2.

    Step k draws from step-k substreams, so no two steps share samples.

    Raises:
        PreconditionError: If n < 2, tol <= 0 or trials_per_step < 1
    """
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if tol <= 0.0:
        raise PreconditionError(f"tol must be positive, got {tol}")
    if trials_per_step < 1:
        raise PreconditionError(f"trials_per_step must be >= 1, got {trials_per_step}")

    started = time.perf_counter()
    grid = Rect.square(n)
    lo, hi = 0.0, 1.0
    steps: list[Estimate] = []
    while hi - lo >= tol and len(steps) < max_steps:
        mid = 0.5 * (lo + hi)
        step = estimate_event(
            Percolates(),
            mid,
            grid,
            trials_per_step,
            seed,
            name="percolates",
            workers=workers,
            step=len(steps),
        )
        steps.append(step)
        if step.p_hat >= 0.5:
            hi = mid
        else:
            lo = mid

    below = [e.p for e in steps if e.ci_hi < 0.5]
    above = [e.p for e in steps if e.ci_lo > 0.5]
    midpoint = 0.5 * (lo + hi)
    runtime = (time.perf_counter() - started) * 1000.0 if record_timing else None
    logger.info(f"p_c({n}) ~ {midpoint:.5f} after {len(steps)} steps")
    return PcEstimate(
        event="pc",
        region=f"{n}x{n}",
        p=midpoint,
        trials=max(1, trials_per_step * len(steps)),
        successes=sum(e.successes for e in steps),
        p_hat=midpoint,
        ci_lo=max(below, default=0.0),
        ci_hi=min(above, default=1.0),
        seed=seed,
        runtime_ms=runtime,
        n=n,
        bracket_lo=lo,
        bracket_hi=hi,
        steps=steps,
    )


@dataclass(frozen=True)
class FilledSample:
    """Internally filled samples and the acceptance rate that produced them."""

    acceptance: Estimate
    configs: list[Config]
    partial: bool


def estimate_filled_conditioned(
    rect: Rect, p: float, wanted: int, seed: int, *, max_attempts: int | None = None
) -> FilledSample:
    """Rejection-sample configurations on R until ``wanted`` of them fill R.

    Gives up after ``max_attempts`` draws (default 1000 per wanted sample)
    and flags the result as partial.
    """
    if wanted < 1:
        raise PreconditionError(f"wanted must be >= 1, got {wanted}")
    budget = max_attempts if max_attempts is not None else 1000 * wanted
    stream = TrialStream(seed)
    accepted: list[Config] = []
    attempts = 0
    while len(accepted) < wanted and attempts < budget:
        config = sample_config(p, rect, stream, attempts)
        attempts += 1
        if is_internally_filled(config, rect):
            accepted.append(config)

    partial = len(accepted) < wanted
    if partial:
        logger.warning(
            f"Collected {len(accepted)}/{wanted} filled samples of {rect} in {attempts} draws"
        )
    acceptance = Estimate.from_counts(
        "filled", _region(rect), p, len(accepted), max(attempts, 1), seed
    )
    return FilledSample(acceptance=acceptance, configs=accepted, partial=partial)
