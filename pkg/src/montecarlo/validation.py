"""Empirical checks of probability inequalities.

Each suite samples an event at fixed parameters and compares its frequency
with the matching bound: PASS when the frequency is at most the bound plus
three Wilson standard errors, FAIL otherwise, and UNKNOWN when the bound is
vacuous or its preconditions do not hold at these parameters.
"""

import itertools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..droplet_events import FrameSpec, occur_disjointly_filled
from ..dynamics import Orientation, is_internally_filled
from ..lattice import Config, Direction, Rect
from ..numerics import BoundReport, Constants, cor_key_bound, crossing_bounds, seeds_bound
from .estimators import (
    CrossingEvent,
    Estimate,
    EventPredicate,
    GrowthEvent,
    InternallyFilled,
    NoDoubleGapEvent,
    estimate_event,
)

logger = logging.getLogger(__name__)

SLACK_STANDARD_ERRORS = 3.0


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN = "UNKNOWN"


class ValidationReport(BaseModel):
    """Empirical frequency against a theoretical bound."""

    suite: str
    event: str
    params: dict[str, Any] = Field(default_factory=dict)
    trials: int
    seed: int
    frequency: float
    ci_lo: float
    ci_hi: float
    standard_error: float
    bound: float
    bound_log: float
    preconditions: dict[str, bool] = Field(default_factory=dict)
    verdict: Verdict
    reason: str = ""


def judge(
    estimate: Estimate, bound_log: float, preconditions: dict[str, bool]
) -> tuple[Verdict, str]:
    """Verdict for an estimate against a bound given by its logarithm."""
    failed = [name for name, held in preconditions.items() if not held]
    if failed:
        return Verdict.UNKNOWN, f"preconditions fail: {', '.join(failed)}"
    if not math.isfinite(bound_log) or bound_log >= 0.0:
        return Verdict.UNKNOWN, "bound is at least 1"
    limit = math.exp(bound_log) + SLACK_STANDARD_ERRORS * estimate.standard_error
    if estimate.p_hat <= limit:
        return Verdict.PASS, ""
    return Verdict.FAIL, f"frequency {estimate.p_hat:.6g} exceeds {limit:.6g}"


def validate_against(
    suite: str,
    event: EventPredicate,
    name: str,
    p: float,
    rect: Rect,
    report: BoundReport,
    trials: int,
    seed: int,
    workers: int = 1,
    params: dict[str, Any] | None = None,
) -> ValidationReport:
    estimate = estimate_event(event, p, rect, trials, seed, name=name, workers=workers)
    return _report(suite, estimate, report.log_value, report.preconditions, params or {})


def _report(
    suite: str,
    estimate: Estimate,
    bound_log: float,
    preconditions: dict[str, bool],
    params: dict[str, Any],
) -> ValidationReport:
    verdict, reason = judge(estimate, bound_log, preconditions)
    log_fn = logger.warning if verdict is Verdict.FAIL else logger.info
    log_fn(
        f"{suite}: {estimate.event} {estimate.p_hat:.6g} "
        f"vs bound exp({bound_log:.4g}) -> {verdict.value}"
    )
    return ValidationReport(
        suite=suite,
        event=estimate.event,
        params=params,
        trials=estimate.trials,
        seed=estimate.seed,
        frequency=estimate.p_hat,
        ci_lo=estimate.ci_lo,
        ci_hi=estimate.ci_hi,
        standard_error=estimate.standard_error,
        bound=math.exp(bound_log) if bound_log < 700.0 else math.inf,
        bound_log=bound_log,
        preconditions=preconditions,
        verdict=verdict,
        reason=reason,
    )


class SuiteParams(BaseModel):
    """Parameters common to every suite; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    p: float = Field(0.1, gt=0.0, lt=1.0, description="Infection probability")


def _check_dims(v: tuple[int, int]) -> tuple[int, int]:
    if min(v) < 1:
        raise ValueError(f"Dimensions must be positive, got {v}")
    return v


def _check_bounds(v: list[int]) -> list[int]:
    if len(v) != 4:
        raise ValueError(f"A rectangle is [x_lo, x_hi, y_lo, y_hi], got {v}")
    return v


class DoubleGapParams(SuiteParams):
    dims: tuple[int, int] = Field((20, 10), description="Width and height of R")

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: tuple[int, int]) -> tuple[int, int]:
        return _check_dims(v)


class CrossingParams(DoubleGapParams):
    directions: list[str] = Field(
        default_factory=lambda: ["+x", "+y"], description="Crossing directions"
    )

    @field_validator("directions")
    @classmethod
    def validate_directions(cls, v: list[str]) -> list[str]:
        for label in v:
            Direction.from_label(label)
        return v


class SeedFillParams(SuiteParams):
    p: float = Field(0.02, gt=0.0, lt=1.0, description="Infection probability")
    dims: tuple[int, int] = Field((4, 4), description="Width and height of the droplet")
    delta: float = Field(0.1, gt=0.0, lt=1.0, description="Small constant delta")

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: tuple[int, int]) -> tuple[int, int]:
        return _check_dims(v)


class FrameParams(SuiteParams):
    s: list[int] = Field(default_factory=lambda: [1, 4, 1, 4], description="Inner rectangle S")
    r: list[int] = Field(default_factory=lambda: [0, 5, 0, 5], description="Outer rectangle R")
    x: dict[str, int] = Field(
        default_factory=lambda: {"+x": 1, "+y": 1}, description="Selected buffers"
    )

    @field_validator("s", "r")
    @classmethod
    def validate_rect(cls, v: list[int]) -> list[int]:
        return _check_bounds(v)

    def frame_spec(self) -> FrameSpec:
        selection = {Direction.from_label(label): bit for label, bit in self.x.items()}
        return FrameSpec(Rect.from_list(self.s), Rect.from_list(self.r), selection)


class CorKeyParams(FrameParams):
    """A 1-critical frame under small constants, where the bound is below 1.

    Only (7,0) and (0,7) can start the unselected sides, so P(D1) = p^2
    while the bound is about 0.079 at the defaults.
    """

    s: list[int] = Field(default_factory=lambda: [1, 6, 1, 6], description="Inner rectangle S")
    r: list[int] = Field(default_factory=lambda: [0, 7, 0, 7], description="Outer rectangle R")
    j: Literal[1, 2] = Field(1, description="Criticality of R; selects D1 or D2")
    B: float = Field(1.0, gt=0.0)
    C: float = Field(0.5, gt=0.0)
    delta: float = Field(0.25, gt=0.0, lt=1.0)
    L1: float = Field(2.0, ge=0.0)


class DisjointParams(SuiteParams):
    p: float = Field(0.3, gt=0.0, lt=1.0, description="Infection probability")
    domain: list[int] = Field(default_factory=lambda: [0, 3, 0, 3])
    first: list[int] = Field(default_factory=lambda: [0, 2, 0, 2])
    second: list[int] = Field(default_factory=lambda: [1, 3, 1, 3])

    @field_validator("domain", "first", "second")
    @classmethod
    def validate_rect(cls, v: list[int]) -> list[int]:
        return _check_bounds(v)


def _double_gap(
    params: DoubleGapParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    rect = Rect.from_dims(*params.dims)
    no_gap, _ = crossing_bounds(rect, constants.with_p(params.p), Direction.EAST)
    report = validate_against(
        "double-gap",
        NoDoubleGapEvent(rect, Orientation.VERTICAL),
        "no_vertical_double_gap",
        params.p,
        rect,
        no_gap,
        trials,
        seed,
        workers,
        params.model_dump(mode="json"),
    )
    return [report]


def _crossing(
    params: CrossingParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    rect = Rect.from_dims(*params.dims)
    reports = []
    for label in params.directions:
        direction = Direction.from_label(label)
        _, bound = crossing_bounds(rect, constants.with_p(params.p), direction)
        reports.append(
            validate_against(
                "crossing",
                CrossingEvent(rect, direction),
                f"crossed_{label}",
                params.p,
                rect,
                bound,
                trials,
                seed,
                workers,
                params.model_dump(mode="json") | {"directions": [label]},
            )
        )
    return reports


def _seed_fill(
    params: SeedFillParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    rect = Rect.from_dims(*params.dims)
    local = constants.model_copy(update={"p": params.p, "delta": params.delta})
    report = validate_against(
        "seed-fill",
        InternallyFilled(rect),
        "internally_filled",
        params.p,
        rect,
        seeds_bound(rect, local),
        trials,
        seed,
        workers,
        params.model_dump(mode="json"),
    )
    return [report]


GROWTH_KINDS: dict[int, Literal["d1", "d2"]] = {1: "d1", 2: "d2"}


def _growth_frame(
    params: FrameParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    spec = params.frame_spec()
    local = constants.with_p(params.p)
    reports = []
    for j, kind in GROWTH_KINDS.items():
        reports.append(
            validate_against(
                "growth-frame",
                GrowthEvent(spec, kind),
                kind,
                params.p,
                spec.r,
                cor_key_bound(spec, j, local),
                trials,
                seed,
                workers,
                params.model_dump(mode="json") | {"j": j},
            )
        )
    return reports


def _cor_key(
    params: CorKeyParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    spec = params.frame_spec()
    local = constants.model_copy(
        update={
            "p": params.p,
            "B": params.B,
            "C": params.C,
            "delta": params.delta,
            "L1": params.L1,
        }
    )
    kind = GROWTH_KINDS[params.j]
    report = validate_against(
        "cor-key",
        GrowthEvent(spec, kind),
        kind,
        params.p,
        spec.r,
        cor_key_bound(spec, params.j, local),
        trials,
        seed,
        workers,
        params.model_dump(mode="json"),
    )
    return [report]


def exact_filled_probability(rect: Rect, p: float) -> float:
    """P_p(R internally filled) by enumerating every configuration on R."""
    sites = list(rect.sites())
    if len(sites) > 16:
        raise ValueError(f"{rect} has too many sites to enumerate")
    total = 0.0
    for bits in itertools.product((False, True), repeat=len(sites)):
        chosen = [site for site, bit in zip(sites, bits, strict=True) if bit]
        if is_internally_filled(Config.from_sites(rect, chosen), rect):
            total += p ** len(chosen) * (1.0 - p) ** (len(sites) - len(chosen))
    return total


@dataclass(frozen=True)
class DisjointlyFilled:
    first: Rect
    second: Rect

    def __call__(self, config: Config) -> bool:
        return occur_disjointly_filled(config, self.first, self.second)


def _disjoint_occurrence(
    params: DisjointParams, constants: Constants, trials: int, seed: int, workers: int
) -> list[ValidationReport]:
    domain = Rect.from_list(params.domain)
    first, second = Rect.from_list(params.first), Rect.from_list(params.second)
    if not (domain.contains_rect(first) and domain.contains_rect(second)):
        raise ValueError(f"{first} and {second} must lie inside {domain}")
    product = exact_filled_probability(first, params.p) * exact_filled_probability(
        second, params.p
    )
    estimate = estimate_event(
        DisjointlyFilled(first, second),
        params.p,
        domain,
        trials,
        seed,
        name="disjointly_filled",
        workers=workers,
    )
    return [
        _report(
            "disjoint-occurrence",
            estimate,
            math.log(product) if product > 0.0 else -math.inf,
            {},
            params.model_dump(mode="json"),
        )
    ]


@dataclass(frozen=True)
class Suite:
    params: type[SuiteParams]
    run: Callable[[Any, Constants, int, int, int], list[ValidationReport]]


SUITES: dict[str, Suite] = {
    "double-gap": Suite(DoubleGapParams, _double_gap),
    "crossing": Suite(CrossingParams, _crossing),
    "seed-fill": Suite(SeedFillParams, _seed_fill),
    "growth-frame": Suite(FrameParams, _growth_frame),
    "cor-key": Suite(CorKeyParams, _cor_key),
    "disjoint-occurrence": Suite(DisjointParams, _disjoint_occurrence),
}

# Names of the underlying inequalities, with or without a "lem:" prefix.
SUITE_ALIASES = {
    "doublegaps": "double-gap",
    "seeds": "seed-fill",
    "cor_key_bound": "cor-key",
    "cor:key": "cor-key",
    "bk": "disjoint-occurrence",
}


def resolve_suite(name: str) -> str:
    """Canonical suite name for a suite name or alias.

    Raises:
        ValueError: If ``name`` is not a known suite
    """
    key = name.removeprefix("lem:")
    key = SUITE_ALIASES.get(key, key)
    if key not in SUITES:
        raise ValueError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return key


def _run_suite(
    name: str,
    constants: Constants,
    trials: int,
    seed: int,
    workers: int,
    params: dict[str, Any] | None,
) -> list[ValidationReport]:
    suite = SUITES[name]
    parsed = suite.params.model_validate(params or {})
    logger.debug(f"Running suite {name} with {parsed.model_dump(mode='json')}")
    return suite.run(parsed, constants, trials, seed, workers)


def validate_inequality(
    name: str,
    constants: Constants,
    trials: int,
    seed: int,
    workers: int = 1,
    params: dict[str, Any] | None = None,
) -> list[ValidationReport]:
    """Run one suite, or every suite in order when ``name`` is ``all``.

    Args:
        name: Suite name, alias, or ``all``
        constants: Constants the bounds are evaluated with; suites override p
        trials: Trials per estimate
        seed: Master seed
        workers: Worker processes
        params: Overrides of the suite's default parameters. For ``all``, a
            mapping from suite name to overrides.

    Raises:
        ValueError: If ``name`` is not a known suite or ``params`` do not validate
    """
    if name == "all":
        per_suite = {resolve_suite(key): value for key, value in (params or {}).items()}
        return [
            report
            for suite_name in SUITES
            for report in _run_suite(
                suite_name, constants, trials, seed, workers, per_suite.get(suite_name)
            )
        ]
    return _run_suite(resolve_suite(name), constants, trials, seed, workers, params)
