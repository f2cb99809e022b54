"""Seeded sampling, event-probability estimation and inequality validation."""

from .estimators import (
    CrossingEvent,
    Estimate,
    EventPredicate,
    FilledSample,
    GrowthEvent,
    InternallyFilled,
    NoDoubleGapEvent,
    PcEstimate,
    Percolates,
    count_successes,
    estimate_event,
    estimate_filled_conditioned,
    estimate_pc,
    wilson_interval,
    wilson_standard_error,
)
from .streams import TrialStream, sample_config
from .validation import (
    SUITE_ALIASES,
    SUITES,
    CorKeyParams,
    CrossingParams,
    DisjointlyFilled,
    DisjointParams,
    DoubleGapParams,
    FrameParams,
    SeedFillParams,
    Suite,
    SuiteParams,
    ValidationReport,
    Verdict,
    exact_filled_probability,
    judge,
    resolve_suite,
    validate_inequality,
)

__all__ = [
    "SUITES",
    "SUITE_ALIASES",
    "CorKeyParams",
    "CrossingParams",
    "DisjointParams",
    "DoubleGapParams",
    "FrameParams",
    "SeedFillParams",
    "Suite",
    "SuiteParams",
    "CrossingEvent",
    "DisjointlyFilled",
    "Estimate",
    "EventPredicate",
    "FilledSample",
    "GrowthEvent",
    "InternallyFilled",
    "NoDoubleGapEvent",
    "PcEstimate",
    "Percolates",
    "TrialStream",
    "ValidationReport",
    "Verdict",
    "count_successes",
    "estimate_event",
    "estimate_filled_conditioned",
    "estimate_pc",
    "exact_filled_probability",
    "judge",
    "resolve_suite",
    "sample_config",
    "validate_inequality",
    "wilson_interval",
    "wilson_standard_error",
]
