"""Good hierarchies: construction, goodness and satisfaction checks, statistics and pods."""

from .builder import build_hierarchy, is_leaf_rect, max_rectangle_long
from .checks import (
    EventWitness,
    GoodnessReport,
    SatisfactionCertificate,
    Violation,
    check_good,
    check_satisfied,
    edge_budgets,
)
from .model import ROOT, Hierarchy, HierarchyBuilder, primary_key, trunk, zero_label
from .pods import PodResult, best_pod, edge_cost, verify_pod_inequality
from .statistics import (
    HierarchyStats,
    enumerate_good_hierarchies,
    height_bounded_by_large_seeds,
    height_or_vertex,
    is_large_seed,
    log_weighted_count_bound,
    small_seeds_hold,
    stats,
    total_weight_by_size,
    upper_trunk,
    upper_trunk_bound_holds,
    upper_trunk_semiperimeter,
    weighted_count_bound,
    weird_vertex_height_holds,
)

__all__ = [
    "ROOT",
    "EventWitness",
    "GoodnessReport",
    "Hierarchy",
    "HierarchyBuilder",
    "HierarchyStats",
    "PodResult",
    "SatisfactionCertificate",
    "Violation",
    "best_pod",
    "build_hierarchy",
    "check_good",
    "check_satisfied",
    "edge_budgets",
    "edge_cost",
    "enumerate_good_hierarchies",
    "height_bounded_by_large_seeds",
    "height_or_vertex",
    "is_large_seed",
    "is_leaf_rect",
    "log_weighted_count_bound",
    "max_rectangle_long",
    "primary_key",
    "small_seeds_hold",
    "stats",
    "total_weight_by_size",
    "trunk",
    "upper_trunk",
    "upper_trunk_bound_holds",
    "upper_trunk_semiperimeter",
    "verify_pod_inequality",
    "weighted_count_bound",
    "weird_vertex_height_holds",
    "zero_label",
]
