"""Threshold function, growth costs and probability bound evaluators."""

from .bounds import (
    PcLowerBound,
    cor_key_bound,
    crossing_bounds,
    droplet_bound,
    key_big_bound,
    key_small_bound,
    leaving_diagonal_check,
    pc_lower_bound,
    seeds_bound,
    thin_rectangle_bound,
    threshold_integral_check,
    two_big_rectangles_bound,
)
from .constants import BoundReport, Constants, InequalityCheck
from .functions import (
    LAMBDA_EXACT,
    beta,
    g,
    g_antiderivative,
    g_derivative,
    g_integral,
    lambda_constant,
    lambda_with_tail,
    log_ratio_bound_holds,
    slope_bound_holds,
    small_z_bounds,
    tail_integral_bound_holds,
)
from .variational import (
    additive_cost,
    diagonal_cost,
    f_scale,
    growth_cost,
    growth_cost_dims,
    j_functional,
    offdiagonal_lower_bound,
    path_cost,
    u_lower_bound,
)

__all__ = [
    "LAMBDA_EXACT",
    "BoundReport",
    "Constants",
    "InequalityCheck",
    "PcLowerBound",
    "additive_cost",
    "beta",
    "cor_key_bound",
    "crossing_bounds",
    "diagonal_cost",
    "droplet_bound",
    "f_scale",
    "g",
    "g_antiderivative",
    "g_derivative",
    "g_integral",
    "growth_cost",
    "growth_cost_dims",
    "j_functional",
    "key_big_bound",
    "key_small_bound",
    "lambda_constant",
    "lambda_with_tail",
    "leaving_diagonal_check",
    "log_ratio_bound_holds",
    "offdiagonal_lower_bound",
    "path_cost",
    "pc_lower_bound",
    "seeds_bound",
    "slope_bound_holds",
    "small_z_bounds",
    "tail_integral_bound_holds",
    "thin_rectangle_bound",
    "threshold_integral_check",
    "two_big_rectangles_bound",
    "u_lower_bound",
]
