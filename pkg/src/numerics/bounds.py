"""Probability bounds for droplets, seeds, crossings and growth events.

Every evaluator returns a :class:`BoundReport` (or an :class:`InequalityCheck`)
that records which preconditions of the underlying inequality held. Nothing
here raises because a precondition fails; the report carries it.
"""

import logging
import math
from functools import lru_cache
from typing import TYPE_CHECKING

from pydantic import BaseModel, Field

from ..exceptions import PreconditionError
from ..lattice import Direction, Rect
from .constants import BoundReport, Constants, InequalityCheck
from .functions import _g_scalar, g_integral, lambda_constant
from .variational import additive_cost, f_scale, j_functional

if TYPE_CHECKING:
    from ..droplet_events import FrameSpec

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def _lambda() -> float:
    return lambda_constant()


def _echo(rect: Rect, constants: Constants) -> dict[str, object]:
    return {"rect": rect.to_list(), "p": constants.p, "q": constants.q}


def droplet_bound(rect: Rect, constants: Constants) -> BoundReport:
    """Upper bound on the probability that a critical droplet is internally filled.

    exp(-min{2 lambda/q + q^{-3/4}, J(R) - L6/sqrt(q)}), valid for
    3e^{2B}/q <= long(R) <= (1/2q) log(1/q).
    """
    q = constants.q
    a, b = rect.short, rect.long
    lam = _lambda()

    lambda_branch = 2.0 * lam / q + q ** (-0.75)
    j_value = j_functional(rect, constants)
    j_branch = j_value - constants.L6 / math.sqrt(q)
    branch, exponent = ("lambda", lambda_branch) if lambda_branch <= j_branch else ("J", j_branch)

    preconditions = {
        "long_at_least_3e2B_over_q": b >= 3.0 * math.exp(2.0 * constants.B) / q,
        "long_at_most_log_over_2q": b <= math.log(1.0 / q) / (2.0 * q),
    }
    report = BoundReport(
        formula="droplet",
        log_value=-exponent,
        inputs=_echo(rect, constants) | {"a": a, "b": b},
        preconditions=preconditions,
        branch=branch,
        details={"lambda_branch": lambda_branch, "j_branch": j_branch, "J": j_value},
    )
    if not report.valid:
        logger.debug(f"Droplet bound for {rect} outside its range: {preconditions}")
    return report


def seeds_bound(rect: Rect, constants: Constants) -> BoundReport:
    """3^phi exp(-phi g(aq)) for small rectangles with a * p <= delta."""
    a = rect.short
    phi = rect.phi
    return BoundReport(
        formula="seeds",
        log_value=phi * (math.log(3.0) - _g_scalar(a * constants.q)),
        inputs=_echo(rect, constants),
        preconditions={"short_times_p_at_most_delta": a * constants.p <= constants.delta},
    )


def crossing_bounds(
    rect: Rect, constants: Constants, direction: Direction = Direction.EAST
) -> tuple[BoundReport, BoundReport]:
    """Bounds for having no double gap across, and for being crossed.

    For horizontal travel with dim(R) = (a, b): no vertical double gap has
    probability at most e^{-(a-1)g(bq)}, and a crossing at most e^{-a g(bq)}.
    Vertical travel swaps the roles of a and b.
    """
    a, b = rect.dims if direction.is_horizontal else (rect.height, rect.width)
    rate = _g_scalar(b * constants.q)
    inputs = _echo(rect, constants) | {"direction": direction.label}
    return (
        BoundReport(formula="no_double_gap", log_value=-(a - 1) * rate, inputs=inputs),
        BoundReport(formula="crossing", log_value=-a * rate, inputs=inputs),
    )


def _frame_terms(spec: "FrameSpec") -> tuple[int, int, int, int, int]:
    from ..droplet_events import buffers, xy_counts

    _, nonempty, z = buffers(spec)
    x, y = xy_counts(spec, nonempty)
    s = spec.r.width - spec.s.width
    t = spec.r.height - spec.s.height
    return x, y, z, s, t


def key_small_bound(spec: "FrameSpec", constants: Constants) -> BoundReport:
    """Growth bound for a 1-critical outer rectangle.

    C^z (C/sqrt(a))^y (C/sqrt(b))^x exp(-s g(bq) - t g(aq)).
    """
    q, C = constants.q, constants.C
    rect = spec.r
    a, b = rect.dims
    x, y, z, s, t = _frame_terms(spec)
    limit = 4.0 * constants.delta * math.sqrt(rect.short)
    log_value = (
        z * math.log(C)
        + y * math.log(C / math.sqrt(a))
        + x * math.log(C / math.sqrt(b))
        - s * _g_scalar(b * q)
        - t * _g_scalar(a * q)
    )
    return BoundReport(
        formula="key_small",
        log_value=log_value,
        inputs=_echo(rect, constants) | {"s_rect": spec.s.to_list(), "x": x, "y": y, "z": z},
        preconditions={
            "short_in_L1_to_B_over_q": constants.L1 <= rect.short <= constants.B / q,
            "long_at_most_3e2B_over_q": rect.long <= 3.0 * math.exp(2.0 * constants.B) / q,
            "s_at_most_4_delta_sqrt_short": s <= limit,
            "t_at_most_4_delta_sqrt_short": t <= limit,
        },
    )


def key_big_bound(spec: "FrameSpec", constants: Constants) -> BoundReport:
    """Growth bound for a 2-critical outer rectangle, empty frame included.

    (C e^{short q})^z (C sqrt(q) e^{-aq})^y (C sqrt(q) e^{-bq})^x exp(-s g(bq) - t g(aq)).
    """
    q, C = constants.q, constants.C
    rect = spec.r
    a, b = rect.dims
    x, y, z, s, t = _frame_terms(spec)
    limit = 4.0 * constants.delta / math.sqrt(q) * math.exp(rect.short * q)
    log_value = (
        z * (math.log(C) + rect.short * q)
        + y * (math.log(C) + 0.5 * math.log(q) - a * q)
        + x * (math.log(C) + 0.5 * math.log(q) - b * q)
        - s * _g_scalar(b * q)
        - t * _g_scalar(a * q)
    )
    return BoundReport(
        formula="key_big",
        log_value=log_value,
        inputs=_echo(rect, constants) | {"s_rect": spec.s.to_list(), "x": x, "y": y, "z": z},
        preconditions={
            "short_above_B_over_q": rect.short > constants.B / q,
            "long_at_most_log_over_2q": rect.long <= math.log(1.0 / q) / (2.0 * q),
            "s_within_limit": s <= limit,
            "t_within_limit": t <= limit,
        },
    )


def cor_key_bound(spec: "FrameSpec", j: int, constants: Constants) -> BoundReport:
    """C^9 (delta/f(R))^{|x|} exp(-Q(S, R) + 4 phi(R) q) for a j-critical R."""
    from ..droplet_events import Criticality, criticality

    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    q = constants.q
    rect = spec.r
    x, y, _, s, t = _frame_terms(spec)
    norm = x + y
    f_value = f_scale(rect, constants)
    q_value = additive_cost(spec.s, rect, q)
    log_value = (
        9.0 * math.log(constants.C)
        + norm * math.log(constants.delta / f_value)
        - q_value
        + 4.0 * rect.phi * q
    )
    wanted = Criticality.ONE if j == 1 else Criticality.TWO
    return BoundReport(
        formula=f"cor_key_{j}",
        log_value=log_value,
        inputs=_echo(rect, constants) | {"s_rect": spec.s.to_list(), "j": j, "norm_x": norm},
        preconditions={
            f"outer_is_{j}_critical": criticality(rect, constants) is wanted,
            "s_at_most_4f": s <= 4.0 * f_value,
            "t_at_most_4f": t <= 4.0 * f_value,
        },
        details={"f": f_value, "Q": q_value},
    )


def thin_rectangle_bound(rect: Rect, constants: Constants) -> BoundReport:
    """Union bound for an internally filled long thin rectangle inside R.

    (long R)^4 exp(-3e^{2B} g(B)/q), to be compared with e^{-2/q}/2.
    """
    q = constants.q
    log_value = 4.0 * math.log(rect.long) - 3.0 * math.exp(2.0 * constants.B) * _g_scalar(
        constants.B
    ) / q
    target = math.log(0.5) - 2.0 / q
    return BoundReport(
        formula="thin_rectangle",
        log_value=log_value,
        inputs=_echo(rect, constants),
        preconditions={"below_half_e_minus_2_over_q": log_value <= target},
        details={"target_log": target},
    )


def two_big_rectangles_bound(rect: Rect, constants: Constants) -> BoundReport:
    """(long R)^8 e^{-2/q}, for two disjointly filled rectangles of short side >= B/q."""
    return BoundReport(
        formula="two_big_rectangles",
        log_value=8.0 * math.log(rect.long) - 2.0 / constants.q,
        inputs=_echo(rect, constants),
    )


def leaving_diagonal_check(a: int, b: int, constants: Constants) -> InequalityCheck:
    """(2/q) * integral of g over [aq, bq] <= (b - a)(g(aq) + g(bq)) - 4Cb."""
    q = constants.q
    lhs = (2.0 / q) * g_integral(a * q, b * q) if b >= a else math.nan
    rhs = (b - a) * (_g_scalar(a * q) + _g_scalar(b * q)) - 4.0 * constants.C * b
    return InequalityCheck(
        name="leaving_diagonal",
        lhs=lhs,
        rhs=rhs,
        inputs={"a": a, "b": b, "q": q, "C": constants.C, "L1": constants.L1},
        preconditions={
            "L1_a_at_most_b": constants.L1 * a <= b,
            "b_at_most_B_over_q": b <= constants.B / q,
        },
    )


def threshold_integral_check(a: int, b: int, constants: Constants) -> InequalityCheck:
    """J(R) >= 2 lambda/q - 4e^4/sqrt(q) for a <= b and b >= (1/4q) log(1/q)."""
    q = constants.q
    lhs = 2.0 * _lambda() / q - 4.0 * math.exp(4.0) / math.sqrt(q)
    rhs = j_functional(Rect.from_dims(a, b), constants)
    return InequalityCheck(
        name="threshold_integral",
        lhs=lhs,
        rhs=rhs,
        inputs={"a": a, "b": b, "q": q},
        preconditions={
            "a_at_most_b": a <= b,
            "b_at_least_log_over_4q": b >= math.log(1.0 / q) / (4.0 * q),
        },
    )


class PcLowerBound(BaseModel):
    """The finite-n lower bound on the critical probability and its ingredients."""

    n: int
    log_n: float
    q_star: float
    p_star: float
    vacuous: bool = Field(..., description="q_star <= 0, so the bound says nothing")
    log_n_crossover: float = Field(..., description="log n above which q_star > 0")
    log_union_count: float = Field(..., description="log of n^2 (log n)^3")
    exponent: float | None = Field(None, description="-2 lambda/q + (4e^4 + L6)/sqrt(q)")
    log_failure_bound: float | None = None


def pc_lower_bound(n: int, constants: Constants) -> PcLowerBound:
    """q* = lambda/log n - (4e^4 + L6)/(log n)^{3/2} and p* = 1 - e^{-q*}."""
    if n < 2:
        raise PreconditionError(f"n must be at least 2, got {n}")
    lam = _lambda()
    log_n = math.log(n)
    slack = 4.0 * math.exp(4.0) + constants.L6
    q_star = lam / log_n - slack / log_n**1.5
    p_star = -math.expm1(-q_star)
    log_union = 2.0 * log_n + 3.0 * math.log(log_n)

    exponent = None
    failure = None
    if q_star > 0:
        exponent = -2.0 * lam / q_star + slack / math.sqrt(q_star)
        failure = log_union + exponent
    else:
        logger.info(f"p_c lower bound vacuous at n={n}: q* = {q_star:.4g}")

    return PcLowerBound(
        n=n,
        log_n=log_n,
        q_star=q_star,
        p_star=p_star,
        vacuous=q_star <= 0,
        log_n_crossover=(slack / lam) ** 2,
        log_union_count=log_union,
        exponent=exponent,
        log_failure_bound=failure,
    )
