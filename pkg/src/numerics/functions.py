"""The threshold function g, its integral and the elementary bounds on it.

g(z) = -log(beta(1 - e^{-z})) with beta(u) = (u + sqrt(u(4 - 3u))) / 2. It is
positive, decreasing and convex on (0, inf), behaves like -log(z)/2 near zero
and like e^{-2z} at infinity, and integrates to pi^2/18 over (0, inf).
"""

import logging
import math
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from scipy import integrate

from ..exceptions import PreconditionError

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

LAMBDA_EXACT = math.pi**2 / 18
DEFAULT_TAIL_CUTOFF = 20.0
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200


def beta(u: float) -> float:
    """(u + sqrt(u(4 - 3u))) / 2 on [0, 1].

    Raises:
        PreconditionError: If u is outside [0, 1]
    """
    if not 0.0 <= u <= 1.0:
        raise PreconditionError(f"beta is defined on [0, 1], got {u}")
    return 0.5 * (u + math.sqrt(u * (4.0 - 3.0 * u)))


def _g_array(z: FloatArray) -> FloatArray:
    out = np.empty_like(z)
    small = z < 1.0
    if small.any():
        u = -np.expm1(-z[small])
        out[small] = -np.log(0.5 * (u + np.sqrt(u * (4.0 - 3.0 * u))))
    large = ~small
    if large.any():
        # 1 - beta(1 - w) = 2w^2 / (1 + w + sqrt((1 - w)(1 + 3w))), w = e^{-z}
        w = np.exp(-z[large])
        gap = 2.0 * w * w / (np.sqrt((1.0 - w) * (1.0 + 3.0 * w)) + 1.0 + w)
        out[large] = -np.log1p(-gap)
    return out


def _g_scalar(z: float) -> float:
    if z < 1.0:
        u = -math.expm1(-z)
        return -math.log(0.5 * (u + math.sqrt(u * (4.0 - 3.0 * u))))
    w = math.exp(-z)
    gap = 2.0 * w * w / (math.sqrt((1.0 - w) * (1.0 + 3.0 * w)) + 1.0 + w)
    return -math.log1p(-gap)


def g(z: float | npt.ArrayLike) -> float | FloatArray:
    """The threshold function, for a scalar or an array of z > 0.

    Raises:
        PreconditionError: If any z <= 0 (g tends to infinity at 0)
    """
    if np.ndim(z) == 0:
        value = float(z)  # type: ignore[arg-type]
        if not value > 0.0:
            raise PreconditionError(f"g is defined for z > 0, got {value}")
        return _g_scalar(value)

    arr = np.asarray(z, dtype=np.float64)
    if not (arr > 0.0).all():
        raise PreconditionError("g is defined for z > 0 only")
    return _g_array(arr)


def g_derivative(z: float, step: float | None = None) -> float:
    """Central-difference approximation of g'(z)."""
    h = step if step is not None else 1e-6 * max(z, 1e-3)
    h = min(h, 0.5 * z)
    return (_g_scalar(z + h) - _g_scalar(z - h)) / (2.0 * h)


@lru_cache(maxsize=65536)
def g_integral(lo: float, hi: float) -> float:
    """Integral of g over [lo, hi], with 0 <= lo <= hi.

    The logarithmic singularity at 0 is integrable and handled by the
    adaptive quadrature's endpoint extrapolation.
    """
    if lo < 0.0 or hi < lo:
        raise PreconditionError(f"Need 0 <= lo <= hi, got [{lo}, {hi}]")
    if hi == lo:
        return 0.0
    value, _ = integrate.quad(
        _g_scalar, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
    )
    return float(value)


def g_antiderivative(z: float) -> float:
    """G(z), the integral of g over [0, z]."""
    if z <= 1.0:
        return g_integral(0.0, z)
    return g_integral(0.0, 1.0) + g_integral(1.0, z)


def lambda_with_tail(cutoff: float = DEFAULT_TAIL_CUTOFF) -> tuple[float, float, float]:
    """The integral of g over (0, inf) split at ``cutoff``.

    Returns:
        (estimate, partial integral over [0, cutoff], bound on the tail)

    The tail is estimated by its leading term e^{-2T}/2 and bounded by
    e^{-2T}, since g(z) <= 2e^{-2z} for z >= 1.
    """
    if cutoff <= 1.0:
        raise PreconditionError(f"Tail cutoff must exceed 1, got {cutoff}")
    partial = g_integral(0.0, 1.0) + g_integral(1.0, cutoff)
    tail_bound = math.exp(-2.0 * cutoff)
    return partial + 0.5 * tail_bound, partial, tail_bound


def lambda_constant() -> float:
    """Numerical value of the integral of g, which equals pi^2/18."""
    estimate, _, tail_bound = lambda_with_tail()
    logger.debug(f"lambda = {estimate:.15f} (tail <= {tail_bound:.2e})")
    return estimate


def small_z_bounds(z: float) -> tuple[float, float]:
    """The sandwich -log(z)/2 - sqrt(z) <= g(z) <= -log(z)/2 + z for small z."""
    if not z > 0.0:
        raise PreconditionError(f"z must be positive, got {z}")
    centre = -0.5 * math.log(z)
    return centre - math.sqrt(z), centre + z


def log_ratio_bound_holds(z: float, C: float) -> bool:
    """Whether e^{2g(z)} <= C/z."""
    return 2.0 * _g_scalar(z) <= math.log(C / z)


def slope_bound_holds(z: float, B: float) -> bool:
    """Whether the slope bounds on g hold at z.

    -g'(z) <= B/z is required for z <= B and -g'(z) <= 3e^{-2z} for z >= B/2;
    both apply on [B/2, B].
    """
    slope = -g_derivative(z)
    ok = True
    if z <= B:
        ok = ok and slope <= B / z
    if z >= B / 2:
        ok = ok and slope <= 3.0 * math.exp(-2.0 * z)
    return ok


def tail_integral_bound_holds(z: float, B: float) -> bool | None:
    """Whether the integral of g over [z, inf) is at most g(z).

    Only claimed for z >= B; returns None below that.
    """
    if z < B:
        return None
    tail = g_integral(z, max(z, DEFAULT_TAIL_CUTOFF)) + 0.5 * math.exp(
        -2.0 * max(z, DEFAULT_TAIL_CUTOFF)
    )
    return tail <= _g_scalar(z)
