"""Student-t and standard normal distribution functions.

Degrees of freedom may be any positive real, so Welch-Satterthwaite
fractional df need no special handling.
"""

from __future__ import annotations

import math
from functools import lru_cache
from statistics import NormalDist

from .errors import ConvergenceError, DomainError
from .specfun import _check_finite, _inc_beta_pair, DEFAULT_ACCURACY, log_gamma

__all__ = ["t_cdf", "t_sf", "t_pdf", "t_quantile", "normal_cdf", "normal_pdf", "normal_quantile"]

_STD_NORMAL = NormalDist()
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _check_df(df):
    if not isinstance(df, (int, float)) or not math.isfinite(df) or df <= 0:
        raise DomainError(f"degrees of freedom must be positive and finite, got {df!r}")


def _check_prob(p):
    _check_finite("p", p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly inside (0, 1), got {p}")


def _t_lower_tail(abs_t, df):
    """P(T <= -|t|), computed without cancellation for both small and large |t|."""
    t2 = abs_t * abs_t
    denom = df + t2
    if t2 < df:
        # I_{t^2/(df+t^2)}(1/2, df/2) is the central mass
        _, outside = _inc_beta_pair(t2 / denom, df / denom, 0.5, 0.5 * df, DEFAULT_ACCURACY)
        return 0.5 * outside
    tail, _ = _inc_beta_pair(df / denom, t2 / denom, 0.5 * df, 0.5, DEFAULT_ACCURACY)
    return 0.5 * tail


def t_cdf(t: float, df: float) -> float:
    """P(T <= t) for Student's t with ``df`` degrees of freedom."""
    _check_finite("t", t)
    _check_df(df)
    tail = _t_lower_tail(abs(t), df)
    return tail if t < 0 else 1.0 - tail


def t_sf(t: float, df: float) -> float:
    """P(T > t); accurate in the upper tail where ``1 - t_cdf`` cancels."""
    return t_cdf(-t, df)


def t_pdf(t: float, df: float) -> float:
    _check_finite("t", t)
    _check_df(df)
    log_norm = log_gamma(0.5 * (df + 1.0)) - log_gamma(0.5 * df) - 0.5 * math.log(df * math.pi)
    return math.exp(log_norm - 0.5 * (df + 1.0) * math.log1p(t * t / df))


@lru_cache(maxsize=4096)
def _t_tail_quantile(q, df):
    """|t| with P(T <= -|t|) = q for 0 < q < 1/2.

    Bisection on the tail mass itself, so small q keeps full relative precision.
    """
    guess = max(-_STD_NORMAL.inv_cdf(q), 1e-3)
    lo, hi = 0.0, guess
    while _t_lower_tail(hi, df) > q:
        lo, hi = hi, 2.0 * hi
        if not math.isfinite(hi):
            raise ConvergenceError(f"t quantile overflows (tail={q}, df={df})")
    for _ in range(2100):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _t_lower_tail(mid, df) > q:
            lo = mid
        else:
            hi = mid
    return hi if abs(_t_lower_tail(hi, df) - q) <= abs(_t_lower_tail(lo, df) - q) else lo


def t_quantile(p: float, df: float) -> float:
    """Inverse of :func:`t_cdf`."""
    _check_prob(p)
    _check_df(df)
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -_t_tail_quantile(p, float(df))
    return _t_tail_quantile(1.0 - p, float(df))


def normal_cdf(z: float) -> float:
    _check_finite("z", z)
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def normal_pdf(z: float) -> float:
    _check_finite("z", z)
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def normal_quantile(p: float) -> float:
    _check_prob(p)
    if p == 0.5:
        return 0.0
    return _STD_NORMAL.inv_cdf(p)
