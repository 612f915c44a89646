"""Special functions: log-gamma and the regularized incomplete beta function.

Everything here is pure Python on floats. Non-finite arguments are rejected
with :class:`DomainError` so that NaN never leaks into a probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "log_gamma",
    "log_beta",
    "reg_inc_beta",
    "inv_reg_inc_beta",
]

_EPS = 2.220446049250313e-16
_TINY = 1e-300

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Accuracy:
    """Tolerance and iteration budget for the iterative routines."""

    abs_tol: float = 1e-12
    max_iter: int = 300

    def __post_init__(self):
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be positive and finite, got {self.abs_tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter}")


DEFAULT_ACCURACY = Accuracy()


def _check_finite(name, value):
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise DomainError(f"{name} must be a finite real, got {value!r}")


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    _check_finite("x", x)
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) for a, b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def _beta_cf(x, a, b, acc):
    """Continued fraction for I_x(a,b), modified Lentz. Valid for x < (a+1)/(a+b+2)."""
    tol = max(acc.abs_tol * 1e-3, _EPS)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, acc.max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= tol:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge in {acc.max_iter} "
        f"iterations (x={x}, a={a}, b={b})"
    )


def _check_beta_args(x, a, b):
    _check_finite("x", x)
    _check_finite("a", a)
    _check_finite("b", b)
    if a <= 0 or b <= 0:
        raise DomainError(f"shape parameters must be positive, got a={a}, b={b}")
    if x < 0 or x > 1:
        raise DomainError(f"x must lie in [0, 1], got {x}")


def _inc_beta_pair(x, xc, a, b, acc):
    """Return (I_x(a,b), 1 - I_x(a,b)) given x and its complement xc = 1 - x.

    Passing xc separately lets callers avoid the cancellation in 1 - x.
    """
    if x == 0.0:
        return 0.0, 1.0
    if xc == 0.0:
        return 1.0, 0.0
    log_front = a * math.log(x) + b * math.log(xc) - log_beta(a, b)
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        val = front * _beta_cf(x, a, b, acc) / a
        return val, 1.0 - val
    comp = front * _beta_cf(xc, b, a, acc) / b
    return 1.0 - comp, comp


def reg_inc_beta(x: float, a: float, b: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    _check_beta_args(x, a, b)
    val, _ = _inc_beta_pair(x, 1.0 - x, a, b, accuracy)
    return min(1.0, max(0.0, val))


def _beta_density(x, a, b, lbeta):
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return math.exp((a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - lbeta)


def inv_reg_inc_beta(p: float, a: float, b: float, accuracy: Accuracy = DEFAULT_ACCURACY) -> float:
    """Inverse of :func:`reg_inc_beta` in x.

    Bisection keeps a bracket in [0, 1]; Newton steps are taken whenever
    they land strictly inside it.
    """
    _check_finite("p", p)
    _check_beta_args(0.5, a, b)
    if p < 0 or p > 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    lbeta = log_beta(a, b)
    lo, hi = 0.0, 1.0
    x = a / (a + b)
    # Newton can stall on the flat side of the curve, so the budget covers a
    # full bisection to double resolution on top of max_iter Newton attempts.
    for _ in range(accuracy.max_iter + 1100):
        f = reg_inc_beta(x, a, b, accuracy) - p
        # relative to the nearer tail so small p keep their significant digits
        if abs(f) <= 4.0 * _EPS * min(p, 1.0 - p):
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= _EPS * max(hi, _TINY):
            return x
        dens = _beta_density(x, a, b, lbeta)
        nxt = x - f / dens if dens > 0 else math.nan
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        x = nxt
    if abs(reg_inc_beta(x, a, b, accuracy) - p) < accuracy.abs_tol:
        return x
    raise ConvergenceError(f"inv_reg_inc_beta did not converge (p={p}, a={a}, b={b})")
