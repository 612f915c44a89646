"""Build confidence distributions from raw data."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .confdist import (
    FISHER_Z,
    ConfidenceDistribution,
    cd_cdf,
    cd_sf,
    normal_cd,
    point_mass_cd,
    t_cd,
    transformed_normal_cd,
)
from .errors import DegenerateDataError

__all__ = [
    "Sample",
    "TwoSampleSummary",
    "POOLED",
    "WELCH",
    "VARIANCE_MODELS",
    "summarize",
    "replicate_sample",
    "mean_difference_cd",
    "one_sample_mean_cd",
    "proportion_difference_cd",
    "correlation_cd",
    "slope_cd",
    "two_tailed_p",
    "SmallCountWarning",
]

POOLED = "pooled"
WELCH = "welch"
VARIANCE_MODELS = (POOLED, WELCH)

# relative size below which a sum of squares counts as exactly zero
_ZERO_SS_RTOL = 1e-24


class SmallCountWarning(UserWarning):
    """The normal approximation for a proportion rests on very few events."""


@dataclass(frozen=True)
class Sample:
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        bad = [v for v in vals if not math.isfinite(v)]
        if bad:
            raise DegenerateDataError(f"sample {self.label!r} contains non-finite values: {bad[:3]}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    @property
    def mean(self) -> float:
        return math.fsum(self.values) / len(self.values)

    @property
    def ss(self) -> float:
        """Sum of squared deviations about the mean."""
        m = self.mean
        return math.fsum((v - m) ** 2 for v in self.values)

    @property
    def variance(self) -> float:
        return self.ss / (len(self.values) - 1)


def _require_length(sample, n, what):
    if len(sample) < n:
        raise DegenerateDataError(f"{what} needs at least {n} observations in {sample.label or 'sample'!r}, got {len(sample)}")


@dataclass(frozen=True)
class TwoSampleSummary:
    n1: int
    n2: int
    mean1: float
    mean2: float
    ss1: float
    ss2: float

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise DegenerateDataError(f"each group needs at least 2 observations, got {self.n1} and {self.n2}")
        if self.ss1 < 0 or self.ss2 < 0:
            raise ValueError("sums of squares must be nonnegative")

    @property
    def difference(self) -> float:
        return self.mean1 - self.mean2

    @property
    def pooled_variance(self) -> float:
        return (self.ss1 + self.ss2) / (self.n1 + self.n2 - 2)


def summarize(a: Sample, b: Sample) -> TwoSampleSummary:
    _require_length(a, 2, "a two-sample comparison")
    _require_length(b, 2, "a two-sample comparison")
    return TwoSampleSummary(len(a), len(b), a.mean, b.mean, a.ss, b.ss)


def replicate_sample(a: Sample, k: int) -> Sample:
    """Concatenate ``k`` copies of a sample (mean unchanged, ss multiplied by k)."""
    if int(k) != k or k < 1:
        raise ValueError(f"replication factor must be a positive integer, got {k}")
    return Sample(a.values * int(k), a.label)


def _is_zero_ss(ss, scale_sq):
    return ss <= _ZERO_SS_RTOL * max(scale_sq, 1e-300)


def mean_difference_cd(a: Sample, b: Sample, model: str = POOLED) -> ConfidenceDistribution:
    """Confidence distribution for mean(A) - mean(B) from two independent samples."""
    if model not in VARIANCE_MODELS:
        raise ValueError(f"variance model must be one of {VARIANCE_MODELS}, got {model!r}")
    s = summarize(a, b)
    label = f"difference of means {a.label or 'A'} - {b.label or 'B'}"
    center = s.difference
    mag = max(abs(v) for v in a.values + b.values) ** 2
    if _is_zero_ss(s.ss1 + s.ss2, mag * (s.n1 + s.n2)):
        return point_mass_cd(center, label)
    if model == POOLED:
        scale = math.sqrt(s.pooled_variance * (1.0 / s.n1 + 1.0 / s.n2))
        df = s.n1 + s.n2 - 2
    else:
        v1 = s.ss1 / (s.n1 - 1) / s.n1
        v2 = s.ss2 / (s.n2 - 1) / s.n2
        scale = math.sqrt(v1 + v2)
        # Welch-Satterthwaite
        df = (v1 + v2) ** 2 / (v1 * v1 / (s.n1 - 1) + v2 * v2 / (s.n2 - 1))
    return t_cd(center, scale, df, label)


def one_sample_mean_cd(a: Sample) -> ConfidenceDistribution:
    _require_length(a, 2, "a one-sample mean")
    n = len(a)
    label = f"mean of {a.label or 'sample'}"
    mag = max(abs(v) for v in a.values) ** 2
    if _is_zero_ss(a.ss, mag * n):
        return point_mass_cd(a.mean, label)
    return t_cd(a.mean, math.sqrt(a.variance / n), n - 1, label)


def proportion_difference_cd(k1: int, n1: int, k2: int, n2: int) -> ConfidenceDistribution:
    """Wald (normal approximation, no continuity correction) distribution for p1 - p2."""
    for k, n in ((k1, n1), (k2, n2)):
        if int(k) != k or int(n) != n:
            raise ValueError(f"counts must be integers, got k={k}, n={n}")
        if n < 1:
            raise DegenerateDataError(f"group size must be at least 1, got {n}")
        if not 0 <= k <= n:
            raise DegenerateDataError(f"count {k} outside [0, {n}]")
    p1, p2 = k1 / n1, k2 / n2
    label = "difference of proportions p1 - p2"
    var = p1 * (1 - p1) / n1 + p2 * (1 - p2) / n2
    if var == 0:
        return point_mass_cd(p1 - p2, label)
    if min(k1, n1 - k1, k2, n2 - k2) < 5:
        warnings.warn(
            "fewer than 5 successes or failures in a group; the normal approximation is rough",
            SmallCountWarning,
            stacklevel=2,
        )
    return normal_cd(p1 - p2, math.sqrt(var), label)


def _pairs(pairs: Iterable[Sequence[float]]):
    xs, ys = [], []
    for x, y in pairs:
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateDataError(f"non-finite pair ({x}, {y})")
        xs.append(x)
        ys.append(y)
    return xs, ys


def _centered_moments(xs, ys):
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return mx, my, sxx, syy, sxy


def correlation_cd(pairs) -> ConfidenceDistribution:
    """Fisher-z confidence distribution for Pearson's correlation coefficient."""
    xs, ys = _pairs(pairs)
    n = len(xs)
    if n < 4:
        raise DegenerateDataError(f"correlation needs at least 4 pairs, got {n}")
    _, _, sxx, syy, sxy = _centered_moments(xs, ys)
    if sxx == 0 or syy == 0:
        raise DegenerateDataError("correlation is undefined when a coordinate is constant")
    r = sxy / math.sqrt(sxx * syy)
    if abs(r) >= 1.0 - 1e-15:
        raise DegenerateDataError(f"|r| = 1 (r={r!r}); the Fisher z transform is undefined")
    return transformed_normal_cd(math.atanh(r), 1.0 / math.sqrt(n - 3), FISHER_Z, "correlation coefficient")


def slope_cd(pairs) -> ConfidenceDistribution:
    """t confidence distribution for the least-squares slope of y on x."""
    xs, ys = _pairs(pairs)
    n = len(xs)
    if n < 3:
        raise DegenerateDataError(f"slope needs at least 3 pairs, got {n}")
    _, _, sxx, syy, sxy = _centered_moments(xs, ys)
    if sxx == 0:
        raise DegenerateDataError("slope is undefined when x is constant")
    slope = sxy / sxx
    sse = max(syy - slope * sxy, 0.0)
    label = "regression slope"
    if sse <= 1e-20 * max(syy, 1e-300):
        return point_mass_cd(slope, label)
    resid_se = math.sqrt(sse / (n - 2))
    return t_cd(slope, resid_se / math.sqrt(sxx), n - 2, label)


def two_tailed_p(cd: ConfidenceDistribution, null_value: float = 0.0) -> float:
    """Two-tailed p value of a point null, 2 * min(F(null), 1 - F(null))."""
    lower = cd_cdf(cd, null_value)
    upper = cd_sf(cd, null_value)
    return min(1.0, 2.0 * min(lower, upper))
