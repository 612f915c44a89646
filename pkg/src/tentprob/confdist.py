"""Confidence distributions over a scalar parameter.

A :class:`ConfidenceDistribution` is immutable. The operations are module
level functions (``cd_cdf``, ``cd_quantile``, ...) so they read the same
way regardless of family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import dist
from .errors import DomainError, RegionError

__all__ = [
    "Family",
    "Transform",
    "FISHER_Z",
    "ConfidenceDistribution",
    "HypothesisRegion",
    "t_cd",
    "normal_cd",
    "point_mass_cd",
    "transformed_normal_cd",
    "cd_cdf",
    "cd_sf",
    "cd_quantile",
    "central_interval",
    "cd_density",
    "region_mass",
    "is_symmetric",
]

INF = math.inf


class Family:
    T = "t-location-scale"
    NORMAL = "normal-location-scale"
    TRANSFORMED_NORMAL = "transformed-normal"
    POINT_MASS = "point-mass"

    ALL = (T, NORMAL, TRANSFORMED_NORMAL, POINT_MASS)


@dataclass(frozen=True)
class Transform:
    """Strictly increasing map from the parameter axis to the base (normal) axis."""

    name: str
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    derivative: Callable[[float], float]
    lower: float = -INF  # open parameter domain (lower, upper)
    upper: float = INF

    def contains(self, theta):
        return self.lower < theta < self.upper


FISHER_Z = Transform(
    name="fisher-z",
    forward=math.atanh,
    inverse=math.tanh,
    derivative=lambda r: 1.0 / (1.0 - r * r),
    lower=-1.0,
    upper=1.0,
)


@dataclass(frozen=True)
class ConfidenceDistribution:
    """Parametric confidence distribution.

    For the transformed-normal family ``center`` and ``scale`` live on the
    base axis (e.g. Fisher z), not on the parameter axis.
    """

    family: str
    center: float
    scale: float
    df: Optional[float] = None
    transform: Optional[Transform] = None
    label: str = ""

    def __post_init__(self):
        if self.family not in Family.ALL:
            raise ValueError(f"unknown family {self.family!r}")
        if not math.isfinite(self.center):
            raise DomainError(f"center must be finite, got {self.center}")
        if self.family == Family.POINT_MASS:
            if self.scale != 0:
                raise ValueError("point-mass distributions have scale 0")
        elif not (self.scale > 0 and math.isfinite(self.scale)):
            raise DomainError(f"scale must be positive and finite, got {self.scale}")
        if self.family == Family.T:
            if self.df is None or not (self.df > 0 and math.isfinite(self.df)):
                raise DomainError(f"t family needs positive finite df, got {self.df}")
        elif self.df is not None:
            raise ValueError(f"df only applies to the t family, not {self.family}")
        if (self.transform is not None) != (self.family == Family.TRANSFORMED_NORMAL):
            raise ValueError("a transform is required exactly for the transformed-normal family")


def t_cd(center, scale, df, label=""):
    return ConfidenceDistribution(Family.T, float(center), float(scale), df=float(df), label=label)


def normal_cd(center, scale, label=""):
    return ConfidenceDistribution(Family.NORMAL, float(center), float(scale), label=label)


def point_mass_cd(center, label=""):
    return ConfidenceDistribution(Family.POINT_MASS, float(center), 0.0, label=label)


def transformed_normal_cd(base_center, base_scale, transform, label=""):
    return ConfidenceDistribution(
        Family.TRANSFORMED_NORMAL, float(base_center), float(base_scale), transform=transform, label=label
    )


def is_symmetric(cd: ConfidenceDistribution) -> bool:
    """True for the location-scale families whose central intervals are symmetric about the center."""
    return cd.family in (Family.T, Family.NORMAL)


def _standardize(cd, theta):
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta}")
    if cd.family == Family.TRANSFORMED_NORMAL:
        if not cd.transform.contains(theta):
            raise DomainError(
                f"theta={theta} outside the {cd.transform.name} domain "
                f"({cd.transform.lower}, {cd.transform.upper})"
            )
        return (cd.transform.forward(theta) - cd.center) / cd.scale
    return (theta - cd.center) / cd.scale


def _base_cdf(cd, z):
    if cd.family == Family.T:
        return dist.t_cdf(z, cd.df)
    return dist.normal_cdf(z)


def cd_cdf(cd: ConfidenceDistribution, theta: float) -> float:
    """Confidence mass at or below ``theta``."""
    if cd.family == Family.POINT_MASS:
        if not math.isfinite(theta):
            raise DomainError(f"theta must be finite, got {theta}")
        return 1.0 if theta >= cd.center else 0.0
    return _base_cdf(cd, _standardize(cd, theta))


def cd_sf(cd: ConfidenceDistribution, theta: float) -> float:
    """Confidence mass above ``theta`` (1 - cdf, without cancellation for continuous families)."""
    if cd.family == Family.POINT_MASS:
        return 1.0 - cd_cdf(cd, theta)
    return _base_cdf(cd, -_standardize(cd, theta))


def cd_quantile(cd: ConfidenceDistribution, p: float) -> float:
    if cd.family == Family.POINT_MASS:
        raise DomainError("quantiles are not defined for a point-mass distribution")
    if cd.family == Family.T:
        z = dist.t_quantile(p, cd.df)
    else:
        z = dist.normal_quantile(p)
    base = cd.center + cd.scale * z
    if cd.family == Family.TRANSFORMED_NORMAL:
        return cd.transform.inverse(base)
    return base


def central_interval(cd: ConfidenceDistribution, level: float) -> tuple[float, float]:
    """Equal-tailed interval holding ``level`` of the confidence mass."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie strictly inside (0, 1), got {level}")
    tail = 0.5 * (1.0 - level)
    return cd_quantile(cd, tail), cd_quantile(cd, 1.0 - tail)


def cd_density(cd: ConfidenceDistribution, theta: float) -> float:
    if cd.family == Family.POINT_MASS:
        raise DomainError("a point-mass distribution has no density")
    z = _standardize(cd, theta)
    if cd.family == Family.T:
        return dist.t_pdf(z, cd.df) / cd.scale
    dens = dist.normal_pdf(z) / cd.scale
    if cd.family == Family.TRANSFORMED_NORMAL:
        dens *= abs(cd.transform.derivative(theta))
    return dens


@dataclass(frozen=True)
class HypothesisRegion:
    """Named union of disjoint half-open intervals [lower, upper) on the parameter axis."""

    label: str
    intervals: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise RegionError(f"region {self.label!r} has no intervals")
        prev_hi = -INF
        for i, (lo, hi) in enumerate(ivs):
            if math.isnan(lo) or math.isnan(hi):
                raise RegionError(f"region {self.label!r}: NaN endpoint")
            if not lo < hi:
                raise RegionError(f"region {self.label!r}: interval {i} has lower >= upper ({lo}, {hi})")
            if i and lo < prev_hi:
                raise RegionError(f"region {self.label!r}: intervals overlap or are unsorted near {lo}")
            prev_hi = hi

    def complement(self, label=None) -> "HypothesisRegion":
        out = []
        cursor = -INF
        for lo, hi in self.intervals:
            if lo > cursor:
                out.append((cursor, lo))
            cursor = hi
        if cursor < INF:
            out.append((cursor, INF))
        return HypothesisRegion(label or f"not ({self.label})", tuple(out))

    def thresholds(self) -> list[float]:
        """Finite interval endpoints, ascending and deduplicated."""
        pts = sorted({x for iv in self.intervals for x in iv if math.isfinite(x)})
        return pts

    def contains(self, theta: float) -> bool:
        return any(lo <= theta < hi for lo, hi in self.intervals)

    def describe(self) -> str:
        parts = []
        for lo, hi in self.intervals:
            if lo == -INF and hi == INF:
                parts.append("any value")
            elif lo == -INF:
                parts.append(f"< {hi:g}")
            elif hi == INF:
                parts.append(f"> {lo:g}")
            else:
                parts.append(f"between {lo:g} and {hi:g}")
        return " or ".join(parts)


def _mass_below(cd, x):
    """Mass strictly below x, i.e. the left limit F(x-), clamped to the parameter domain."""
    if x == -INF:
        return 0.0
    if x == INF:
        return 1.0
    if cd.family == Family.POINT_MASS:
        return 1.0 if cd.center < x else 0.0
    if cd.family == Family.TRANSFORMED_NORMAL:
        if x <= cd.transform.lower:
            return 0.0
        if x >= cd.transform.upper:
            return 1.0
    return cd_cdf(cd, x)


def _mass_between(cd, lo, hi):
    if cd.family != Family.POINT_MASS and hi == INF:
        if lo == -INF:
            return 1.0
        if cd.family == Family.TRANSFORMED_NORMAL and lo <= cd.transform.lower:
            return 1.0
        if cd.family == Family.TRANSFORMED_NORMAL and lo >= cd.transform.upper:
            return 0.0
        return cd_sf(cd, lo)
    return _mass_below(cd, hi) - _mass_below(cd, lo)


def region_mass(cd: ConfidenceDistribution, region: HypothesisRegion) -> float:
    """Confidence mass of a region: sum of F(upper) - F(lower) over its intervals."""
    total = math.fsum(_mass_between(cd, lo, hi) for lo, hi in region.intervals)
    return min(1.0, max(0.0, total))
