"""Hypothesis regions and the frequentist routes to tentative probabilities.

Three routes are provided:

* ``tp_from_p``: from a reported two-tailed p value (sign-of-effect hypotheses only).
* ``tp_interval_inversion``: search over confidence levels until an
  equal-tailed interval has the threshold as an endpoint.
* ``tp_cdf_direct``: integrate the confidence distribution over the region.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from typing import Sequence

from .confdist import (
    INF,
    ConfidenceDistribution,
    Family,
    HypothesisRegion,
    cd_cdf,
    central_interval,
    is_symmetric,
    region_mass,
)
from .errors import ConvergenceError, DomainError, HypothesisParseError

__all__ = [
    "PVALUE_BRIDGE",
    "INTERVAL_INVERSION",
    "CDF_DIRECT",
    "BAYES_MC",
    "EXACT",
    "LOWER_BOUND",
    "UPPER_BOUND",
    "TentativeProbability",
    "PValueInput",
    "HypothesisRegion",
    "MethodFallbackWarning",
    "parse_hypothesis",
    "tp_cdf_direct",
    "tp_from_p",
    "tp_interval_inversion",
    "tp_region_inversion",
    "hypothesis_table",
    "format_percent",
]

PVALUE_BRIDGE = "pvalue-bridge"
INTERVAL_INVERSION = "interval-inversion"
CDF_DIRECT = "cdf-direct"
BAYES_MC = "bayes-mc"
METHODS = (PVALUE_BRIDGE, INTERVAL_INVERSION, CDF_DIRECT, BAYES_MC)

EXACT = "exact"
LOWER_BOUND = "lower-bound"
UPPER_BOUND = "upper-bound"


class MethodFallbackWarning(UserWarning):
    """The requested method does not apply, so the direct CDF route was used instead."""


@dataclass(frozen=True)
class TentativeProbability:
    value: float
    method: str
    qualifier: str = EXACT

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {self.value}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.qualifier not in (EXACT, LOWER_BOUND, UPPER_BOUND):
            raise ValueError(f"unknown qualifier {self.qualifier!r}")
        if self.qualifier != EXACT and self.method != PVALUE_BRIDGE:
            raise ValueError("only p-value bridged probabilities can be bounds")

    def display(self) -> str:
        text = format_percent(self.value)
        if self.qualifier == LOWER_BOUND:
            return "> " + text
        if self.qualifier == UPPER_BOUND:
            return "< " + text
        return text


@dataclass(frozen=True)
class PValueInput:
    p: float
    relation: str = "equals"  # or "less-than"
    estimate_sign: str = "positive"  # or "negative"

    def __post_init__(self):
        if not (isinstance(self.p, (int, float)) and 0.0 < self.p <= 1.0):
            raise DomainError(f"p must lie in (0, 1], got {self.p!r}")
        if self.relation not in ("equals", "less-than"):
            raise ValueError(f"relation must be 'equals' or 'less-than', got {self.relation!r}")
        if self.estimate_sign not in ("positive", "negative"):
            raise ValueError(f"estimate_sign must be 'positive' or 'negative', got {self.estimate_sign!r}")


def format_percent(value: float) -> str:
    """Percent text with one decimal near 0%, near 100% and from 99% up; whole percent otherwise."""
    pct = 100.0 * value
    whole = f"{pct:.0f}"
    if whole in ("0", "-0", "100") or pct >= 99.0:
        return f"{pct:.1f}%"
    return whole + "%"


# --- hypothesis grammar -----------------------------------------------------

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_CMP_RE = re.compile(rf"\s*(>=|<=|>|<)\s*({_NUM})\s*$")
_RANGE_RE = re.compile(rf"\s*(between|outside)\s+({_NUM})\s+and\s+({_NUM})\s*$", re.IGNORECASE)


def _first_bad_position(text):
    """Best-effort index of the first character that stops matching the grammar."""
    stripped = text.lstrip()
    pos = len(text) - len(stripped)
    m = re.match(r"(>=|<=|>|<)\s*", stripped)
    if m:
        pos += m.end()
        rest = stripped[m.end():]
        n = re.match(_NUM, rest)
        return pos + (n.end() if n else 0)
    m = re.match(r"(between|outside)\s+", stripped, re.IGNORECASE)
    if m:
        pos += m.end()
        rest = stripped[m.end():]
        n = re.match(_NUM + r"\s*", rest)
        if not n:
            return pos
        pos += n.end()
        rest = rest[n.end():]
        k = re.match(r"and\s*", rest)
        if not k:
            return pos
        pos += k.end()
        n = re.match(_NUM, rest[k.end():])
        return pos + (n.end() if n else 0)
    return pos


def parse_hypothesis(spec: str, label: str | None = None) -> HypothesisRegion:
    """Parse ``"> c"``, ``"< c"``, ``">= c"``, ``"<= c"``, ``"between a and b"`` or ``"outside a and b"``.

    A leading ``"name: "`` sets the label, e.g. ``"A >> B: > 1"``. Strict and
    non-strict comparisons give the same region since all intervals are
    half-open and the in-scope distributions are continuous.
    """
    text = spec
    if label is None and ":" in spec:
        head, _, text = spec.partition(":")
        label = head.strip()
        if not label:
            raise HypothesisParseError("empty label", spec, 0)
    offset = len(spec) - len(text)
    body = text.strip()
    label = label if label else body

    m = _CMP_RE.match(text)
    if m:
        op, c = m.group(1), float(m.group(2))
        if op in (">", ">="):
            return HypothesisRegion(label, ((c, INF),))
        return HypothesisRegion(label, ((-INF, c),))
    m = _RANGE_RE.match(text)
    if m:
        kind, a, b = m.group(1).lower(), float(m.group(2)), float(m.group(3))
        if not a < b:
            raise HypothesisParseError(f"need a < b in '{kind} a and b'", spec, offset + m.start(3))
        if kind == "between":
            return HypothesisRegion(label, ((a, b),))
        return HypothesisRegion(label, ((-INF, a), (b, INF)))
    raise HypothesisParseError("cannot parse hypothesis", spec, offset + _first_bad_position(text))


# --- methods ----------------------------------------------------------------


def tp_cdf_direct(cd: ConfidenceDistribution, h: HypothesisRegion) -> TentativeProbability:
    return TentativeProbability(region_mass(cd, h), CDF_DIRECT)


def tp_from_p(inp: PValueInput) -> tuple[TentativeProbability, TentativeProbability]:
    """(positive, negative) tentative probabilities from a two-tailed p value about zero."""
    toward = 1.0 - inp.p / 2.0
    away = inp.p / 2.0
    if inp.relation == "less-than":
        q_toward, q_away = LOWER_BOUND, UPPER_BOUND
    else:
        q_toward = q_away = EXACT
    hi = TentativeProbability(toward, PVALUE_BRIDGE, q_toward)
    lo = TentativeProbability(away, PVALUE_BRIDGE, q_away)
    if inp.estimate_sign == "positive":
        return hi, lo
    return lo, hi


def tp_interval_inversion(
    cd: ConfidenceDistribution,
    threshold: float,
    *,
    use_quantiles: bool = False,
    level_tol: float = 1e-13,
    max_steps: int = 200,
) -> tuple[float, TentativeProbability]:
    """Find the confidence level whose central interval has ``threshold`` as an endpoint.

    Returns ``(level, P(parameter > threshold))``. Each bisection step asks
    whether the candidate interval reaches past the threshold. By default the
    check compares the interval's tail mass with the CDF at the threshold;
    ``use_quantiles=True`` builds the interval endpoints explicitly, which is
    slower but mirrors doing it by hand with a stats package.
    """
    if not is_symmetric(cd):
        raise DomainError(f"interval inversion needs an equal-tailed symmetric family, got {cd.family}")
    if not math.isfinite(threshold):
        raise DomainError(f"threshold must be finite, got {threshold}")
    if threshold == cd.center:
        return 0.0, TentativeProbability(0.5, INTERVAL_INVERSION)

    below = threshold < cd.center
    tail_at_threshold = cd_cdf(cd, threshold) if below else cd_cdf(cd, 2 * cd.center - threshold)
    if tail_at_threshold <= 0.0:
        # threshold sits beyond double resolution of the tail: every interval misses it
        level = 1.0
    else:
        lo, hi = 0.0, 1.0
        for _ in range(max_steps):
            level = 0.5 * (lo + hi)
            if use_quantiles:
                lower, upper = central_interval(cd, level)
                reaches = lower <= threshold if below else upper >= threshold
            else:
                reaches = 0.5 * (1.0 - level) <= tail_at_threshold
            if reaches:
                hi = level
            else:
                lo = level
            if hi - lo <= level_tol:
                break
        else:
            raise ConvergenceError(f"interval inversion did not converge for threshold {threshold}")
        level = 0.5 * (lo + hi)
    tail = 0.5 * (1.0 - level)
    above = level + tail if below else tail
    return level, TentativeProbability(min(1.0, max(0.0, above)), INTERVAL_INVERSION)


def tp_region_inversion(cd: ConfidenceDistribution, h: HypothesisRegion) -> TentativeProbability:
    """Interval inversion applied endpoint by endpoint: mass of [a, b) = P(> a) - P(> b)."""

    def above(x):
        if x == -INF:
            return 1.0
        if x == INF:
            return 0.0
        return tp_interval_inversion(cd, x)[1].value

    total = math.fsum(above(lo) - above(hi) for lo, hi in h.intervals)
    return TentativeProbability(min(1.0, max(0.0, total)), INTERVAL_INVERSION)


def _pvalue_route(cd, h):
    from .estimators import two_tailed_p

    ivs = h.intervals
    if len(ivs) == 1 and cd.family != Family.POINT_MASS and cd.center != 0.0 and 0.0 in ivs[0]:
        lo, hi = ivs[0]
        if (lo, hi) in ((0.0, INF), (-INF, 0.0)):
            sign = "positive" if cd.center > 0 else "negative"
            p = two_tailed_p(cd, 0.0)
            if p > 0:
                pos, neg = tp_from_p(PValueInput(p, "equals", sign))
                return pos if lo == 0.0 else neg
    return None


def evaluate(cd: ConfidenceDistribution, h: HypothesisRegion, method: str = CDF_DIRECT) -> TentativeProbability:
    """Tentative probability of ``h`` by the requested route, falling back to the CDF route with a warning."""
    if method == CDF_DIRECT:
        return tp_cdf_direct(cd, h)
    if method == INTERVAL_INVERSION:
        if is_symmetric(cd):
            return tp_region_inversion(cd, h)
        warnings.warn(
            f"interval inversion needs equal tails; {cd.family} uses the cdf route for {h.label!r}",
            MethodFallbackWarning,
            stacklevel=2,
        )
        return tp_cdf_direct(cd, h)
    if method == PVALUE_BRIDGE:
        tp = _pvalue_route(cd, h)
        if tp is not None:
            return tp
        warnings.warn(
            f"the p-value route only covers '> 0' and '< 0' for a nonzero estimate; {h.label!r} uses the cdf route",
            MethodFallbackWarning,
            stacklevel=2,
        )
        return tp_cdf_direct(cd, h)
    raise ValueError(f"unknown method {method!r}")


def hypothesis_table(
    cd: ConfidenceDistribution, hs: Sequence[HypothesisRegion], method: str = CDF_DIRECT
) -> list[tuple[str, TentativeProbability]]:
    if not hs:
        raise ValueError("at least one hypothesis is required")
    return [(h.label, evaluate(cd, h, method)) for h in hs]
