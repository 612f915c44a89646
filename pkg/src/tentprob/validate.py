"""Monte Carlo check of the confidence-distribution property.

If the pooled-t distribution is a genuine confidence distribution, its CDF
evaluated at the true difference is Uniform(0, 1) over repeated samples.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._rng import run_chunks
from .confdist import cd_cdf, central_interval
from .estimators import Sample, mean_difference_cd

__all__ = ["CoverageScenario", "CoverageResult", "coverage_experiment", "ks_distance", "ks_critical_value"]

_REPS_PER_CHUNK = 1024


@dataclass(frozen=True)
class CoverageScenario:
    true_mean_a: float = 0.0
    true_mean_b: float = 0.0
    true_sd: float = 1.0
    n_per_group: int = 10
    replications: int = 10_000
    seed: int = 42

    def __post_init__(self):
        if not (self.true_sd > 0 and math.isfinite(self.true_sd)):
            raise ValueError(f"true_sd must be positive, got {self.true_sd}")
        if not (math.isfinite(self.true_mean_a) and math.isfinite(self.true_mean_b)):
            raise ValueError("true means must be finite")
        if int(self.n_per_group) != self.n_per_group or self.n_per_group < 2:
            raise ValueError(f"n_per_group must be an integer >= 2, got {self.n_per_group}")
        if int(self.replications) != self.replications or self.replications < 1:
            raise ValueError(f"replications must be a positive integer, got {self.replications}")
        if self.seed < 0 or int(self.seed) != self.seed:
            raise ValueError(f"seed must be an unsigned integer, got {self.seed}")
        if self.replications < 100:
            warnings.warn("fewer than 100 replications; the KS check has little power", stacklevel=2)

    @property
    def true_difference(self) -> float:
        return self.true_mean_a - self.true_mean_b


@dataclass(frozen=True, eq=False)
class CoverageResult:
    scenario: CoverageScenario
    ks_distance: float
    interval_coverage_95: float
    u: np.ndarray

    @property
    def ks_critical(self) -> float:
        return ks_critical_value(len(self.u))

    @property
    def passed(self) -> bool:
        return self.ks_distance < self.ks_critical


def ks_critical_value(n: int, alpha: float = 0.01) -> float:
    """Large-sample one-sample KS critical value, sqrt(-ln(alpha/2)/2)/sqrt(n) (1.63/sqrt(n) at 1%)."""
    return math.sqrt(-0.5 * math.log(alpha / 2.0)) / math.sqrt(n)


def ks_distance(values, cdf=None) -> float:
    """Sup distance between the empirical CDF of ``values`` and ``cdf`` (Uniform(0,1) if None)."""
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    if n == 0:
        raise ValueError("need at least one value")
    f = x if cdf is None else np.array([cdf(v) for v in x])
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def coverage_experiment(s: CoverageScenario, workers: int = 1) -> CoverageResult:
    """Repeatedly sample two normal groups and record F(true difference) for each replication."""
    delta = s.true_difference
    n = int(s.n_per_group)

    def chunk(rng, lo, hi):
        m = hi - lo
        xa = rng.normal(s.true_mean_a, s.true_sd, size=(m, n))
        xb = rng.normal(s.true_mean_b, s.true_sd, size=(m, n))
        us = np.empty(m)
        hits = 0
        for j in range(m):
            cd = mean_difference_cd(Sample(xa[j]), Sample(xb[j]))
            us[j] = cd_cdf(cd, delta)
            lower, upper = central_interval(cd, 0.95)
            hits += lower <= delta <= upper
        return us, hits

    parts = run_chunks(chunk, int(s.replications), s.seed, workers, chunk_size=_REPS_PER_CHUNK)
    u = np.concatenate([p[0] for p in parts])
    u.setflags(write=False)
    coverage = sum(p[1] for p in parts) / s.replications
    return CoverageResult(s, ks_distance(u), coverage, u)
