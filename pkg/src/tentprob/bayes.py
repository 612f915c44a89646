"""Flat-prior posterior for a difference of means, by composition sampling.

Prior: flat on both means and on log(sigma), with a common sigma. Under this
prior the marginal posterior of mean(A) - mean(B) is exactly the pooled-t
confidence distribution, which makes the Monte Carlo draws a genuinely
independent check on the analytic routes. (A prior flat in sigma itself
would shift the degrees of freedom and only agree approximately.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import run_chunks
from .confdist import HypothesisRegion
from .errors import DegenerateDataError
from .estimators import Sample, summarize
from .hypotheses import BAYES_MC, TentativeProbability

__all__ = ["PosteriorDraws", "posterior_mean_difference", "empirical_region_probability"]


@dataclass(frozen=True, eq=False)
class PosteriorDraws:
    draws: np.ndarray
    seed: int
    n_draws: int

    def __post_init__(self):
        if len(self.draws) != self.n_draws:
            raise ValueError(f"expected {self.n_draws} draws, got {len(self.draws)}")
        self.draws.setflags(write=False)


def posterior_mean_difference(a: Sample, b: Sample, n_draws: int, seed: int, workers: int = 1) -> PosteriorDraws:
    """Draw sigma^2 = SS / chi2(n1+n2-2), then the difference ~ N(mean diff, sigma^2 (1/n1 + 1/n2))."""
    if int(n_draws) != n_draws or n_draws < 1:
        raise ValueError(f"n_draws must be a positive integer, got {n_draws}")
    s = summarize(a, b)
    ss = s.ss1 + s.ss2
    if not ss > 0:
        raise DegenerateDataError("the posterior needs a nonzero combined sum of squares")
    nu = s.n1 + s.n2 - 2
    diff = s.difference
    k = 1.0 / s.n1 + 1.0 / s.n2

    def chunk(rng, lo, hi):
        m = hi - lo
        sigma2 = ss / rng.chisquare(nu, size=m)
        return diff + np.sqrt(sigma2 * k) * rng.standard_normal(m)

    draws = np.concatenate(run_chunks(chunk, int(n_draws), seed, workers))
    return PosteriorDraws(draws, int(seed), int(n_draws))


def empirical_region_probability(d: PosteriorDraws, h: HypothesisRegion) -> TentativeProbability:
    """Fraction of draws inside the region's half-open intervals."""
    x = d.draws
    inside = 0
    for lo, hi in h.intervals:
        inside += int(np.count_nonzero((x >= lo) & (x < hi)))
    return TentativeProbability(min(1.0, inside / d.n_draws), BAYES_MC)


def mc_standard_error(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / n)
