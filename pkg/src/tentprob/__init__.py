"""Confidence distributions and tentative probabilities for interval hypotheses."""

__version__ = "0.1.0"

from .confdist import (
    ConfidenceDistribution,
    HypothesisRegion,
    cd_cdf,
    cd_density,
    cd_quantile,
    central_interval,
    region_mass,
)
from .estimators import (
    Sample,
    correlation_cd,
    mean_difference_cd,
    one_sample_mean_cd,
    proportion_difference_cd,
    replicate_sample,
    slope_cd,
    two_tailed_p,
)
from .hypotheses import (
    PValueInput,
    TentativeProbability,
    hypothesis_table,
    parse_hypothesis,
    tp_cdf_direct,
    tp_from_p,
    tp_interval_inversion,
)

__all__ = [
    "ConfidenceDistribution",
    "HypothesisRegion",
    "cd_cdf",
    "cd_density",
    "cd_quantile",
    "central_interval",
    "region_mass",
    "Sample",
    "correlation_cd",
    "mean_difference_cd",
    "one_sample_mean_cd",
    "proportion_difference_cd",
    "replicate_sample",
    "slope_cd",
    "two_tailed_p",
    "PValueInput",
    "TentativeProbability",
    "hypothesis_table",
    "parse_hypothesis",
    "tp_cdf_direct",
    "tp_from_p",
    "tp_interval_inversion",
]
