"""Analysis reports: assembly, text rendering, structured output and density tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .confdist import (
    ConfidenceDistribution,
    Family,
    HypothesisRegion,
    cd_density,
    central_interval,
)
from .hypotheses import CDF_DIRECT, TentativeProbability, hypothesis_table
from .estimators import two_tailed_p

__all__ = [
    "GroupSummary",
    "HypothesisRow",
    "AnalysisReport",
    "build_report",
    "render_text",
    "density_rows",
    "density_markers",
    "default_density_range",
    "write_density_csv",
    "format_plain_percent",
]


@dataclass(frozen=True)
class GroupSummary:
    label: str
    n: int
    mean: Optional[float] = None


@dataclass(frozen=True)
class HypothesisRow:
    label: str
    region: str
    probability: TentativeProbability


@dataclass
class AnalysisReport:
    statistic: str
    cd: ConfidenceDistribution
    groups: list[GroupSummary]
    two_tailed_p: float
    ci_95: tuple[float, float]
    rows: list[HypothesisRow]
    metadata: dict = field(default_factory=dict)
    bayes_check: Optional[dict] = None

    def to_dict(self) -> dict:
        cd = self.cd
        out = {
            "statistic": self.statistic,
            "confidence_distribution": {
                "family": cd.family,
                "center": cd.center,
                "scale": cd.scale,
                "df": cd.df,
                "transform": cd.transform.name if cd.transform else None,
            },
            "dataset": [{"label": g.label, "n": g.n, "mean": g.mean} for g in self.groups],
            "two_tailed_p": self.two_tailed_p,
            "ci_95": list(self.ci_95),
            "hypotheses": [
                {
                    "label": r.label,
                    "region": r.region,
                    "probability": r.probability.value,
                    "method": r.probability.method,
                    "qualifier": r.probability.qualifier,
                    "display": r.probability.display(),
                }
                for r in self.rows
            ],
            "metadata": dict(self.metadata),
        }
        if self.bayes_check is not None:
            out["bayes_check"] = self.bayes_check
        return out


def build_report(
    cd: ConfidenceDistribution,
    hypotheses: Sequence[HypothesisRegion],
    groups: Sequence[GroupSummary] = (),
    method: str = CDF_DIRECT,
    metadata: Optional[dict] = None,
) -> AnalysisReport:
    if cd.family == Family.POINT_MASS:
        ci = (cd.center, cd.center)
    else:
        ci = central_interval(cd, 0.95)
    rows = [
        HypothesisRow(label, h.describe(), tp)
        for h, (label, tp) in zip(hypotheses, hypothesis_table(cd, hypotheses, method))
    ]
    return AnalysisReport(
        statistic=cd.label,
        cd=cd,
        groups=list(groups),
        two_tailed_p=two_tailed_p(cd, 0.0),
        ci_95=ci,
        rows=rows,
        metadata=dict(metadata or {}),
    )


def format_plain_percent(value: float) -> str:
    """Percent with trailing zeros dropped: 0.6635 -> '66.35%', 0.5 -> '50%'."""
    return f"{round(100.0 * value, 4):g}%"


def _describe_cd(cd):
    if cd.family == Family.T:
        df = f"{cd.df:g}" if cd.df == int(cd.df) else f"{cd.df:.2f}"
        return f"t distribution, {df} df, center {cd.center:.4g}, scale {cd.scale:.4g}"
    if cd.family == Family.NORMAL:
        return f"normal, center {cd.center:.4g}, scale {cd.scale:.4g}"
    if cd.family == Family.TRANSFORMED_NORMAL:
        return f"normal on the {cd.transform.name} scale, center {cd.center:.4g}, scale {cd.scale:.4g}"
    return f"point mass at {cd.center:.4g} (no sampling variation)"


def render_text(report: AnalysisReport) -> str:
    lines = [f"Confidence distribution for the {report.statistic}: {_describe_cd(report.cd)}"]
    if report.groups:
        lines.append("")
        lines.append(f"  {'group':<12}{'n':>8}{'mean':>12}")
        for g in report.groups:
            mean = "" if g.mean is None else f"{g.mean:.4f}"
            lines.append(f"  {g.label:<12}{g.n:>8}{mean:>12}")
    lo, hi = report.ci_95
    p = report.two_tailed_p
    lines += [
        "",
        f"  two-tailed p (null value 0): {p:.3f} ({100 * p:.1f}%)",
        f"  95% confidence interval:     {lo:+.4f} to {hi:+.4f}  (1 dp: {lo:+.1f} to {hi:+.1f})",
        "",
    ]
    w_label = max([len("Hypothesis")] + [len(r.label) for r in report.rows]) + 2
    w_region = max([len("Region")] + [len(r.region) for r in report.rows]) + 2
    lines.append(f"{'Hypothesis':<{w_label}}{'Region':<{w_region}}{'Tentative probability':<24}Method")
    for r in report.rows:
        lines.append(f"{r.label:<{w_label}}{r.region:<{w_region}}{r.probability.display():<24}{r.probability.method}")
    if report.bayes_check is not None:
        bc = report.bayes_check
        lines += ["", f"Flat-prior posterior check: {bc['draws']} draws, seed {bc['seed']}"]
        lines.append(f"{'Hypothesis':<{w_label}}{'posterior':>12}{'analytic':>12}{'MC s.e.':>10}  within 3 s.e.")
        for row in bc["rows"]:
            ok = "yes" if row["within_3_se"] else "NO"
            lines.append(
                f"{row['label']:<{w_label}}{row['posterior']:>12.5f}{row['analytic']:>12.5f}{row['mc_se']:>10.5f}  {ok}"
            )
    return "\n".join(lines) + "\n"


def default_density_range(cd: ConfidenceDistribution, width: float = 4.5) -> tuple[float, float]:
    lo = cd.center - width * cd.scale
    hi = cd.center + width * cd.scale
    if cd.family == Family.TRANSFORMED_NORMAL:
        return cd.transform.inverse(lo), cd.transform.inverse(hi)
    return lo, hi


def density_rows(cd: ConfidenceDistribution, points: int = 512, lo: float | None = None, hi: float | None = None):
    """``points`` evenly spaced (theta, density) pairs over [lo, hi]."""
    if cd.family == Family.POINT_MASS:
        raise ValueError("a point-mass distribution has no density to emit")
    if points < 2:
        raise ValueError(f"need at least 2 points, got {points}")
    dlo, dhi = default_density_range(cd)
    lo = dlo if lo is None else lo
    hi = dhi if hi is None else hi
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid density range {lo}..{hi}")
    if cd.family == Family.TRANSFORMED_NORMAL and not (cd.transform.contains(lo) and cd.transform.contains(hi)):
        raise ValueError(f"density range {lo}..{hi} leaves the parameter domain")
    step = (hi - lo) / (points - 1)
    out = []
    for i in range(points):
        theta = hi if i == points - 1 else lo + i * step
        out.append((theta, cd_density(cd, theta)))
    return out


def density_markers(cd: ConfidenceDistribution, hypotheses: Sequence[HypothesisRegion] = ()) -> list[tuple[str, float]]:
    """The vertical reference lines: zero, then each distinct hypothesis threshold."""
    thresholds = sorted({x for h in hypotheses for x in h.thresholds()})
    return [("zero", 0.0)] + [("threshold", x) for x in thresholds]


def write_density_csv(stream, rows, markers) -> None:
    """Write ``theta,density`` rows, a blank line, then a ``marker,theta`` section."""
    stream.write("theta,density\n")
    for theta, dens in rows:
        stream.write(f"{theta!r},{dens!r}\n")
    stream.write("\nmarker,theta\n")
    for name, theta in markers:
        stream.write(f"{name},{theta!r}\n")
