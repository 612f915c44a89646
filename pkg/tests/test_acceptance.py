"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import contextlib
import io
import itertools
import json

import mpmath
import pytest

import test_properties as props
from conftest import ACCEPTANCE_LINES, TABLE1_A, TABLE1_B
from tentprob.bayes import empirical_region_probability, mc_standard_error, posterior_mean_difference
from tentprob.cli import main
from tentprob.confdist import cd_cdf, central_interval, region_mass
from tentprob.dist import t_cdf
from tentprob.estimators import Sample, mean_difference_cd, replicate_sample, two_tailed_p
from tentprob.hypotheses import (
    PValueInput,
    hypothesis_table,
    parse_hypothesis,
    tp_cdf_direct,
    tp_from_p,
    tp_interval_inversion,
)
from tentprob.specfun import reg_inc_beta
from tentprob.validate import CoverageScenario, coverage_experiment, ks_distance

pytestmark = pytest.mark.acceptance

TABLE2 = ["A > B: > 0", "A < B: < 0", "A >> B: > 1", "A ≈ B: between -1 and 1", "A << B: < -1"]


@contextlib.contextmanager
def criterion(number, title):
    detail = []
    try:
        yield detail
    except BaseException:
        ACCEPTANCE_LINES.append(f"[FAIL] {number}. {title} {' '.join(detail)}")
        raise
    ACCEPTANCE_LINES.append(f"[PASS] {number}. {title} {' '.join(detail)}")


def small():
    return mean_difference_cd(Sample(TABLE1_A), Sample(TABLE1_B))


def large():
    return mean_difference_cd(replicate_sample(Sample(TABLE1_A), 40), replicate_sample(Sample(TABLE1_B), 40))


def cli_json(argv):
    out, err = io.StringIO(), io.StringIO()
    assert main(argv + ["--json"], out=out, err=err) == 0, err.getvalue()
    return json.loads(out.getvalue())


def test_1_table1_small_sample():
    with criterion(1, "Table 1 small samples: p and 95% interval") as d:
        cd = small()
        p = two_tailed_p(cd, 0.0)
        lo, hi = central_interval(cd, 0.95)
        d.append(f"p={p:.4f} ci=({lo:.4f}, {hi:.4f})")
        assert abs(p - 0.673) <= 0.0005
        assert (round(lo, 1), round(hi, 1)) == (-1.2, 1.8)


def test_2_table1_large_sample(table1_files):
    with criterion(2, "Table 1 large samples via --replicate 40") as d:
        rep = cli_json(["means", *table1_files, "--replicate", "40"])
        p = rep["two_tailed_p"]
        lo, hi = rep["ci_95"]
        df = rep["confidence_distribution"]["df"]
        d.append(f"p={p:.5f} ci=({lo:.4f}, {hi:.4f}) df={df:g}")
        assert abs(p - 0.004) <= 0.0005
        assert (round(lo, 1), round(hi, 1)) == (0.1, 0.5)
        assert df == 798


def test_3_table2_reproduction():
    with criterion(3, "Table 2 all ten rows at display rounding") as d:
        hs = [parse_hypothesis(t) for t in TABLE2]
        shown = [tp.display() for cd in (small(), large()) for _, tp in hypothesis_table(cd, hs)]
        d.append(" ".join(shown))
        assert shown == ["66%", "34%", "17%", "79%", "4%", "99.8%", "0.2%", "0.0%", "100.0%", "0.0%"]


def test_4_worked_example():
    with criterion(4, "66.35% worked example and the 32.7% interval") as d:
        cd = small()
        tp = tp_cdf_direct(cd, parse_hypothesis("> 0")).value
        level, _ = tp_interval_inversion(cd, 0.0)
        d.append(f"P(>0)={tp:.5f} level={level:.5f}")
        assert 0.6630 <= tp <= 0.6640
        assert 0.326 <= level <= 0.328


def test_5_method_agreement():
    with criterion(5, "Method 1 = Method 3 at 0; Method 2 = Method 3 at -1, 0, 1") as d:
        worst13 = worst23 = 0.0
        for cd in (small(), large()):
            m3 = tp_cdf_direct(cd, parse_hypothesis("> 0")).value
            pos, _ = tp_from_p(PValueInput(two_tailed_p(cd, 0.0), "equals", "positive"))
            worst13 = max(worst13, abs(pos.value - m3))
        cd = small()
        for threshold in (-1.0, 0.0, 1.0):
            m3 = tp_cdf_direct(cd, parse_hypothesis(f"> {threshold}")).value
            worst23 = max(worst23, abs(tp_interval_inversion(cd, threshold)[1].value - m3))
        d.append(f"|M1-M3|={worst13:.1e} |M2-M3|={worst23:.1e}")
        assert worst13 < 1e-12
        assert worst23 < 1e-8


def test_6_special_functions():
    with criterion(6, "incomplete beta vs quadrature on 50 points; t_cdf anchors") as d:
        mpmath.mp.dps = 30
        xs = [0.02, 0.2, 0.45, 0.7, 0.97]
        shapes = [(0.5, 0.5), (0.7, 3.0), (1.0, 1.0), (2.0, 5.0), (2.5, 4.0),
                  (5.0, 1.5), (9.0, 0.5), (10.0, 10.0), (0.5, 20.0), (30.0, 12.0)]
        worst = 0.0
        for x, (a, b) in itertools.product(xs, shapes):
            dens = lambda t: t ** (a - 1) * (1 - t) ** (b - 1)
            oracle = mpmath.quad(dens, [0, x]) / mpmath.quad(dens, [0, x, 1])
            worst = max(worst, abs(reg_inc_beta(x, a, b) - float(oracle)))
        d.append(f"max err={worst:.1e}")
        assert worst < 1e-11
        assert all(t_cdf(0.0, df) == 0.5 for df in (0.5, 1, 18, 798, 1e6))
        assert abs(t_cdf(1.0, 1) - 0.75) < 1e-12


def test_7_bayesian_equivalence():
    with criterion(7, "flat-prior posterior matches Method 3; KS of 1e5 draws") as d:
        a, b = Sample(TABLE1_A), Sample(TABLE1_B)
        cd = small()
        draws = posterior_mean_difference(a, b, 1_000_000, seed=2017)
        zs = []
        for text in TABLE2:
            h = parse_hypothesis(text)
            exact = region_mass(cd, h)
            got = empirical_region_probability(draws, h).value
            zs.append(abs(got - exact) / mc_standard_error(exact, draws.n_draws))
        ks = ks_distance(posterior_mean_difference(a, b, 100_000, seed=2017).draws, lambda v: cd_cdf(cd, v))
        d.append("z=" + ",".join(f"{z:.2f}" for z in zs) + f" KS={ks:.5f}")
        assert all(z < 3 for z in zs)
        assert ks < 0.00516


@pytest.mark.parametrize("delta, n", [(0.0, 10), (2.0, 30)])
def test_8_coverage(delta, n):
    with criterion(8, f"coverage scenario delta={delta:g} n={n}") as d:
        res = coverage_experiment(CoverageScenario(delta, 0.0, 1.0, n, 10_000, 42))
        d.append(f"KS={res.ks_distance:.5f} coverage={res.interval_coverage_95:.4f}")
        assert res.ks_distance < 0.0163
        assert 0.944 <= res.interval_coverage_95 <= 0.956


def test_9_property_suite():
    checks = [
        props.test_partition_sums_to_one,
        props.test_swap_mirrors_masses,
        props.test_shift_of_group_a_shifts_center,
        props.test_scaling_both_groups,
        props.test_quantile_affine_equivariance,
        props.test_density_matches_cdf_slope,
    ]
    with criterion(9, "randomized invariants, 250 cases each") as d:
        for check in checks:
            check()
        d.append(f"{len(checks)} properties")
