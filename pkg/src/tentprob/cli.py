"""Command-line front end.

Exit codes: 0 success, 2 bad input (missing file, malformed CSV, bad
arguments), 3 data that cannot support the statistic.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .bayes import empirical_region_probability, mc_standard_error, posterior_mean_difference
from .confdist import region_mass
from .errors import DegenerateDataError, DomainError, HypothesisParseError, RegionError
from .estimators import (
    POOLED,
    WELCH,
    Sample,
    correlation_cd,
    mean_difference_cd,
    proportion_difference_cd,
    replicate_sample,
    slope_cd,
)
from .hypotheses import (
    CDF_DIRECT,
    INTERVAL_INVERSION,
    PVALUE_BRIDGE,
    PValueInput,
    parse_hypothesis,
    tp_from_p,
)
from .report import (
    GroupSummary,
    build_report,
    density_markers,
    density_rows,
    format_plain_percent,
    render_text,
    write_density_csv,
)
from .validate import CoverageScenario, coverage_experiment

PROG = "tentprob"
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

METHOD_NAMES = {"cdf": CDF_DIRECT, "inversion": INTERVAL_INVERSION, "pvalue": PVALUE_BRIDGE}

MEANS_DEFAULT_HYPOTHESES = (
    "A > B: > 0",
    "A < B: < 0",
    "A >> B: > 1",
    "A ≈ B: between -1 and 1",
    "A << B: < -1",
)
SIGN_DEFAULT_HYPOTHESES = ("positive: > 0", "negative: < 0")


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


# --- input ------------------------------------------------------------------


def _is_number(text):
    try:
        return math.isfinite(float(text))
    except ValueError:
        return False


def read_rows(path, width):
    """Numeric rows of exactly ``width`` columns; a non-numeric first row is a header."""
    p = Path(path)
    if not p.is_file():
        raise InputError(f"file not found: {path}")
    with p.open(newline="") as fh:
        raw = [[c.strip() for c in row] for row in csv.reader(fh)]
    raw = [r for r in raw if any(r)]
    if raw and not all(_is_number(c) for c in raw[0]):
        raw = raw[1:]
    rows = []
    for i, r in enumerate(raw, start=1):
        cells = [c for c in r if c != ""]
        if len(cells) != width:
            raise InputError(f"{path}: data row {i} has {len(cells)} values, expected {width}")
        if not all(_is_number(c) for c in cells):
            raise InputError(f"{path}: data row {i} is not numeric: {','.join(r)}")
        rows.append([float(c) for c in cells])
    return rows


def read_sample(path, label):
    rows = read_rows(path, 1)
    if len(rows) < 2:
        raise InputError(f"{path}: need at least 2 numeric rows, got {len(rows)}")
    return Sample([r[0] for r in rows], label)


def read_pairs(path):
    rows = read_rows(path, 2)
    if not rows:
        raise InputError(f"{path}: no numeric rows")
    return [(r[0], r[1]) for r in rows]


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep or not _is_number(lo) or not _is_number(hi):
        raise argparse.ArgumentTypeError(f"range must look like LO..HI, got {text!r}")
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"range needs LO < HI, got {text!r}")
    return lo, hi


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _unsigned_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected an unsigned integer, got {text!r}")
    return v


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Confidence levels (tentative probabilities) for hypotheses from confidence distributions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument(
        "--hypothesis",
        action="append",
        metavar="H",
        help="hypothesis such as '> 0', 'between -1 and 1', optionally 'LABEL: > 1' (repeatable)",
    )
    analysis.add_argument("--method", choices=sorted(METHOD_NAMES), default="cdf")
    analysis.add_argument(
        "--json", nargs="?", const="-", metavar="FILE", help="structured report to FILE, or to stdout if no FILE"
    )
    analysis.add_argument("--density", metavar="FILE", help="write the confidence density curve as CSV")
    analysis.add_argument("--points", type=_positive_int, default=512, help="density grid size (default 512)")
    analysis.add_argument(
        "--range", type=_parse_range, metavar="LO..HI", help="density range (default center +/- 4.5 scales)"
    )

    means = sub.add_parser("means", parents=[analysis], help="difference of two independent means")
    means.add_argument("file_a", help="CSV with one value per row for group A")
    means.add_argument("file_b", help="CSV with one value per row for group B")
    means.add_argument("--welch", action="store_true", help="unpooled variances with Welch-Satterthwaite df")
    means.add_argument("--replicate", type=_positive_int, default=1, metavar="K", help="use K copies of each sample")
    means.add_argument("--bayes-check", action="store_true", help="cross-check against flat-prior posterior draws")
    means.add_argument("--draws", type=_positive_int, default=1_000_000, metavar="N")
    means.add_argument("--seed", type=_unsigned_int, default=2017, metavar="S")

    prop = sub.add_parser("prop", parents=[analysis], help="difference of two proportions (Wald)")
    prop.add_argument("--k1", type=_unsigned_int, required=True)
    prop.add_argument("--n1", type=_positive_int, required=True)
    prop.add_argument("--k2", type=_unsigned_int, required=True)
    prop.add_argument("--n2", type=_positive_int, required=True)

    corr = sub.add_parser("corr", parents=[analysis], help="Pearson correlation (Fisher z)")
    corr.add_argument("file", help="CSV with x,y per row")

    slope = sub.add_parser("slope", parents=[analysis], help="least-squares regression slope")
    slope.add_argument("file", help="CSV with x,y per row")

    fromp = sub.add_parser("from-p", help="tentative probabilities from a two-tailed p value")
    fromp.add_argument("--p", type=float, required=True, help="two-tailed p value about zero")
    fromp.add_argument("--sign", choices=("positive", "negative"), default="positive", help="sign of the estimate")
    fromp.add_argument("--p-is-bound", action="store_true", help="the p value is an upper bound (p < value)")
    fromp.add_argument("--json", nargs="?", const="-", metavar="FILE")

    cov = sub.add_parser("coverage", help="Monte Carlo calibration of the pooled-t confidence distribution")
    cov.add_argument("--delta", type=float, default=0.0, help="true mean difference A - B")
    cov.add_argument("--sd", type=float, default=1.0, help="common population standard deviation")
    cov.add_argument("--n", type=_positive_int, default=10, help="observations per group")
    cov.add_argument("--reps", type=_positive_int, default=10_000, help="replications")
    cov.add_argument("--seed", type=_unsigned_int, default=42)
    cov.add_argument("--json", nargs="?", const="-", metavar="FILE")
    return parser


# --- commands ---------------------------------------------------------------


def _hypotheses(args, defaults):
    return [parse_hypothesis(text) for text in (args.hypothesis or defaults)]


def _emit(args, payload, text, out):
    """Text to stdout unless JSON goes there; JSON to file or stdout."""
    if args.json is None:
        out.write(text)
        return
    blob = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if args.json == "-":
        out.write(blob)
    else:
        Path(args.json).write_text(blob, encoding="utf-8")
        out.write(text)


def _finish_analysis(args, cd, hyps, groups, metadata, out, bayes=None):
    method = METHOD_NAMES[args.method]
    report = build_report(cd, hyps, groups, method, metadata)
    if bayes is not None:
        report.bayes_check = bayes(hyps)
        report.metadata["seed"] = args.seed
    if args.density:
        rng = args.range or (None, None)
        try:
            rows = density_rows(cd, args.points, *rng)
        except ValueError as exc:
            raise InputError(f"cannot emit density: {exc}") from exc
        with open(args.density, "w", newline="") as fh:
            write_density_csv(fh, rows, density_markers(cd, hyps))
    _emit(args, report.to_dict(), render_text(report), out)


def run_means(args, out):
    a = read_sample(args.file_a, "A")
    b = read_sample(args.file_b, "B")
    if args.replicate > 1:
        a = replicate_sample(a, args.replicate)
        b = replicate_sample(b, args.replicate)
    model = WELCH if args.welch else POOLED
    cd = mean_difference_cd(a, b, model)
    hyps = _hypotheses(args, MEANS_DEFAULT_HYPOTHESES)
    groups = [GroupSummary(s.label, len(s), s.mean) for s in (a, b)]
    metadata = {"variance_model": model, "replicate": args.replicate, "method": METHOD_NAMES[args.method]}

    def bayes(hs):
        draws = posterior_mean_difference(a, b, args.draws, args.seed)
        rows = []
        for h in hs:
            analytic = region_mass(cd, h)
            post = empirical_region_probability(draws, h).value
            se = mc_standard_error(analytic, args.draws)
            rows.append({
                "label": h.label,
                "posterior": post,
                "analytic": analytic,
                "mc_se": se,
                "within_3_se": abs(post - analytic) <= 3 * se or post == analytic,
            })
        return {"draws": args.draws, "seed": args.seed, "rows": rows}

    if args.bayes_check and model != POOLED:
        warnings.warn("the posterior check assumes a common variance; it is compared against the Welch result")
    _finish_analysis(args, cd, hyps, groups, metadata, out, bayes if args.bayes_check else None)


def run_prop(args, out):
    cd = proportion_difference_cd(args.k1, args.n1, args.k2, args.n2)
    groups = [GroupSummary("group 1", args.n1, args.k1 / args.n1), GroupSummary("group 2", args.n2, args.k2 / args.n2)]
    _finish_analysis(args, cd, _hypotheses(args, SIGN_DEFAULT_HYPOTHESES), groups,
                     {"method": METHOD_NAMES[args.method], "interval_basis": "wald"}, out)


def run_corr(args, out):
    pairs = read_pairs(args.file)
    cd = correlation_cd(pairs)
    _finish_analysis(args, cd, _hypotheses(args, SIGN_DEFAULT_HYPOTHESES), [GroupSummary("pairs", len(pairs))],
                     {"method": METHOD_NAMES[args.method], "transform": "fisher-z"}, out)


def run_slope(args, out):
    pairs = read_pairs(args.file)
    cd = slope_cd(pairs)
    _finish_analysis(args, cd, _hypotheses(args, SIGN_DEFAULT_HYPOTHESES), [GroupSummary("pairs", len(pairs))],
                     {"method": METHOD_NAMES[args.method]}, out)


def run_from_p(args, out):
    relation = "less-than" if args.p_is_bound else "equals"
    try:
        inp = PValueInput(args.p, relation, args.sign)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    pos, neg = tp_from_p(inp)
    payload = {
        "p": args.p,
        "relation": relation,
        "estimate_sign": args.sign,
        "positive": {"probability": pos.value, "qualifier": pos.qualifier, "method": pos.method},
        "negative": {"probability": neg.value, "qualifier": neg.qualifier, "method": neg.method},
    }

    def line(name, tp):
        prefix = {"lower-bound": "> ", "upper-bound": "< "}.get(tp.qualifier, "")
        return f"{name} {prefix}{format_plain_percent(tp.value)}"

    text = "\n".join([line("positive", pos), line("negative", neg)]) + "\n"
    _emit(args, payload, text, out)


def run_coverage(args, out):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            scenario = CoverageScenario(args.delta, 0.0, args.sd, args.n, args.reps, args.seed)
    except ValueError as exc:
        raise InputError(f"invalid scenario: {exc}") from exc
    res = coverage_experiment(scenario)
    verdict = "PASS" if res.passed else "FAIL"
    payload = {
        "delta": args.delta,
        "sd": args.sd,
        "n_per_group": args.n,
        "replications": args.reps,
        "seed": args.seed,
        "ks_distance": res.ks_distance,
        "ks_critical_alpha_0_01": res.ks_critical,
        "passed": res.passed,
        "interval_coverage_95": res.interval_coverage_95,
    }
    text = (
        f"scenario: delta={args.delta:g} sd={args.sd:g} n={args.n} per group, "
        f"{args.reps} replications, seed {args.seed}\n"
        f"KS distance of F(true difference) from Uniform(0,1): {res.ks_distance:.5f} "
        f"(critical {res.ks_critical:.5f} at alpha=0.01) {verdict}\n"
        f"95% interval coverage: {res.interval_coverage_95:.4f}\n"
    )
    _emit(args, payload, text, out)


COMMANDS = {
    "means": run_means,
    "prop": run_prop,
    "corr": run_corr,
    "slope": run_slope,
    "from-p": run_from_p,
    "coverage": run_coverage,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            COMMANDS[args.command](args, out)
        for w in caught:
            print(f"{PROG}: notice: {w.message}", file=err)
    except (InputError, HypothesisParseError, RegionError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=err)
        return EXIT_INPUT
    except (DegenerateDataError, DomainError) as exc:
        print(f"{PROG}: error: {exc}", file=err)
        return EXIT_DEGENERATE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
