import io
import json
import subprocess
import sys

import numpy as np
import pytest

from tentprob.cli import main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv + ["--json"])
    assert code == 0, err
    return json.loads(out)


def test_means_reproduces_table2_small(table1_files):
    code, out, err = run(["means", *table1_files])
    assert code == 0 and err == ""
    for label, text in [("A > B", "66%"), ("A < B", "34%"), ("A >> B", "17%"), ("A ≈ B", "79%"), ("A << B", "4%")]:
        line = next(l for l in out.splitlines() if l.startswith(label + " "))
        assert text in line.split()
    assert "0.673 (67.3%)" in out
    assert "-1.2 to +1.8" in out


def test_means_replicated(table1_files):
    rep = run_json(["means", *table1_files, "--replicate", "40"])
    assert rep["two_tailed_p"] == pytest.approx(0.004, abs=5e-4)
    lo, hi = rep["ci_95"]
    assert (round(lo, 1), round(hi, 1)) == (0.1, 0.5)
    assert rep["confidence_distribution"]["df"] == 798
    assert [h["display"] for h in rep["hypotheses"]] == ["99.8%", "0.2%", "0.0%", "100.0%", "0.0%"]
    assert rep["metadata"]["replicate"] == 40


def test_structured_output_schema(table1_files):
    rep = run_json(["means", *table1_files, "--hypothesis", "> 0"])
    assert set(rep) >= {"statistic", "dataset", "two_tailed_p", "ci_95", "hypotheses", "metadata"}
    assert rep["dataset"] == [{"label": "A", "n": 10, "mean": pytest.approx(6.3)}, {"label": "B", "n": 10, "mean": 6.0}]
    row = rep["hypotheses"][0]
    assert row["probability"] == pytest.approx(0.66334003091678755, abs=1e-12)
    assert row["method"] == "cdf-direct" and row["qualifier"] == "exact"
    assert rep["metadata"]["variance_model"] == "pooled"


def test_methods_agree(table1_files):
    hyps = ["--hypothesis", "> 0", "--hypothesis", "between -1 and 1", "--hypothesis", "outside -0.5 and 2"]
    cdf = run_json(["means", *table1_files, "--method", "cdf", *hyps])
    inv = run_json(["means", *table1_files, "--method", "inversion", *hyps])
    for a, b in zip(cdf["hypotheses"], inv["hypotheses"]):
        assert abs(a["probability"] - b["probability"]) < 1e-8
        assert b["method"] == "interval-inversion"


def test_pvalue_method_falls_back_with_notice(table1_files):
    code, out, err = run(["means", *table1_files, "--method", "pvalue", "--json"])
    assert code == 0
    rep = json.loads(out)
    assert [h["method"] for h in rep["hypotheses"]][:2] == ["pvalue-bridge", "pvalue-bridge"]
    assert rep["hypotheses"][2]["method"] == "cdf-direct"
    assert "notice" in err


def test_welch_flag(table1_files):
    rep = run_json(["means", *table1_files, "--welch"])
    assert rep["metadata"]["variance_model"] == "welch"
    assert rep["confidence_distribution"]["df"] < 18


def test_json_to_file_keeps_text_on_stdout(table1_files, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(["means", *table1_files, "--json", str(path)])
    assert code == 0
    assert "Tentative probability" in out
    assert json.loads(path.read_text())["two_tailed_p"] == pytest.approx(0.673, abs=5e-4)


def test_text_and_json_agree_after_rounding(table1_files):
    from tentprob.hypotheses import format_percent

    _, text, _ = run(["means", *table1_files])
    rep = run_json(["means", *table1_files])
    for h in rep["hypotheses"]:
        line = next(l for l in text.splitlines() if l.startswith(h["label"] + " "))
        assert format_percent(h["probability"]) in line.split()


def test_bayes_check(table1_files):
    rep = run_json(["means", *table1_files, "--bayes-check", "--draws", "200000", "--seed", "5"])
    assert rep["metadata"]["seed"] == 5
    assert all(row["within_3_se"] for row in rep["bayes_check"]["rows"])


def test_density_emission(table1_files, tmp_path):
    path = tmp_path / "density.csv"
    code, _, _ = run(["means", *table1_files, "--density", str(path), "--hypothesis", "> 0", "--hypothesis", "> 1"])
    assert code == 0
    curve, markers = path.read_text().split("\n\n")
    rows = np.array([[float(v) for v in line.split(",")] for line in curve.splitlines()[1:]])
    assert rows.shape == (512, 2)
    assert rows[0, 0] == pytest.approx(0.3 - 4.5 * 0.7)
    assert rows[-1, 0] == pytest.approx(0.3 + 4.5 * 0.7)
    x, y = rows[:, 0], rows[:, 1]
    assert np.sum(np.diff(x) * (y[1:] + y[:-1]) / 2) > 0.999
    assert rows[np.argmax(rows[:, 1]), 0] == pytest.approx(0.3, abs=(9 * 0.7) / 511)
    mlines = markers.strip().splitlines()
    assert mlines[0] == "marker,theta"
    thetas = [float(l.split(",")[1]) for l in mlines[1:]]
    assert 0.0 in thetas and 1.0 in thetas


def test_density_options(table1_files, tmp_path):
    path = tmp_path / "d.csv"
    code, _, _ = run(["means", *table1_files, "--density", str(path), "--points", "11", "--range=-1..2"])
    assert code == 0
    curve = path.read_text().split("\n\n")[0].splitlines()[1:]
    assert len(curve) == 11
    assert float(curve[0].split(",")[0]) == -1.0 and float(curve[-1].split(",")[0]) == 2.0
    code, _, err = run(["means", *table1_files, "--density", str(path), "--range=2..1"])
    assert code == 2 and "range" in err


def test_from_p():
    code, out, _ = run(["from-p", "--p", "0.673", "--sign", "positive"])
    assert code == 0
    assert out.splitlines() == ["positive 66.35%", "negative 33.65%"]
    _, out, _ = run(["from-p", "--p", "0.001", "--p-is-bound", "--sign", "positive"])
    assert "positive > 99.95%" in out
    _, out, _ = run(["from-p", "--p", "1.0"])
    assert out.splitlines() == ["positive 50%", "negative 50%"]
    _, out, _ = run(["from-p", "--p", "0.2", "--sign", "negative"])
    assert out.splitlines() == ["positive 10%", "negative 90%"]


def test_from_p_out_of_range():
    code, out, err = run(["from-p", "--p", "1.5"])
    assert code == 2 and out == "" and "error" in err


def test_prop_corr_slope(tmp_path):
    rep = run_json(["prop", "--k1", "30", "--n1", "100", "--k2", "20", "--n2", "100"])
    assert rep["confidence_distribution"]["scale"] == pytest.approx(0.0608276253, abs=1e-9)
    xy = tmp_path / "xy.csv"
    xy.write_text("x,y\n" + "\n".join(f"{i},{2 * i + (i % 3)}" for i in range(12)) + "\n")
    rep = run_json(["corr", str(xy)])
    assert rep["confidence_distribution"]["transform"] == "fisher-z"
    assert rep["hypotheses"][0]["probability"] > 0.99
    rep = run_json(["slope", str(xy), "--hypothesis", "between 1.9 and 2.1"])
    assert rep["confidence_distribution"]["df"] == 10


def test_corr_inversion_notice(tmp_path):
    xy = tmp_path / "xy.csv"
    xy.write_text("\n".join(f"{i},{(i * 7) % 5}" for i in range(10)) + "\n")
    code, _, err = run(["corr", str(xy), "--method", "inversion"])
    assert code == 0 and "notice" in err


def test_coverage_command():
    code, out, _ = run(["coverage", "--delta", "0", "--sd", "1", "--n", "10", "--reps", "10000", "--seed", "42"])
    assert code == 0 and "PASS" in out
    again = run(["coverage", "--delta", "0", "--sd", "1", "--n", "10", "--reps", "10000", "--seed", "42"])[1]
    assert again == out
    code, out, _ = run(["coverage", "--reps", "100"])
    assert code == 0 and "critical" in out
    code, _, err = run(["coverage", "--sd", "-1"])
    assert code == 2 and "scenario" in err


def test_error_exit_codes(tmp_path, table1_files):
    code, _, err = run(["means", str(tmp_path / "missing.csv"), table1_files[1]])
    assert code == 2 and "not found" in err
    bad = tmp_path / "bad.csv"
    bad.write_text("1\n2\nthree\n")
    assert run(["means", str(bad), table1_files[1]])[0] == 2
    short = tmp_path / "short.csv"
    short.write_text("1\n")
    assert run(["means", str(short), table1_files[1]])[0] == 2
    line = tmp_path / "line.csv"
    line.write_text("\n".join(f"{i},{3 * i}" for i in range(6)))
    code, _, err = run(["corr", str(line)])
    assert code == 3 and err.count("\n") == 1
    code, _, err = run(["means", *table1_files, "--hypothesis", "around 0"])
    assert code == 2 and "position" in err


def test_subprocess_streams(table1_files):
    proc = subprocess.run(
        [sys.executable, "-m", "tentprob", "means", *table1_files, "--method", "pvalue", "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    json.loads(proc.stdout)  # diagnostics never land in the data stream
    assert "notice" in proc.stderr


def test_welch_bayes_check_notice(table1_files):
    code, _, err = run(["means", *table1_files, "--welch", "--bayes-check", "--draws", "1000"])
    assert code == 0 and "common variance" in err
