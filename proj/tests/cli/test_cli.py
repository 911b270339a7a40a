"""End-to-end tests of the persist-lab command line tool.

The binary path comes from PERSIST_LAB_BIN (set by ctest); exit codes are
0 success, 1 usage/validation, 2 numerical failure, 3 I/O failure.
"""

import json
import math
import os
import subprocess

import pytest

BIN = os.environ.get("PERSIST_LAB_BIN", "persist-lab")


def run(*args, **kwargs):
    return subprocess.run([BIN, *args], capture_output=True, text=True,
                          timeout=300, **kwargs)


def data_rows(text):
    rows = [line for line in text.splitlines()
            if line and not line.startswith("#")]
    return rows[0].split(","), [r.split(",") for r in rows[1:]]


def test_analyze_reference_point():
    res = run("analyze", "--lambda", "2", "--a", "1", "--b", "1")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["t_c"] == pytest.approx(1.2464504802804610, abs=1e-6)
    assert doc["nu1"] * doc["nu2"] == pytest.approx(-2.0, rel=1e-12)
    assert doc["delta_c_lower_bound"] == pytest.approx(0.7361499744, rel=1e-8)


def test_analyze_figure_regime_is_finite():
    res = run("analyze", "--lambda", "2", "--a", "1e-6", "--b", "1e-3")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    for key in ("disc", "nu1", "nu2", "c1", "c2", "t_star", "t_c",
                "delta_c_lower_bound"):
        assert math.isfinite(doc[key]), key


def test_analyze_with_delta_c():
    res = run("analyze", "--lambda", "2", "--a", "1", "--b", "1", "--delta-c")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["delta_c"]["value"] == pytest.approx(1.34903, abs=1e-4)


def test_bad_rates_exit_code_1():
    res = run("analyze", "--lambda", "2", "--a", "0", "--b", "1")
    assert res.returncode == 1
    res = run("analyze", "--lambda", "-3", "--a", "1", "--b", "1")
    assert res.returncode == 1


def test_unknown_flag_exit_code_1():
    res = run("analyze", "--nope")
    assert res.returncode == 1


def test_tc_grid_defaults(tmp_path):
    out = tmp_path / "grid.csv"
    res = run("tc-grid", "--out", str(out))
    assert res.returncode == 0
    text = out.read_text()
    cols, rows = data_rows(text)
    assert cols == ["lambda", "a", "b", "tc"]
    assert len(rows) == 400
    tcs = [float(r[3]) for r in rows]
    assert all(math.isfinite(t) and t > 0 for t in tcs)
    summary = [line for line in text.splitlines() if line.startswith("# summary")]
    assert len(summary) == 1
    assert "ratio=" in summary[0]
    ratio = float(summary[0].split("ratio=")[1])
    assert ratio == pytest.approx(max(tcs) / min(tcs), rel=1e-12)

    # bit-for-bit reproducibility
    out2 = tmp_path / "grid2.csv"
    assert run("tc-grid", "--out", str(out2)).returncode == 0
    assert out2.read_bytes() == out.read_bytes()


def test_tc_grid_single_cell_matches_analyze(tmp_path):
    out = tmp_path / "one.csv"
    res = run("tc-grid", "--a-min", "1e-3", "--a-max", "1e-3", "--b-min",
              "1e-3", "--b-max", "1e-3", "--grid", "1", "--out", str(out))
    assert res.returncode == 0
    _, rows = data_rows(out.read_text())
    assert len(rows) == 1
    doc = json.loads(run("analyze", "--lambda", "2", "--a", "1e-3", "--b",
                         "1e-3").stdout)
    assert float(rows[0][3]) == pytest.approx(doc["t_c"], rel=1e-12)


def test_tc_lambda_strictly_decreasing(tmp_path):
    out = tmp_path / "tcl.csv"
    res = run("tc-lambda", "--out", str(out))
    assert res.returncode == 0
    cols, rows = data_rows(out.read_text())
    assert cols == ["lambda", "tc"]
    tcs = [float(r[1]) for r in rows]
    assert all(b < a for a, b in zip(tcs, tcs[1:]))

    out2 = tmp_path / "tcl2.csv"
    assert run("tc-lambda", "--out", str(out2)).returncode == 0
    assert out2.read_bytes() == out.read_bytes()


def test_tc_lambda_single_point_matches_analyze(tmp_path):
    out = tmp_path / "one.csv"
    res = run("tc-lambda", "--lambda-min", "2", "--lambda-max", "2",
              "--points", "1", "--a", "1e-6", "--b", "1e-3", "--out", str(out))
    assert res.returncode == 0
    _, rows = data_rows(out.read_text())
    doc = json.loads(run("analyze", "--lambda", "2", "--a", "1e-6", "--b",
                         "1e-3").stdout)
    assert float(rows[0][1]) == pytest.approx(doc["t_c"], rel=1e-12)


def test_mprime_schema_envelope_and_sign_change(tmp_path):
    out = tmp_path / "mp.csv"
    res = run("mprime", "--lambda", "2", "--a", "1", "--b", "1",
              "--delta-min", "0.1", "--delta-max", "50", "--points", "40",
              "--out", str(out))
    assert res.returncode == 0
    cols, rows = data_rows(out.read_text())
    assert cols == ["delta", "m_prime", "lower_envelope", "upper_envelope"]
    changes = 0
    prev_positive = None
    for r in rows:
        delta, mp, lo, hi = (float(v) for v in r)
        assert lo - 1e-9 <= mp <= hi + 1e-9
        if delta == pytest.approx(0.5, rel=0.25):
            pass
        positive = mp > 0
        if prev_positive is not None and positive != prev_positive:
            changes += 1
        prev_positive = positive
    assert changes == 1
    low_rows = [r for r in rows if float(r[0]) < 0.7361]
    assert low_rows and all(float(r[1]) > 0 for r in low_rows)


def test_mprime_divergence_exit_code_2(tmp_path):
    res = run("mprime", "--lambda", "2", "--a", "1", "--b", "1",
              "--quad-nodes", "16", "--quad-tol", "1e-15",
              "--quad-max-refine", "0")
    assert res.returncode == 2


def test_delta_c_command():
    res = run("delta-c", "--lambda", "2", "--a", "1", "--b", "1")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["delta_c"] == pytest.approx(1.34903, abs=1e-4)
    assert doc["delta_c"] >= doc["lower_bound"]
    assert doc["multiple_sign_changes"] is False


def test_survival_subcritical(tmp_path):
    out = tmp_path / "reps.csv"
    res = run("survival", "--lambda", "2", "--a", "1", "--b", "1",
              "--period", str(0.5 * 1.2464504802804610), "--reps", "1000",
              "--epochs", "100", "--seed", "31", "--out", str(out))
    assert res.returncode == 0
    cols, rows = data_rows(out.read_text())
    assert cols == ["replicate", "survived", "extinct_epoch", "final_n2",
                    "capped"]
    assert len(rows) == 1000
    scols, srows = data_rows(res.stdout)
    assert scols == ["lambda", "a", "b", "schedule", "param", "reps", "epochs",
                     "survivors", "p_hat", "ci_lo", "ci_hi", "seed"]
    assert float(srows[0][8]) <= 0.005


def test_survival_poisson_supercritical_and_deterministic_output(tmp_path):
    args = ("survival", "--lambda", "2", "--a", "1", "--b", "1", "--delta",
            "0.5", "--reps", "500", "--epochs", "6", "--seed", "9", "--cap",
            "1000000")
    out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    res1 = run(*args, "--out", str(out1))
    res2 = run(*args, "--out", str(out2))
    assert res1.returncode == 0
    assert res1.stdout == res2.stdout
    assert out1.read_bytes() == out2.read_bytes()
    _, srows = data_rows(res1.stdout)
    assert float(srows[0][8]) > 0


def test_survival_cap_storm_exit_code_2():
    res = run("survival", "--lambda", "2", "--a", "1", "--b", "1", "--period",
              "50", "--reps", "200", "--epochs", "3", "--seed", "1", "--cap",
              "50")
    assert res.returncode == 2


def test_survival_threads_do_not_change_output(tmp_path):
    base = ("survival", "--lambda", "2", "--a", "1", "--b", "1", "--delta",
            "1.0", "--reps", "400", "--epochs", "15", "--seed", "77", "--cap",
            "1000000")
    one = run(*base, "--threads", "1")
    env = dict(os.environ, PERSIST_LAB_THREADS="4")
    four = subprocess.run([BIN, *base], capture_output=True, text=True,
                          timeout=300, env=env)
    assert one.returncode == 0
    assert one.stdout.replace('"threads":1', '"threads":4') == four.stdout


def test_coupling_check_monotone():
    res = run("coupling-check", "--lambda", "2", "--a", "1", "--b", "1",
              "--delta", "0.3", "--delta-high", "3", "--horizon", "20",
              "--reps", "2000", "--seed", "12")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["violations"] == 0
    assert doc["p_low"] >= doc["p_high"]


def test_coupling_check_near_equal_intensities():
    res = run("coupling-check", "--lambda", "2", "--a", "1", "--b", "1",
              "--delta", "0.3", "--delta-high", str(0.3 + 1e-9), "--horizon",
              "20", "--reps", "1000", "--seed", "13")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert abs(doc["p_low"] - doc["p_high"]) <= 0.004


def test_plot_line_and_heatmap(tmp_path):
    tcl = tmp_path / "tcl.csv"
    run("tc-lambda", "--points", "10", "--out", str(tcl))
    svg = tmp_path / "tcl.svg"
    res = run("plot", "--in", str(tcl), "--out", str(svg))
    assert res.returncode == 0
    text = svg.read_text()
    assert "<polyline" in text
    assert ">lambda<" in text
    assert ">tc<" in text

    grid = tmp_path / "grid.csv"
    run("tc-grid", "--grid", "5", "--out", str(grid))
    hm = tmp_path / "grid.svg"
    res = run("plot", "--in", str(grid), "--out", str(hm))
    assert res.returncode == 0
    assert hm.read_text().count("<rect") >= 25


def test_plot_empty_csv_exit_code_3(tmp_path):
    bad = tmp_path / "empty.csv"
    bad.write_text("# persist-lab 0.1.0\n# config {}\n# seed 0\nlambda,tc\n")
    res = run("plot", "--in", str(bad))
    assert res.returncode == 3
    assert res.stderr.strip()


def test_plot_missing_file_exit_code_3():
    res = run("plot", "--in", "/nonexistent/nope.csv")
    assert res.returncode == 3


def test_svg_plus_csv_format(tmp_path):
    out = tmp_path / "mp.csv"
    res = run("mprime", "--lambda", "2", "--a", "1", "--b", "1", "--points",
              "12", "--format", "svg+csv", "--out", str(out))
    assert res.returncode == 0
    assert out.exists()
    assert (tmp_path / "mp.csv.svg").read_text().startswith("<svg")


def test_csv_headers_carry_config_and_seed(tmp_path):
    out = tmp_path / "tcl.csv"
    run("tc-lambda", "--points", "5", "--out", str(out))
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# persist-lab 0.1.0")
    assert lines[1].startswith("# config {")
    json.loads(lines[1][len("# config "):])
    assert lines[2].startswith("# seed ")
