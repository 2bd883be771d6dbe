"""End-to-end tests for the hzlab command line (binary path in HZLAB_BIN)."""

import json
import math
import os
import subprocess

import pytest

BIN = os.environ.get(
    "HZLAB_BIN",
    os.path.join(os.path.dirname(__file__), "..", "..", "build", "hzlab"),
)


def run(args, cache_dir=None, expect=0):
    env = dict(os.environ)
    if cache_dir is not None:
        env["HZLAB_CACHE_DIR"] = str(cache_dir)
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    assert proc.returncode == expect, (proc.returncode, proc.stderr)
    return proc


def csv_rows(text):
    """Header row first, `# config:` comment second, then data rows."""
    lines = text.splitlines()
    assert len(lines) >= 2
    assert not lines[0].startswith("#")
    assert lines[1].startswith("# config: ")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[2:] if line]
    return header, rows


# ---------------------------------------------------------------- eval ----


def test_eval_grid_and_method_column():
    proc = run(["eval", "--alpha", "golden", "--t_min", "100", "--t_max",
                "700", "--t_count", "4"])
    header, rows = csv_rows(proc.stdout)
    assert header == ["t", "zeta_re", "zeta_im", "zeta_abs", "method"]
    assert [r[0] for r in rows] == ["100", "300", "500", "700"]
    assert [r[4] for r in rows] == ["em", "em", "em", "afe"]
    for r in rows:
        assert math.isclose(
            float(r[3]), abs(complex(float(r[1]), float(r[2]))), rel_tol=1e-9
        )


def test_eval_classical_zero():
    proc = run(["eval", "--alpha", "1", "--t_min", "14.134725", "--t_max",
                "14.134725", "--t_count", "1"])
    _, rows = csv_rows(proc.stdout)
    assert len(rows) == 1
    assert float(rows[0][3]) < 1e-5


def test_eval_half_shift_composition():
    # zeta(s, 1/2) = (2^s - 1) zeta(s, 1): compare the two printed rows.
    t = 100.0
    args = ["--t_min", str(t), "--t_max", str(t), "--t_count", "1"]
    _, half_rows = csv_rows(run(["eval", "--alpha", "rational:1/2", *args]).stdout)
    _, unit_rows = csv_rows(run(["eval", "--alpha", "1", *args]).stdout)
    z_half = complex(float(half_rows[0][1]), float(half_rows[0][2]))
    z_unit = complex(float(unit_rows[0][1]), float(unit_rows[0][2]))
    expected = (2 ** complex(0.5, t) - 1) * z_unit
    assert abs(z_half - expected) < 1e-6 * abs(expected)


def test_eval_empty_grid_is_header_only():
    proc = run(["eval", "--alpha", "golden", "--t_count", "0"])
    header, rows = csv_rows(proc.stdout)
    assert header[0] == "t"
    assert rows == []


def test_eval_decimal_alpha_warns_on_stderr():
    proc = run(["eval", "--alpha", "0.618", "--t_count", "0"])
    assert "treated as the exact rational" in proc.stderr
    named = run(["eval", "--alpha", "golden", "--t_count", "0"])
    assert "treated as the exact rational" not in named.stderr


# ------------------------------------------------------------------ cf ----


def test_cf_golden_report():
    proc = run(["cf", "--alpha", "golden"])
    rep = json.loads(proc.stdout)
    assert rep["kind"] == "irrational"
    assert rep["partial_quotients"][:6] == ["0", "1", "1", "1", "1", "1"]
    assert rep["mu_hat"] == pytest.approx(2.0, abs=0.1)
    assert rep["growth_check"]["ok"] is True
    per_n = [row["per_N"] for row in rep["distance_sums"]]
    assert max(per_n) / min(per_n) < 2.0


def test_cf_rational_has_no_distance_table():
    rep = json.loads(run(["cf", "--alpha", "rational:3/8"]).stdout)
    assert rep["kind"] == "rational"
    assert rep["partial_quotients"] == ["0", "2", "1", "2"]
    assert rep["distance_sums"] is None


def test_cf_synthetic_shift_fails_growth_check():
    rep = json.loads(run(["cf", "--alpha", "liouville:3,10"]).stdout)
    assert rep["growth_check"]["ok"] is False
    per_n = [row["per_N"] for row in rep["distance_sums"]]
    assert max(per_n) / min(per_n) >= 10.0


# -------------------------------------------------------------- moment ----


def test_moment_trivial_k0_and_cache_identity(tmp_path):
    args = ["moment", "--alpha", "golden", "--T", "400", "--k", "0",
            "--mode", "sharp0T"]
    first = run(args, cache_dir=tmp_path)
    assert "# cache miss" in first.stderr
    header, rows = csv_rows(first.stdout)
    assert header == ["T", "k", "mode", "value", "prediction", "ratio",
                      "quad_error", "points", "seconds"]
    row = dict(zip(header, rows[0]))
    assert float(row["value"]) == pytest.approx(400.0, rel=1e-9)
    assert float(row["ratio"]) == pytest.approx(1.0, rel=1e-9)

    second = run(args, cache_dir=tmp_path)
    assert "# cache hit" in second.stderr
    assert second.stdout == first.stdout  # byte-identical rerun


def test_moment_second_moment_ratio_near_one(tmp_path):
    proc = run(["moment", "--alpha", "golden", "--T", "1000", "--k", "1",
                "--mode", "sharp0T"], cache_dir=tmp_path)
    _, rows = csv_rows(proc.stdout)
    ratio = float(dict(zip(
        ["T", "k", "mode", "value", "prediction", "ratio", "quad_error",
         "points", "seconds"], rows[0]))["ratio"])
    assert 0.9 < ratio < 1.1


def test_moment_point_budget_exceeded_is_fatal(tmp_path):
    proc = run(["moment", "--alpha", "golden", "--T", "1e9", "--k", "0",
                "--mode", "sharp0T"], cache_dir=tmp_path, expect=1)
    assert "point budget" in proc.stderr


def test_moment_non_integer_k_has_nan_prediction(tmp_path):
    proc = run(["moment", "--alpha", "golden", "--T", "200", "--k", "0.5",
                "--mode", "sharp0T"], cache_dir=tmp_path)
    _, rows = csv_rows(proc.stdout)
    assert rows[0][4] == "nan" and rows[0][5] == "nan"
    assert float(rows[0][3]) > 0


# ---------------------------------------------------------------- dist ----


def split_dist_output(text):
    lines = text.splitlines()
    split = next(i for i, line in enumerate(lines) if line.startswith("variable,"))
    report = json.loads("\n".join(lines[:split]))
    header, rows = csv_rows("\n".join(lines[split:]))
    return report, header, rows


def test_dist_report_and_histograms(tmp_path):
    args = ["dist", "--alpha", "golden", "--T", "1000", "--n_samples", "200",
            "--seed", "7"]
    proc = run(args, cache_dir=tmp_path)
    report, header, rows = split_dist_output(proc.stdout)
    assert report["n_samples"] == 200 and report["seed"] == 7
    assert "cache_hit" not in report and "cache_path" not in report
    assert header == ["variable", "bin", "bin_lo", "bin_hi", "count"]
    assert len(rows) == 150  # 50 bins for each of abs2, re, im
    for variable in ("abs2", "re", "im"):
        counts = [int(r[4]) for r in rows if r[0] == variable]
        assert len(counts) == 50 and sum(counts) == 200

    rerun = run(args, cache_dir=tmp_path)
    assert rerun.stdout == proc.stdout  # byte-identical rerun


def test_dist_file_output_writes_json_and_histogram(tmp_path):
    out = tmp_path / "report.json"
    run(["dist", "--alpha", "golden", "--T", "1000", "--n_samples", "150",
         "--seed", "3", "--output", str(out)], cache_dir=tmp_path)
    report = json.loads(out.read_text())
    assert report["n_samples"] == 150
    hist = out.with_suffix(".json.hist.csv")
    header, rows = csv_rows(hist.read_text())
    assert len(rows) == 150


# -------------------------------------------------------------- offdiag ----


def test_offdiag_tuple_dump_solves_equations():
    proc = run(["offdiag", "--h1", "3", "--h2", "-5", "--n_max", "30"])
    header, rows = csv_rows(proc.stdout)
    assert header == ["n1", "n2", "n3", "n4", "h1", "h2", "g"]
    assert rows
    for r in rows:
        n1, n2, n3, n4, h1, h2, g = map(int, r)
        assert n1 * n2 - n3 * n4 == 3
        assert n1 + n2 - n3 - n4 == -5
        assert 1 <= n4 <= n3 <= 30
        assert h1 % g == 0 and h2 % g == 0


def test_offdiag_structurally_empty_box():
    proc = run(["offdiag", "--h1", "2", "--h2", "1", "--n_max", "50"])
    _, rows = csv_rows(proc.stdout)
    assert rows == []


def test_offdiag_estimate_row():
    proc = run(["offdiag", "--estimate", "--alpha", "golden", "--T", "1000"])
    header, rows = csv_rows(proc.stdout)
    assert header[:4] == ["T", "alpha", "eps", "C"]
    row = dict(zip(header, rows[0]))
    assert row["alpha"] == "golden"
    est = abs(complex(float(row["est_re"]), float(row["est_im"])))
    assert est == pytest.approx(float(row["est_abs"]), rel=1e-9)
    assert 0 < float(row["fraction"]) < 1


def test_offdiag_requires_target():
    proc = run(["offdiag"], expect=1)
    assert "error:" in proc.stderr


# ------------------------------------------------------------- validate ----


def test_validate_list_names_twelve_checks():
    proc = run(["validate", "--list"])
    lines = proc.stdout.splitlines()
    assert len(lines) == 12
    assert lines[0].split() == ["1", "afe_accuracy"]
    assert lines[-1].split() == ["12", "validate_determinism"]


# ------------------------------------------------------ config plumbing ----


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("alpha=sqrt2m1\nT=400\nk=0\nmode=sharp0T\n# comment\n")
    base = run(["moment", "--config", str(cfg)], cache_dir=tmp_path)
    _, rows = csv_rows(base.stdout)
    assert float(rows[0][0]) == 400.0
    over = run(["moment", "--config", str(cfg), "--T", "500"],
               cache_dir=tmp_path)
    _, rows = csv_rows(over.stdout)
    assert float(rows[0][0]) == 500.0


def test_exit_codes():
    run(["moment", "--T", "5"], expect=1)          # domain validation
    run(["bogus-subcommand"], expect=2)            # usage error
    run(["moment", "--no-such-flag"], expect=2)    # usage error
    run(["--help"], expect=0)
    run(["moment", "--help"], expect=0)


def test_missing_config_file_fails():
    proc = run(["moment", "--config", "/nonexistent/path.cfg"], expect=1)
    assert "error:" in proc.stderr
