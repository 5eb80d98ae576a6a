#!/usr/bin/env python3
"""End-to-end checks for the bexlab command line tool.

Usage: cli_checks.py /path/to/bexlab
"""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, expect=0):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)
    if p.returncode != expect:
        raise AssertionError(
            f"exit {p.returncode}, wanted {expect}\nargs: {args}\n"
            f"stdout:\n{p.stdout}\nstderr:\n{p.stderr}"
        )
    return p


def jlines(p):
    return [json.loads(line) for line in p.stdout.splitlines() if line]


def check(name, fn):
    try:
        fn()
        print(f"ok   {name}")
    except Exception as exc:  # noqa: BLE001 - report and keep going
        failures.append(name)
        print(f"FAIL {name}: {exc}")


def expand_basics():
    out = jlines(run("expand", "--x", "0.75", "--beta", "1.5", "--n", "4"))[0]
    assert out["digits"] == "1000", out
    assert out["remainder"]["dec"] == "0.421875", out


def star_terminating():
    out = jlines(run("star", "--beta", "2", "--n", "8"))[0]
    assert out["digits"] == "20000000", out
    assert out["terminated"] is True
    assert out["last_nonzero"] == 1
    assert out["star"] == "(1)"


def star_open_horizon():
    out = jlines(run("star", "--beta", "1.5", "--n", "8"))[0]
    assert out["digits"] == "10100000", out
    assert out["terminated"] is False
    assert out["star"].endswith("(...)"), out


def admissible_flag():
    out = jlines(run("admissible", "--w", "11", "--beta", "1.5"))[0]
    assert out["admissible"] is False
    out = jlines(run("admissible", "--w", "11", "--beta", "1.9"))[0]
    assert out["admissible"] is True


def sigma_listing():
    p = run("sigma", "--beta", "2", "--n", "2")
    rows = jlines(p)
    assert len(rows) == 5, rows  # 4 cylinders + summary
    words = [r["w"] for r in rows[:4]]
    assert words == ["00", "01", "10", "11"], words
    assert all(r["full"] for r in rows[:4])
    summary = rows[4]["summary"]
    assert summary["sigma"] == 4 and summary["xi"] == 4
    assert summary["lower_ok"] and summary["upper_ok"]


def xi_summary_only():
    rows = jlines(run("xi", "--beta", "2", "--n", "4", "--summary-only"))
    assert len(rows) == 1
    assert rows[0]["summary"]["xi"] == 16


def omega_window():
    rows = jlines(run("omega", "--x", "1", "--n", "2", "--window", "1.1,1.99"))
    assert len(rows) == 3, rows
    c10, c11, summary = rows
    assert c10["w"] == "10" and c10["lower_is_one"] is True and c10["full"] is False
    assert c11["w"] == "11" and c11["full"] is True
    golden = 1.6180339887498949
    assert abs(float(c10["hi"]["hi"]["dec"]) - golden) < 1e-9
    assert abs(float(c11["lo"]["lo"]["dec"]) - golden) < 1e-9
    assert abs(float(c11["hi"]["hi"]["dec"]) - 2.0) < 1e-9
    assert summary["summary"]["count"] == 2


def full_check_sides():
    out = jlines(run("full-check", "--w", "11", "--x", "1"))[0]
    assert out["side"] == "parameter" and out["full"] is True
    out = jlines(run("full-check", "--w", "10", "--x", "1"))[0]
    assert out["lower_is_one"] is True and out["full"] is False
    out = jlines(run("full-check", "--w", "11", "--beta", "2"))[0]
    assert out["side"] == "shift" and out["admissible"] is True and out["full"] is True
    run("full-check", "--w", "11", "--x", "1", "--beta", "2", expect=2)
    run("full-check", "--w", "11", expect=2)


def proportion_report():
    out = jlines(run("proportion", "--beta", "1.9", "--lambda", "0.02",
                     "--n-lo", "5", "--n-hi", "7"))[0]
    assert out["all_ok"] is True
    assert out["hypothesis_violated"] is False
    assert len(out["rows"]) == 3


def slice_band():
    out = jlines(run("slice", "--w", "1", "--x", "1", "--target", "0.5",
                     "--radius", "0.25"))[0]
    assert out["empty"] is False
    assert abs(float(out["lo"]["lo"]["dec"]) - 1.25) < 1e-9
    assert abs(float(out["hi"]["hi"]["dec"]) - 1.75) < 1e-9
    assert out["clipped_left"] is False and out["clipped_right"] is False


def structural_clean():
    out = jlines(run("structural", "--x", "0.7", "--n", "3", "--window", "1.05,3"))[0]
    assert out["ok"] is True
    assert out["length_upper"]["violations"] == 0


def scan_output_shape():
    p = run("scan-e", "--x", "0.7", "--targets", "0.3", "--phi", "power:1,1",
            "--window", "1.2,2.2", "--samples", "50", "--nmax", "256", "--seed", "7")
    lines = p.stdout.splitlines()
    assert lines[0] == "N,fraction,tail_block,discards", lines[0]
    # grid 1..128 plus 256 = 9 rows, then the summary line
    assert len(lines) == 11, len(lines)
    summary = json.loads(lines[-1])
    assert summary["verdict"] == "ok"
    assert len(summary["config_hash"]) == 16
    assert summary["curve"]["samples"] == 50
    ns = [int(row.split(",")[0]) for row in lines[1:-1]]
    assert ns == [1, 2, 4, 8, 16, 32, 64, 128, 256], ns


def scan_deterministic():
    args = ("scan-e", "--x", "0.7", "--targets", "0.3", "--phi", "power:1,1",
            "--window", "1.2,2.2", "--samples", "50", "--nmax", "256", "--seed", "7")
    a = run(*args).stdout
    b = run(*args).stdout
    assert a == b, "rerun differs"
    c = run(*args, "--workers", "4").stdout
    assert a == c, "worker count leaked into output"


def scan_r_deterministic():
    args = ("scan-r", "--beta", "1.8", "--a", "1", "--b", "0", "--phi", "power:1,1",
            "--samples", "50", "--nmax", "256", "--seed", "7")
    a = run(*args).stdout
    b = run(*args, "--workers", "4").stdout
    assert a == b, "worker count leaked into output"
    assert a.splitlines()[0] == "N,fraction,tail_block,discards"


def config_file():
    with tempfile.TemporaryDirectory() as d:
        cfg = os.path.join(d, "cfg.json")
        with open(cfg, "w") as f:
            json.dump({"x": "0.25", "beta": "2", "n": 6}, f)
        out = jlines(run("expand", "--config", cfg))[0]
        assert out["digits"] == "010000", out
        # explicit flags beat config values
        out = jlines(run("expand", "--config", cfg, "--x", "0.75"))[0]
        assert out["digits"] == "110000", out
        run("expand", "--config", os.path.join(d, "missing.json"), expect=2)
        bad = os.path.join(d, "bad.json")
        with open(bad, "w") as f:
            f.write("[1,2]")
        run("expand", "--config", bad, expect=2)


def beta_star_forms():
    out = jlines(run("beta-star", "--l", "log:1.442695"))[0]
    assert out["rigorous"] is True
    assert abs(float(out["beta_star"]["lo"]["dec"]) - 2.0) < 1e-5
    out = jlines(run("beta-star", "--l", "logbase:2"))[0]
    assert out["beta_star"]["lo"]["dec"] == "2"
    assert out["beta_star"]["hi"]["dec"] == "2"
    out = jlines(run("beta-star", "--l", "lin:3"))[0]
    assert out["beta_star"]["lo"]["dec"] == "1"
    out = jlines(run("beta-star", "--l", "const:1"))[0]
    assert out["beta_star"] == "inf" and out["rigorous"] is True
    out = jlines(run("beta-star", "--l", "power:1,1"))[0]
    assert out["beta_star"] == "inf" and out["rigorous"] is False
    assert "heuristic" in out


def slice_r_exact():
    out = jlines(run("slice-r", "--w", "11", "--beta", "2", "--a", "1", "--b", "0",
                     "--phi", "0.1"))[0]
    assert out["slope"] == "3"
    assert out["full"] is True and out["exact"] is True
    assert out["lo_exact"] == "29/30"
    assert out["hi_exact"] == "1"
    assert out["length_exact"] == "1/30"
    assert out["upper_ok"] and out["lower_checked"] and out["lower_ok"]
    out = jlines(run("slice-r", "--w", "10", "--beta", "2", "--a", "0", "--b", "0",
                     "--phi", "1/2"))[0]
    assert out["lo_exact"] == "1/2" and out["hi_exact"] == "5/8"
    assert out["length_exact"] == "1/8"


def error_exit_codes():
    p = run("expand", "--x", "abc", expect=2)
    assert "error" in json.loads(p.stderr.splitlines()[-1])
    run("scan-e", "--x", "0.7", expect=2)            # --seed is required
    run("sigma", "--beta", "1.9", "--n", "10", "--cap", "2", expect=3)
    run("nonsense", expect=2)
    run(expect=2)                                     # a subcommand is required
    p = run("slice-r", "--w", "1", "--beta", "1.5", "--a", "1", "--b", "0",
            "--phi", "0.1", expect=2)
    assert "steep" in json.loads(p.stderr.splitlines()[-1])["error"]


def help_exits_zero():
    p = run("--help")
    assert "bexlab" in p.stdout
    p = run("scan-e", "--help")
    assert "--seed" in p.stdout


CHECKS = [
    ("expand basics", expand_basics),
    ("star terminating", star_terminating),
    ("star open horizon", star_open_horizon),
    ("admissible flag", admissible_flag),
    ("sigma listing", sigma_listing),
    ("xi summary only", xi_summary_only),
    ("omega window", omega_window),
    ("full-check sides", full_check_sides),
    ("proportion report", proportion_report),
    ("slice band", slice_band),
    ("structural clean", structural_clean),
    ("scan output shape", scan_output_shape),
    ("scan determinism", scan_deterministic),
    ("scan-r determinism", scan_r_deterministic),
    ("config file", config_file),
    ("beta-star forms", beta_star_forms),
    ("slice-r exact", slice_r_exact),
    ("error exit codes", error_exit_codes),
    ("help exits zero", help_exits_zero),
]


def main():
    for name, fn in CHECKS:
        check(name, fn)
    if failures:
        print(f"{len(failures)} of {len(CHECKS)} checks failed: {failures}")
        return 1
    print(f"all {len(CHECKS)} cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
