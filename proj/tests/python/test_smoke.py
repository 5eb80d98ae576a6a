"""Smoke tests for the python bindings: one happy path per exported operation."""

import pytest

import betalab as bl


def test_expand():
    out = bl.expand("0.75", "1.5", 4)
    assert out["digits"] == "1000"
    assert out["remainder"]["dec"] == "0.421875"


def test_star():
    out = bl.star("2", 8)
    assert out["digits"] == "20000000"
    assert out["terminated"] is True
    assert out["star"] == "(1)"


def test_admissible():
    assert bl.admissible("11", "1.9") is True
    assert bl.admissible("11", "1.5") is False


def test_sigma():
    out = bl.sigma("2", 3)
    assert out["summary"]["sigma"] == 8
    assert len(out["cylinders"]) == 8
    assert all(c["full"] for c in out["cylinders"])
    fulls = bl.sigma("1.9", 4, full_only=True)
    assert len(fulls["cylinders"]) == fulls["summary"]["xi"]


def test_omega():
    out = bl.omega("1", 2, "1.1", "1.99")
    words = [c["w"] for c in out["cylinders"]]
    assert words == ["10", "11"]
    assert out["cylinders"][1]["full"] is True


def test_full_check():
    param = bl.full_check_param("11", "1")
    assert param["full"] is True
    assert abs(float(param["hi"]["hi"]["dec"]) - 2.0) < 1e-9
    shift = bl.full_check_shift("11", "2")
    assert shift["admissible"] is True and shift["full"] is True


def test_proportion():
    rep = bl.proportion("1.9", "0.02", 5, 7)
    assert rep["all_ok"] is True


def test_phi_slice():
    s = bl.phi_slice("1", "1", "0.5", "0.25")
    assert s["empty"] is False
    assert abs(float(s["lo"]["lo"]["dec"]) - 1.25) < 1e-9


def test_structural():
    rep = bl.structural("0.7", 3, "1.05", "3")
    assert rep["ok"] is True


def test_scan_param_deterministic():
    kwargs = dict(x="0.7", targets="0.3", phi="power:1,1", lo="1.2", hi="2.2",
                  samples=40, nmax=128, seed=7)
    a = bl.scan_param(**kwargs)
    b = bl.scan_param(**kwargs, workers=4)
    assert a == b
    assert a["samples"] == 40
    assert [g["N"] for g in a["grid"]] == [1, 2, 4, 8, 16, 32, 64, 128]


def test_scan_recurrence():
    out = bl.scan_recurrence("1.8", "1", "0", "power:1,1", 30, 64, 42)
    assert out["discarded"] == 0
    fractions = [g["fraction"] for g in out["grid"]]
    assert fractions == sorted(fractions)


def test_beta_star():
    out = bl.beta_star("logbase:2")
    assert out["rigorous"] is True
    assert out["beta_star"]["lo"]["dec"] == "2"
    assert bl.beta_star("const:1")["beta_star"] == "inf"


def test_tail_sum():
    out = bl.tail_sum("geom:1,0.5", 1, 20)
    assert out["lo"] == out["hi"]
    assert abs(float(out["lo"]["dec"]) - (1.0 - 2.0 ** -20)) < 1e-12


def test_recurrence_slice():
    out = bl.recurrence_slice("11", "2", "1", "0", "0.1")
    assert out["exact"] is True
    assert out["lo_exact"] == "29/30"
    assert out["hi_exact"] == "1"
    assert out["length_exact"] == "1/30"


def test_exceptions():
    with pytest.raises(ValueError):
        bl.expand("abc", "1.5", 4)
    with pytest.raises(ValueError):
        bl.full_check_param("13", "0.7")  # empty cylinder
    with pytest.raises(RuntimeError):
        bl.scan_recurrence("2", "0", "0", "const:0.5", 20, 128, 1)  # discard limit
