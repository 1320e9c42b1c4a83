import math

import pytest

import accinfo


def test_flat_trine():
    sol = accinfo.solve_pyramid(3, r0=0.0)
    assert sol["regime"] == "flat_small_m"
    assert abs(sol["accessible_info"] - math.log2(1.5)) < 1e-12


def test_acute_spec_from_p():
    sol = accinfo.solve_pyramid(4, p=0.95, orientation="acute")
    assert sol["regime"] == "moderately_acute"


def test_certificate_and_oracle_agree():
    report = accinfo.verify_pyramid(3, 0.3, samples=5000)
    assert report["verdict"] == "certified"
    ens = accinfo.pyramid_ensemble(3, r0=0.3)
    found = accinfo.maximize_info(ens, restarts=8)
    assert abs(found["best_info"] - report["accessible_info"]) < 1e-6


def test_two_state_verify_with_srm():
    c, s = math.cos(0.35), math.sin(0.35)
    ens = {"states": [[[c, 0], [s, 0]], [[c, 0], [-s, 0]]]}
    report = accinfo.verify(ens, samples=2000)
    assert report["verdict"] == "certified"


def test_inequalities():
    assert abs(accinfo.gap("basic", [0.9, 0.05, 0.05], {"m": 3, "p": 0.9})) < 1e-12
    assert accinfo.sample_gap("ineqw", {"m": 5}, samples=2000)["worst_gap"] >= -1e-9
    scan = accinfo.two_value_scan("ineqw", {"m": 8}, grid=200)
    assert scan["pattern"] == "split(7,1)"
    assert abs(accinfo.minimize_gap("ineqw", {"m": 8})["min_gap"] - scan["worst_gap"]) < 1e-6


def test_lemmas_small_grid():
    report = accinfo.lemma_checks(m_max=4, points_per_unit=32)
    assert all(c["passed"] for c in report["checks"])


def test_errors():
    with pytest.raises(ValueError):
        accinfo.solve_pyramid(3, r0=1.5)
    with pytest.raises(ValueError):
        accinfo.gap("basic", [0.5, 0.5, 0.5], {"m": 3, "p": 0.9})


def test_cli():
    code, out, _ = accinfo.run_cli(["table"])
    assert code == 0
    assert "MISMATCH" not in out
