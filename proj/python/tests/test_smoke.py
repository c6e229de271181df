import math

import pytest

import conestab


def test_version():
    assert conestab.__version__ == "0.3.0"


def test_solve_and_boundary():
    cone = conestab.solve(3, 1)
    assert cone["theta_star"] == pytest.approx(math.pi / 4, abs=1e-12)
    bd = conestab.boundary_data(3, 1)
    assert bd["H"] == pytest.approx(2.0)


def test_exact_functional():
    r = conestab.boundary_functional([0, 1, -1], 1, "signed:4")
    assert r["L_exact"] == "2"
    assert r["B"] == pytest.approx(2.0)


def test_stability_and_certificate():
    rep = conestab.stability(2, 2, weight="signed:4")
    assert rep["verdict"] == "unstable"
    assert rep["Lambda"] > rep["threshold"]
    cert = conestab.certify(2, 2)
    assert cert["Q_value"] < 0


def test_half_space_is_stable():
    rep = conestab.stability(1, 3)
    assert rep["verdict"] == "stable"
    with pytest.raises(conestab.ConestabError) as exc:
        conestab.certify(1, 3)
    assert exc.value.kind == "StableCone"
    assert exc.value.exit_code == 3


def test_usage_errors():
    with pytest.raises(conestab.ConestabError) as exc:
        conestab.solve(0, 2)
    assert exc.value.exit_code == 1
    with pytest.raises(conestab.ConestabError):
        conestab.stability(2, 2, weight="cubic")


def test_lstar_and_identity():
    assert conestab.lstar(3)["sup"] == pytest.approx(2.0)
    five = conestab.lstar(5)
    assert five["infinite"] and math.isinf(five["sup"])
    assert conestab.case_identity()["verdict"] is True


def test_simons_and_dimension():
    assert conestab.harmonic_dimension(4, 4) == 25
    r = conestab.verify_simons(3, 3, weight="signed:4", points=30, seed=4)
    assert r["hard_violations"] == 0


def test_scan_rows():
    t = conestab.scan(3, jobs=2)
    assert [row["k"] for row in t["rows"]] == [1, 2]


def test_euler_zeros():
    z = conestab.euler_zeros(3.0, 2.0)
    assert z["oscillates"]
    assert z["spacing"] == pytest.approx(math.pi)
