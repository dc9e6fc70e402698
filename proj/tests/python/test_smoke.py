"""Smoke tests for the python bindings."""

import math

import pytest

import helixgeom as hg

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def ex1():
    return hg.SlantHelixParams(a=1.0, A=1.0, B=0.0)


def test_position_on_unit_sphere(ex1):
    for i in range(200):
        th = 0.01 + (math.pi - 0.02) * i / 199
        assert abs(hg.position(ex1, th).norm() - 1.0) < 1e-9


def test_position_fixture(ex1):
    p = hg.position(ex1, 0.0)
    assert p.x == pytest.approx(-1 / SQRT2, abs=1e-15)
    assert p.y == pytest.approx(0.0, abs=1e-15)
    assert p.z == pytest.approx(-1 / SQRT2, abs=1e-15)


def test_frame_and_slant_angle(ex1):
    _, N, _ = hg.frame_closed(ex1, 1.3)
    assert N.z == pytest.approx(1 / SQRT2, abs=1e-15)


def test_curvature_torsion(ex1):
    assert hg.curvature_closed(ex1, math.pi / 2) == pytest.approx(1 / math.cos(1.0))
    assert hg.torsion_closed(ex1, 1.0) == pytest.approx(
        -1.0 / math.tan(1.0) / math.cos(math.sin(1.0))
    )


def test_sigma_conventions(ex1):
    assert hg.sigma(ex1, 1.0) == pytest.approx(-1.0, abs=1e-5)
    assert hg.y_sigma(ex1, 1.0) == pytest.approx(1.0, abs=1e-5)


def test_y_indicatrix(ex1):
    y = hg.y_indicatrix(ex1, 0.9)
    assert abs(y.norm() - 1.0) < 1e-12
    k, t, s = hg.y_curvatures(math.sqrt(2.0), 0.0, 1.0)
    assert k == pytest.approx(math.sqrt(2.0))
    assert s == 1.0


def test_closure():
    closed = hg.is_closed(hg.SlantHelixParams(a=hg.a_for_ratio(2, 1)))
    assert closed.rational
    assert closed.theta_period == pytest.approx(2 * math.pi)
    irrational = hg.is_closed(hg.SlantHelixParams(a=1.0))
    assert not irrational.rational
    assert (irrational.p, irrational.q) == (41, 29)


def test_lift_round_trip(ex1):
    grid = [0.05 + (math.pi - 0.1) * i / 499 for i in range(500)]
    pts = hg.lift_to_sphere(ex1, grid)
    worst = max(
        math.dist(
            (p.x, p.y, p.z),
            (hg.position(ex1, th).x, hg.position(ex1, th).y, hg.position(ex1, th).z),
        )
        for p, th in zip(pts, grid)
    )
    assert worst < 1e-6


def test_wong_report(ex1):
    rep = hg.wong_report(ex1, samples=300)
    assert rep["spherical"]
    assert rep["fitted_r"] == pytest.approx(1.0, abs=1e-6)
    assert rep["fit_residual"] < 1e-6


def test_verify_all_pass(ex1):
    checks = hg.verify(ex1, samples=64)
    assert checks and all(c["pass"] for c in checks)


def test_invalid_params_raise():
    with pytest.raises(ValueError):
        hg.SlantHelixParams(a=0.0)
    with pytest.raises(ValueError):
        hg.a_for_ratio(1, 1)


def test_arc_length_consistency(ex1):
    total = hg.arc_length(ex1, 0.2, 1.0)
    assert total == pytest.approx(
        hg.arc_length(ex1, 0.2, 0.6) + hg.arc_length(ex1, 0.6, 1.0), abs=1e-10
    )
