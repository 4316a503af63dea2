"""Smoke tests for the python bindings: a few closed-form anchors per module."""

import math

import pytest

import jcdress


def make_params(omega_c=1.0, delta=0.0, g=1.0):
    p = jcdress.SystemParams()
    p.omega_c = omega_c
    p.delta = delta
    p.g = g
    return p


def test_eigenvalue_matches_closed_form():
    p = make_params(omega_c=5.0, delta=0.7, g=0.3)
    n = 4
    expected = (n - 0.5) * p.omega_c - 0.5 * math.sqrt(p.delta**2 + 4 * p.g**2 * n)
    got = jcdress.eigenvalue(p, jcdress.DressedLabel(n, jcdress.Branch.MINUS))
    assert got == pytest.approx(expected, rel=1e-14)


def test_resonant_two_body_coefficient():
    assert jcdress.coeff_resonant(1.0, 2) == pytest.approx(2.0 - math.sqrt(2.0), rel=1e-14)
    assert jcdress.coeff_resonant(1.0, 1) == pytest.approx(-1.0, rel=1e-14)


def test_exact_matches_dispersive_deep_in_that_regime():
    p = jcdress.params_from_lambda(omega_c=1000.0, g=1.0, **{"lambda": 1e-3})
    for k in (1, 2, 3):
        exact = jcdress.coeff_exact(p, k, jcdress.Branch.MINUS)
        approx = jcdress.coeff_dispersive(1.0, 1e-3, k)
        assert exact == pytest.approx(approx, rel=1e-4)


def test_oracle_verify_passes():
    report = jcdress.verify(make_params(omega_c=2.0, delta=-0.4, g=0.8), n_max=12)
    assert report["pass"] is True
    assert report["spectrum_rel_err_block"] <= 1e-10


def test_decoupled_two_site_ground_state_is_photonic():
    tp = jcdress.TwoSiteParams(make_params(g=0.0), 1.0)
    gs = jcdress.ground_state(tp)
    assert gs["overlap_photonic_sf"] == pytest.approx(1.0, abs=1e-12)
    assert gs["variance"] == pytest.approx(0.5, abs=1e-12)


def test_sweep_preset_csv_header():
    csv = jcdress.sweep_preset_csv("fig5", workers=2)
    header = csv.splitlines()[0]
    assert header.startswith("lambda,j_eff_1,j_eff_2,u_eff")
    assert header.endswith("error")


def test_lambda_zero_detuning_raises():
    with pytest.raises(ValueError):
        make_params(delta=0.0).lambda_()
