"""Numerical oracle on the curved parametrizations (2-sphere and its quadratic image)."""

import numpy as np
import pytest

from bhindex.oracle import biharmonicity_residuals, build_geometry, quadform_numeric, run_case_checks


@pytest.fixture(scope="module")
def sphere():
    return build_geometry("sphere", grid=(32, 64), n=3)


def test_sphere_battery_passes():
    rep = run_case_checks("sphere", seed=0)
    assert rep.all_pass, rep.failures()


def test_veronese_surface_battery_passes():
    rep = run_case_checks("veronese-surface", seed=0)
    assert rep.all_pass, rep.failures()


def test_sphere_biharmonicity(sphere):
    e_res, tau_res, tau2_res = biharmonicity_residuals(sphere)
    assert e_res < 1e-10
    assert tau_res < 1e-10
    assert tau2_res < 1e-6


def test_sphere_closed_forms(sphere):
    # m=2 inclusion, lam_k = k(k+1)/c = 2k(k+1): normal lam^2+4lam-16,
    # tangent lam P_E(lam) with kappa=2, vertical lam(lam-4)
    sec = sphere.section_normal(1)
    lam = 4.0
    mass = sphere.integrate(sec.f_values * sec.f_values)
    assert quadform_numeric(sphere, sec) / mass == pytest.approx(lam * lam + 4 * lam - 16, rel=1e-8)
    tan = sphere.section_gradient(1)
    assert quadform_numeric(sphere, tan) / mass == pytest.approx(64.0, rel=1e-8)
    vert = sphere.section_vertical(1)
    assert quadform_numeric(sphere, vert) / mass == pytest.approx(0.0, abs=1e-8)


def test_sphere_tesseral_agrees_with_zonal(sphere):
    zon = sphere.section_normal(1)
    tes = sphere.section_normal(1, tesseral=True)
    mz = sphere.integrate(zon.f_values * zon.f_values)
    mt = sphere.integrate(tes.f_values * tes.f_values)
    assert quadform_numeric(sphere, zon) / mz == pytest.approx(
        quadform_numeric(sphere, tes) / mt, rel=1e-10
    )


def test_sphere_volume(sphere):
    # radius 1/sqrt(2) two-sphere: area 4 pi r^2 = 2 pi
    vol = sphere.integrate(np.ones_like(sphere.sin_th) * np.ones((1, 1)))
    assert vol == pytest.approx(2 * np.pi, rel=1e-12)


def test_veronese_lambda1_values():
    geo = build_geometry("veronese-surface")
    sec = geo.section_normal(1)
    mass = geo.integrate(sec.f_values * sec.f_values)
    # lam_1 = 4/3: normal form value -80/9, tangent form value 64/9 (both exact)
    assert quadform_numeric(geo, sec) / mass == pytest.approx(-80.0 / 9.0, rel=1e-8)
    tan = geo.section_gradient(1)
    assert quadform_numeric(geo, tan) / mass == pytest.approx(64.0 / 9.0, rel=1e-8)


def test_grid_validation_sphere():
    with pytest.raises(ValueError):
        build_geometry("sphere", grid=(8, 16))
    with pytest.raises(ValueError):
        build_geometry("veronese-surface", n=4)
