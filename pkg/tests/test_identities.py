"""Integral-geometry identities on random band-limited fields."""

import numpy as np
import pytest

from bhindex.oracle import (
    build_geometry,
    energy_gradient_residual,
    identity_residuals,
    killing_dimension,
    run_identity_suite,
    trace_identity_residual,
)


@pytest.fixture(scope="module")
def torus():
    return build_geometry("torus", grid=128)


@pytest.fixture(scope="module")
def circle():
    return build_geometry("circle", grid=128, n=2)


def test_identity_suite_small():
    rep = run_identity_suite(count=20, seed=11)
    assert rep.all_pass, rep.failures()
    names = [c.name for c in rep.checks]
    assert any("yano" in n for n in names)
    assert any("trace identity" in n for n in names)


def test_yano_and_friends_single_field(torus):
    rng = np.random.default_rng(3)
    comps = torus.random_tangent_components(rng, band=3)
    res = identity_residuals(torus, comps)
    assert res.yano < 1e-10
    assert res.bochner < 1e-10
    assert res.jacobi < 1e-10
    assert res.decomposition < 1e-10
    assert res.lie_margin >= -1e-12


def test_bochner_on_gradient_field(torus):
    # X = grad(cos u): the documented direct evaluation of the exchange identity
    f = np.cos(torus.u)
    comps = torus.gradient_components(f)
    res = identity_residuals(torus, comps)
    assert res.bochner < 1e-10


def test_trace_identity_at_first_eigenvalue(torus):
    assert trace_identity_residual(torus) < 1e-9


def test_killing_dimensions(circle, torus):
    assert killing_dimension(circle) == 1
    assert killing_dimension(torus) == 2


def test_energy_gradient_consistency(circle, torus):
    for geo in (circle, torus):
        rng = np.random.default_rng(7)
        assert energy_gradient_residual(geo, rng) < 1e-4


def test_forced_tolerance_fails():
    rep = run_identity_suite(count=4, seed=0, tol=1e-18)
    assert not rep.all_pass
