import numpy as np
import pytest

from minsurf import catalog, grids
from minsurf.exceptions import (CatalogError, DomainEvaluationError,
                                FeatureNotAvailable)
from minsurf.sections import geometry_of

# Gauss curvature oracle values, frozen from symbolic differentiation of
# the Weierstrass metric (lambda^2 = |eta|^2 (1+|g|^2)^2, K = -Delta log
# lambda / lambda^2); see oracle_gauss_curvature below for regeneration.
CATENOID_K = {
    1.0 + 0.0j: -0.25,
    0.5 + 0.3j: -0.14341633897191128,
    2.0 - 1.0j: -0.07716049382716049,
    0.2 + 0.0j: -0.005470746822590246,
}
ENNEPER_K = {0.5 + 0.3j: -1.2406257696532115, 0.0j: -4.0}
KNOID3_K = {0.5 + 0.3j: -3.940996977071494, -0.4 + 1.1j: -0.20242368746092337}


def oracle_gauss_curvature(gauss, height, zval):
    """Independent sympy derivation of K from first principles."""
    import sympy as sp
    x, y = sp.symbols('x y', real=True)
    z = x + sp.I * y
    lam2 = sp.Abs(height(z)) ** 2 * (1 + sp.Abs(gauss(z)) ** 2) ** 2
    lap = sp.diff(sp.log(lam2) / 2, x, 2) + sp.diff(sp.log(lam2) / 2, y, 2)
    K = -lap / lam2
    val = complex(sp.N(K.subs({x: zval.real, y: zval.imag}), 20))
    return val.real


@pytest.mark.parametrize("zval,expected", list(CATENOID_K.items()))
def test_catenoid_curvature_oracle(catenoid, zval, expected):
    s = catalog.sample_geometry(catenoid, zval)
    assert s.gauss_curvature == pytest.approx(expected, rel=1e-12)


def test_frozen_values_match_live_oracle(catenoid):
    val = oracle_gauss_curvature(lambda w: w, lambda w: 1 / w ** 2, 0.5 + 0.3j)
    assert val == pytest.approx(CATENOID_K[0.5 + 0.3j], rel=1e-12)


@pytest.mark.parametrize("zval,expected", list(ENNEPER_K.items()))
def test_enneper_curvature_oracle(enneper, zval, expected):
    s = catalog.sample_geometry(enneper, zval)
    assert s.gauss_curvature == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("zval,expected", list(KNOID3_K.items()))
def test_knoid_curvature_oracle(knoid3, zval, expected):
    s = catalog.sample_geometry(knoid3, zval)
    assert s.gauss_curvature == pytest.approx(expected, rel=1e-11)


def test_conformality_residual(catenoid, enneper, knoid3, knoid4, plane):
    rng = np.random.default_rng(0)
    z = rng.standard_normal(200) + 1j * rng.standard_normal(200)
    for surf in (catenoid, enneper, knoid3, knoid4, plane):
        for zz in z:
            try:
                s = catalog.sample_geometry(surf, zz)
            except DomainEvaluationError:
                continue
            resid = abs(np.sum(s.fz * s.fz))
            assert resid <= 1e-12 * np.sum(np.abs(s.fz) ** 2)


def test_harmonicity_cauchy_riemann(catenoid):
    # F_z is holomorphic: numerical d/dzbar vanishes (4th-order stencil)
    def fz(z):
        return catalog.sample_geometry(catenoid, z).fz
    z0, h = 0.7 + 0.4j, 1e-5
    dbar = (fz(z0 + h) - fz(z0 - h) + 1j * (fz(z0 + 1j * h) - fz(z0 - 1j * h))) \
        / (4 * h)
    assert np.max(np.abs(dbar)) < 1e-6


def test_dnu_tangential_equals_minus_K(catenoid, knoid3):
    for surf in (catenoid, knoid3):
        for zz in (0.4 + 0.1j, 1.7 - 0.8j, 0.05 + 0.6j):
            s = catalog.sample_geometry(surf, zz)
            assert s.dnu_tangential_sq == pytest.approx(-s.gauss_curvature,
                                                        rel=1e-12)


def test_density_q_nonnegative_and_smooth_at_punctures(catenoid, knoid3):
    g = grids.IcosphereMesh(3)
    for surf in (catenoid, knoid3):
        geo = geometry_of(surf, g)
        assert np.all(geo.q >= 0)
        assert np.all(np.isfinite(geo.q))
    # catenoid q is exactly twice the round density everywhere
    geo = geometry_of(catenoid, g)
    assert np.allclose(geo.q, 2.0, atol=1e-12)


def test_normal_is_unit_and_matches_gauss_map(catenoid):
    s = catalog.sample_geometry(catenoid, 0.3 + 0.4j)
    assert np.linalg.norm(s.normal) == pytest.approx(1.0, abs=1e-14)
    gz = 0.3 + 0.4j   # catenoid Gauss map is the identity
    d = 1 + abs(gz) ** 2
    expected = np.array([2 * gz.real, 2 * gz.imag, abs(gz) ** 2 - 1]) / d
    assert np.allclose(s.normal, expected)


def test_sample_at_puncture_raises(catenoid, knoid3):
    with pytest.raises(DomainEvaluationError):
        catalog.sample_geometry(catenoid, 0.0)
    with pytest.raises(DomainEvaluationError):
        catalog.sample_geometry(catenoid, np.inf)
    with pytest.raises(DomainEvaluationError):
        catalog.sample_geometry(knoid3, np.exp(2j * np.pi / 3))


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog.make_catalog_surface("helicoid")
    with pytest.raises(CatalogError):
        catalog.make_catalog_surface("knoid", k=2)
    with pytest.raises(FeatureNotAvailable):
        catalog.make_catalog_surface("chen_gackstatter")


def test_chen_gackstatter_invariants_available():
    inv = catalog.catalog_invariants("chen_gackstatter")
    assert inv.curv_pi == 8 and inv.genus == 1


@pytest.mark.parametrize("name,k,expected_over_pi", [
    ("catenoid", None, -4), ("enneper", None, -4),
    ("knoid", 3, -8), ("knoid", 4, -12), ("plane", None, 0)])
def test_total_curvature(name, k, expected_over_pi):
    surf = catalog.make_catalog_surface(name, k=k) if k else \
        catalog.make_catalog_surface(name)
    val = catalog.total_curvature(surf, level=5)
    assert val == pytest.approx(expected_over_pi * np.pi, abs=2e-2)


def test_total_curvature_refinement_order(knoid3):
    errs = []
    target = -8 * np.pi
    for lv in (3, 4, 5):
        mesh = grids.IcosphereMesh(lv)
        from minsurf.meshes import vertex_areas
        geo = geometry_of(knoid3, mesh)
        areas = vertex_areas(mesh.verts, mesh.faces)
        errs.append(abs(-0.5 * float(np.sum(geo.q * areas)) - target))
    eoc = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert all(1.5 < e < 2.8 for e in eoc), (errs, eoc)


def test_total_curvature_unsupported(holo_curve):
    with pytest.raises(CatalogError):
        catalog.total_curvature(holo_curve)


def test_clifford_total_curvature_zero(clifford):
    assert catalog.total_curvature(clifford) == 0.0


def test_holomorphic_curve_J_invariance(holo_curve, disk_grid):
    geo = geometry_of(holo_curve, disk_grid)

    def J(v):
        out = np.empty_like(v)
        out[:, 0], out[:, 1] = -v[:, 1], v[:, 0]
        out[:, 2], out[:, 3] = -v[:, 3], v[:, 2]
        return out

    rng = np.random.default_rng(2)
    W = rng.standard_normal((disk_grid.n_nodes, 4))
    tang = geo.tangential_projection(W.astype(complex)).real
    resid = np.abs(J(tang) - geo.tangential_projection(
        J(tang).astype(complex)).real)
    assert resid.max() <= 1e-12 * np.abs(tang).max()


def test_describe_roundtrip(catenoid, clifford):
    d = catenoid.describe()
    assert d["total_curvature_over_pi"] == -4
    assert d["ends"] == 2
    assert clifford.describe()["closed"] is True


def test_invariants_metadata(knoid4):
    inv = knoid4.invariants
    assert inv.curv_pi == 12 and inv.ends == 4 and inv.gauss_degree() == 3
    assert inv.osserman_holds()
