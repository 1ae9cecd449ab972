import numpy as np
import pytest

from minsurf import grids, sections
from minsurf.exceptions import ContractError


def test_normal_section_orthogonality(catenoid, sphere_grid, rng):
    s = sections.random_normal_sphere(catenoid, sphere_grid, rng)
    geo = sections.geometry_of(catenoid, sphere_grid)
    resid = np.abs(np.sum(s.normal_values * geo.fz, axis=-1))
    scale = np.linalg.norm(s.normal_values, axis=-1) * np.sqrt(geo.fz_norm2)
    assert np.max(resid / (scale + 1e-300)) <= 1e-10


def test_tangential_coefficients_conjugate(catenoid, sphere_grid,
                                           clifford, torus_grid, rng):
    sig = sections.random_tangential_sphere(catenoid, sphere_grid, rng)
    p10, p01 = sig.sigma_coefficients()
    assert np.allclose(p01, np.conj(p10), atol=1e-12 * np.abs(p10).max())
    sig = sections.random_torus_tangential(clifford, torus_grid, rng)
    p10, p01 = sig.sigma_coefficients()
    assert np.allclose(p01, np.conj(p10), atol=1e-12)


def test_invalid_normal_rejected(catenoid, sphere_grid):
    # a raw ambient field is not normal-valued
    bad = np.ones((sphere_grid.n_nodes, 3))
    with pytest.raises(ContractError):
        sections.SectionSample(catenoid, sphere_grid, normal_values=bad,
                               normal_dz=bad.astype(complex))


def test_combine_requires_same_surface(catenoid, enneper, sphere_grid, rng):
    s = sections.random_normal_sphere(catenoid, sphere_grid, rng)
    sig = sections.random_tangential_sphere(catenoid, sphere_grid, rng)
    sig.surface = enneper
    with pytest.raises(ContractError):
        sections.combine(s, sig)
    sig.surface = catenoid


def test_band_limited_torus_field(torus_grid, rng):
    f = sections.random_torus_field(torus_grid, rng)
    fh = np.fft.fft2(f)
    m = np.fft.fftfreq(torus_grid.n, d=1.0 / torus_grid.n).astype(int)
    M, N = np.meshgrid(m, m, indexing="ij")
    outside = (np.abs(M) > torus_grid.band) | (np.abs(N) > torus_grid.band)
    assert np.max(np.abs(fh[outside])) <= 1e-10 * np.max(np.abs(fh))
    # rp3 grid: only modes with m+n even
    odd = (M + N) % 2 != 0
    assert np.max(np.abs(fh[odd])) <= 1e-10 * np.max(np.abs(fh))


def test_zero_mean_field(torus_grid, rng):
    f = sections.random_torus_field(torus_grid, rng, zero_mean=True)
    assert abs(np.mean(f)) <= 1e-14 * np.abs(f).max()


def test_sphere_derivative_samples_match_finite_differences(catenoid, rng):
    # closed-form d/dz samples of s agree with chart finite differences
    g = grids.SphereQuadratureGrid(12)
    poly = sections.MultiPoly.random(3, 5, rng)
    s = sections.normal_from_polynomial(catenoid, g, poly)
    geo = sections.geometry_of(catenoid, g)
    zc = g.chart_z
    k = 37    # an interior node
    h = 1e-6

    def s_at(zz, use_w):
        out = __import__("minsurf.catalog", fromlist=["_chart_eval"]) \
            ._chart_eval(catenoid, np.array([zz]), use_w)
        pt = grids.sphere_point(np.array([zz])) if not use_w else None
        if use_w:
            d = 1.0 + abs(zz) ** 2
            pt = np.array([[2 * zz.real / d, -2 * zz.imag / d,
                            (1 - abs(zz) ** 2) / d]])
        f = poly(pt)
        return f[0] * out["nu"][0]

    use_w = bool(g.chart_is_w[k])
    z0 = zc[k]
    fd = (s_at(z0 + h, use_w) - s_at(z0 - h, use_w)) / (2 * h) \
        - 1j * (s_at(z0 + 1j * h, use_w) - s_at(z0 - 1j * h, use_w)) / (2 * h)
    fd = fd / 2.0
    assert np.allclose(s.normal_dz[k], fd, atol=1e-6)


def test_grid_describe():
    assert grids.SphereQuadratureGrid(8).describe()["kind"] == "gauss_sphere"
    assert grids.FourierTorusGrid(16).describe()["n"] == 16
    assert grids.IcosphereMesh(2).describe()["n_vertices"] == 162
    assert grids.DiskQuadratureGrid(8).describe()["kind"] == "disk_polar"
