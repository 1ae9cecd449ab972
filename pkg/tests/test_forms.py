import numpy as np
import pytest

from minsurf import catalog, forms, grids, sections
from minsurf.exceptions import BoundarySupportWarning, ContractError

# 50 seeded trials at the reference resolutions; the identity is exact in
# the continuum, so the residual is pure quadrature error
N_TRIALS = 50
REFERENCE_SPHERE = 24
REFERENCE_TORUS = 32
IDENTITY_TOL = 1e-6
EXACTNESS_FLOOR = 5e-12


def sphere_pair(surface, grid, rng):
    s = sections.random_normal_sphere(surface, grid, rng)
    sig = sections.random_tangential_sphere(surface, grid, rng)
    return s, sig


def torus_pair(surface, grid, rng):
    s = sections.random_torus_normal(surface, grid, rng)
    sig = sections.random_torus_tangential(surface, grid, rng)
    return s, sig


def test_comparison_identity_catenoid(catenoid, sphere_grid, rng):
    worst = max(forms.comparison_residual(*sphere_pair(catenoid, sphere_grid,
                                                       rng))
                for _ in range(N_TRIALS))
    assert worst <= IDENTITY_TOL
    assert worst <= EXACTNESS_FLOOR      # polynomial integrands: exact rule


def test_comparison_identity_clifford(clifford, torus_grid, rng):
    worst = max(forms.comparison_residual(*torus_pair(clifford, torus_grid,
                                                      rng))
                for _ in range(N_TRIALS))
    assert worst <= IDENTITY_TOL
    assert worst <= EXACTNESS_FLOOR      # band-limited: trapezoid is exact


def test_comparison_identity_knoid_decays_spectrally(knoid3):
    # non-polynomial integrands give a genuine quadrature error that must
    # collapse by far more than two orders per doubling
    worst = {}
    for n in (8, 16):
        g = grids.SphereQuadratureGrid(n)
        rng = np.random.default_rng(7)
        worst[n] = max(forms.comparison_residual(*sphere_pair(knoid3, g, rng))
                       for _ in range(5))
    assert worst[16] <= worst[8] / 16.0
    assert worst[16] <= IDENTITY_TOL


def test_comparison_identity_catenoid_decay_to_floor(catenoid):
    worst = {}
    for n in (6, 12):
        g = grids.SphereQuadratureGrid(n)
        rng = np.random.default_rng(7)
        worst[n] = max(forms.comparison_residual(*sphere_pair(catenoid, g,
                                                              rng))
                       for _ in range(5))
    assert worst[12] <= max(worst[6] / 16.0, EXACTNESS_FLOOR)


def test_zero_sections_zero_residual(catenoid, sphere_grid):
    zero = sections.MultiPoly(np.array([[0, 0, 0]]), np.array([0.0]))
    s = sections.normal_from_polynomial(catenoid, sphere_grid, zero)
    sig = sections.tangential_from_polynomials(catenoid, sphere_grid,
                                               [zero] * 3)
    assert forms.comparison_residual(s, sig) == 0.0
    assert forms.eta_functional(s, sig).value == 0.0


def test_quadratic_scaling(catenoid, sphere_grid, rng):
    s, sig = sphere_pair(catenoid, sphere_grid, rng)
    a1 = forms.area_hessian(s).value
    a2 = forms.area_hessian(s.scaled(3.0)).value
    assert a2 == pytest.approx(9.0 * a1, rel=1e-12)
    e1 = forms.energy_hessian(sections.combine(s, sig)).value
    e2 = forms.energy_hessian(sections.combine(s.scaled(-2.0),
                                               sig.scaled(-2.0))).value
    assert e2 == pytest.approx(4.0 * e1, rel=1e-12)


def test_breakdown_sums_to_value(clifford, torus_grid, catenoid, sphere_grid,
                                 rng):
    s, sig = torus_pair(clifford, torus_grid, rng)
    for fv in (forms.energy_hessian(sections.combine(s, sig)),
               forms.area_hessian(s), forms.eta_functional(s, sig)):
        assert sum(fv.breakdown.values()) == pytest.approx(fv.value,
                                                           abs=1e-9)
    s, sig = sphere_pair(catenoid, sphere_grid, rng)
    fv = forms.energy_hessian(sections.combine(s, sig))
    assert sum(fv.breakdown.values()) == pytest.approx(fv.value, rel=1e-12)


def test_area_form_spherical_harmonic_oracle(catenoid, sphere_grid):
    # Q(f) = integral(|grad f|^2 - 2 f^2) dA on the round sphere.
    # f = p3 (degree 1): eigenvalue l(l+1)-2 = 0, so Q = 0.
    # f = p3^2 - 1/3 (degree 2): Q = 4 ||f||^2 = 4 * 16 pi / 45.
    p3 = sections.MultiPoly(np.array([[0, 0, 1]]), np.array([1.0]))
    s = sections.normal_from_polynomial(catenoid, sphere_grid, p3)
    assert forms.area_hessian(s).value == pytest.approx(0.0, abs=1e-10)
    f2 = sections.MultiPoly(np.array([[0, 0, 2], [0, 0, 0]]),
                            np.array([1.0, -1.0 / 3.0]))
    s2 = sections.normal_from_polynomial(catenoid, sphere_grid, f2)
    assert forms.area_hessian(s2).value == pytest.approx(64 * np.pi / 45,
                                                         rel=1e-12)


def test_catenoid_lowest_mode_negative(catenoid, sphere_grid):
    one = sections.MultiPoly(np.array([[0, 0, 0]]), np.array([1.0]))
    s = sections.normal_from_polynomial(catenoid, sphere_grid, one)
    val = forms.area_hessian(s).value
    assert val == pytest.approx(-8 * np.pi, rel=1e-12)  # -2 * area(S^2)
    assert val < 0


def test_energy_dirichlet_vs_real_coordinates(clifford, torus_grid, rng):
    # 4 integral |nabla_z v|^2 equals the x/y gradient form
    s, sig = torus_pair(clifford, torus_grid, rng)
    v = sections.combine(s, sig)
    geo = sections.geometry_of(clifford, torus_grid)
    V = v.normal_values + v.tangential_values

    def conn(V, d, F_d):
        dV = np.stack([d(V[..., c]) for c in range(4)], axis=-1)
        return dV + np.einsum('...i,...i->...', V, F_d)[..., None] * geo.F

    gx = conn(V, torus_grid.deriv_x, geo.Fx)
    gy = conn(V, torus_grid.deriv_y, geo.Fy)
    grad2 = np.sum(np.abs(gx) ** 2 + np.abs(gy) ** 2, axis=-1)
    curv = forms._torus_curvature_density(geo, V, 1.0)
    direct = torus_grid.integrate(grad2 - curv)
    assert direct == pytest.approx(
        forms.energy_hessian(v).value, rel=1e-12)


def test_clifford_energy_lowest_mode_oracle(clifford):
    # independent check of the assembled value: doubled-resolution
    # quadrature agrees to 1e-8 relative, and the mode value matches the
    # constant-coefficient symbol arithmetic (m,n)=(1,1): 4 pi^2
    vals = {}
    for n in (32, 64):
        g = grids.FourierTorusGrid(n, quotient="rp3")
        f = np.cos(g.X + g.Y)
        s = sections.torus_normal_section(clifford, g, f)
        vals[n] = forms.energy_hessian(s).value
    assert vals[64] == pytest.approx(vals[32], rel=1e-8)
    assert vals[32] == pytest.approx(4 * np.pi ** 2, rel=1e-12)


def test_constant_field_is_energy_null_on_clifford(clifford, torus_grid):
    f = np.full((torus_grid.n, torus_grid.n), 0.77)
    s = sections.torus_normal_section(clifford, torus_grid, f)
    assert forms.energy_hessian(s).value == pytest.approx(0.0, abs=1e-10)


def test_eta_vanishes_for_holomorphic_sigma(clifford, torus_grid):
    a = np.full((torus_grid.n, torus_grid.n), 0.5)
    b = np.full((torus_grid.n, torus_grid.n), -0.25)
    sig = sections.torus_tangential_section(clifford, torus_grid, a, b)
    zero = sections.torus_normal_section(
        clifford, torus_grid, np.zeros((torus_grid.n, torus_grid.n)))
    assert forms.eta_functional(zero, sig).value <= 1e-20


def test_energy_area_integrand_equality(catenoid, sphere_grid, clifford,
                                        torus_grid):
    for surf, g in ((catenoid, sphere_grid), (clifford, torus_grid)):
        e, a = forms.energy_area_integrands(surf, g)
        assert np.all(e >= a - 1e-12 * np.max(e))
        assert np.max(np.abs(e - a)) <= 1e-12 * np.max(np.abs(e))


def test_mismatched_grids_rejected(catenoid, rng):
    g1 = grids.SphereQuadratureGrid(12)
    g2 = grids.SphereQuadratureGrid(12)
    s = sections.random_normal_sphere(catenoid, g1, rng)
    sig = sections.random_tangential_sphere(catenoid, g2, rng)
    with pytest.raises(ContractError):
        forms.comparison_residual(s, sig)


def test_holomorphic_curve_stability(holo_curve, disk_grid):
    rng = np.random.default_rng(0)
    for _ in range(25):
        s = sections.random_disk_normal(holo_curve, disk_grid, rng)
        val = forms.area_hessian(s).value
        assert val >= -1e-9 * forms.h1_norm_sq(s)


def test_boundary_support_violation_flagged(holo_curve, disk_grid, rng):
    s = sections.random_disk_normal(holo_curve, disk_grid, rng,
                                    compact=False)
    with pytest.warns(BoundarySupportWarning):
        fv = forms.area_hessian(s)
    assert fv.boundary_flag
    with pytest.warns(BoundarySupportWarning):
        forms.comparison_residual(s, None)


def test_compact_support_not_flagged(holo_curve, disk_grid, rng):
    import warnings
    s = sections.random_disk_normal(holo_curve, disk_grid, rng)
    with warnings.catch_warnings():
        warnings.simplefilter("error", BoundarySupportWarning)
        fv = forms.area_hessian(s)
    assert not fv.boundary_flag


def test_eta_returns_pointwise_samples(clifford, torus_grid, rng):
    s, sig = torus_pair(clifford, torus_grid, rng)
    fv = forms.eta_functional(s, sig)
    assert fv.eta_values is not None
    dens = 8.0 * np.sum(np.abs(fv.eta_values) ** 2, axis=-1)
    assert torus_grid.integrate(dens) == pytest.approx(fv.value, rel=1e-12)


def test_eta_positive_and_stable_under_doubled_quadrature(clifford, rng):
    # the same continuum pair evaluated at N and 2N: positive value,
    # doubled-resolution agreement at the exactness level
    coeffs_f = {(1, 1): 0.3 - 0.2j, (2, 0): 0.1j, (3, -1): 0.05}
    coeffs_a = {(1, -1): 0.4j, (2, 2): -0.2}
    coeffs_b = {(0, 2): 0.25, (1, 1): 0.1 - 0.1j}
    vals = {}
    for n in (32, 64):
        g = grids.FourierTorusGrid(n, quotient="rp3")
        f = sections.torus_field_from_modes(g, coeffs_f)
        a = sections.torus_field_from_modes(g, coeffs_a)
        b = sections.torus_field_from_modes(g, coeffs_b)
        s = sections.torus_normal_section(clifford, g, f)
        sig = sections.torus_tangential_section(clifford, g, a, b)
        vals[n] = forms.eta_functional(s, sig).value
    assert vals[32] > 0
    assert vals[64] == pytest.approx(vals[32], rel=1e-12)
