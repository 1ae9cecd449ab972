"""Second variation of energy and area, the eta defect, and the
comparison identity between them.

All three functionals are evaluated as quadrature of chart-free densities:
on genus-zero surfaces the flat-chart integrals are converted to the round
reference measure (the Dirichlet integrand is conformally invariant in two
dimensions), on the torus the trapezoid rule is exact for the band-limited
fields produced by :mod:`minsurf.sections`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import grids
from .exceptions import BoundarySupportWarning, ContractError
from .sections import SectionSample, combine, geometry_of

BOUNDARY_SUPPORT_RTOL = 1e-8


@dataclass
class FormValue:
    """Value of a quadratic form with its integrand breakdown.

    The breakdown entries sum to ``value`` up to rounding.
    """

    value: float
    breakdown: dict = field(default_factory=dict)
    boundary_flag: bool = False
    eta_values: np.ndarray | None = None

    def __float__(self):
        return self.value


def _hnorm2(X):
    """Pointwise Hermitian norm squared along the last axis."""
    return np.sum(np.abs(X) ** 2, axis=-1)


def _bdot(X, Y):
    """Complex-bilinear dot along the last axis."""
    return np.sum(X * Y, axis=-1)


def _check_disk_support(sample):
    grid = sample.grid
    if not isinstance(grid, grids.DiskQuadratureGrid):
        return False
    flagged = False
    for part in (sample.normal_values, sample.tangential_values):
        if part is None:
            continue
        outer = grid.boundary_band_max(part)
        scale = np.max(np.abs(part)) + 1e-300
        if outer > BOUNDARY_SUPPORT_RTOL * scale:
            warnings.warn(
                "section is not compactly supported inside the disk; "
                "integration-by-parts identities carry untrusted boundary "
                "terms", BoundarySupportWarning)
            flagged = True
    return flagged


# ----------------------------------------------------------------------
# pointwise derivative machinery per grid kind
# ----------------------------------------------------------------------

def _sphere_or_disk_pieces(sample):
    """Covariant derivative samples and their perp/tang/eta splits for the
    flat-target paths (genus-zero charts and the R^4 disk)."""
    geo = geometry_of(sample.surface, sample.grid)
    n = geo.fz.shape[0]
    d = geo.fz.shape[1]
    dv = np.zeros((n, d), dtype=complex)
    ds = None
    if sample.has_normal:
        ds = sample.normal_dz
        dv = dv + ds
    t10 = np.zeros((n, d), dtype=complex)
    t01 = np.zeros((n, d), dtype=complex)
    if sample.has_tangential:
        dsig = sample.tangential_dz
        dv = dv + dsig
        p10, p01 = sample.sigma_coefficients()
        sig = sample.tangential_values.astype(complex)
        # d/dz of the (0,1) coefficient: sigma^{0,1} = q F_zbar
        q_z = ((_bdot(dsig, geo.fz) + _bdot(sig, geo.fzz)) / geo.fz_norm2
               - p01 * geo.mu)
        t01 = q_z[:, None] * np.conj(geo.fz)
        # (d/dz sigma^{1,0})^T = (p_z + p mu) F_z
        p_z = _bdot(dsig, np.conj(geo.fz)) / geo.fz_norm2 - p10 * geo.mu
        t10 = (p_z + p10 * geo.mu)[:, None] * geo.fz
    ds_tang = geo.tangential_projection(ds) if ds is not None else 0.0
    eta = ds_tang + t01
    return geo, dv, ds, eta, t10


def _torus_pieces(sample):
    """Same splits on the Clifford torus (S^3 target, pullback connection)."""
    geo = geometry_of(sample.surface, sample.grid)
    grid = sample.grid

    def dz_field(V):
        out = np.empty(V.shape, dtype=complex)
        for c in range(V.shape[-1]):
            out[..., c] = grid.deriv_z(V[..., c])
        return out

    def connection(V, dV):
        # pullback Levi-Civita connection of S^3: P(d_z V) = d_z V + <V,F_z>F
        return dV + _bdot(V.astype(complex), geo.Fz)[..., None] * geo.F

    dv = None
    ds = None
    if sample.has_normal:
        s = sample.normal_values
        ds = connection(s, dz_field(s))
        dv = ds
    t10 = 0.0
    t01 = 0.0
    if sample.has_tangential:
        sig = sample.tangential_values
        dsig = connection(sig, dz_field(sig))
        dv = dsig if dv is None else dv + dsig
        p10, p01 = sample.sigma_coefficients()
        # on the Clifford torus nabla_z F_z and nabla_z F_zbar vanish, so
        # the (1,0)/(0,1) derivative terms are pure coefficient derivatives
        q_z = grid.deriv_z(p01)
        p_z = grid.deriv_z(p10)
        t01 = q_z[..., None] * np.conj(geo.Fz)
        t10 = p_z[..., None] * geo.Fz
    ds_tang = _torus_tangential(geo, ds) if ds is not None else 0.0
    eta = ds_tang + t01
    return geo, dv, ds, eta, t10


def _torus_tangential(geo, X):
    fz = geo.Fz
    fzb = np.conj(fz)
    fn2 = 0.25   # |F_z|^2 on the Clifford torus
    a = _bdot(X, fzb) / fn2
    b = _bdot(X, fz) / fn2
    return a[..., None] * fz + b[..., None] * fzb


def _torus_curvature_density(geo, V, c):
    """4 <R(V,F_z)F_zbar, V> for the space form R(X,Y)Z = c(<Y,Z>X - <X,Z>Y)."""
    Vc = V.astype(complex)
    fznorm2 = 0.25
    term = fznorm2 * _hnorm2(V) - (_bdot(Vc, np.conj(geo.Fz))
                                   * _bdot(Vc, geo.Fz)).real
    return 4.0 * c * term


# ----------------------------------------------------------------------
# the three functionals
# ----------------------------------------------------------------------

def energy_hessian(v: SectionSample) -> FormValue:
    """Second variation of energy at the harmonic map, direction v = s + sigma.

    Flat targets use the Dirichlet integrand; the Clifford torus adds the
    sectional-curvature term of the three-sphere.
    """
    grid = v.grid
    flag = _check_disk_support(v)
    if isinstance(grid, grids.FourierTorusGrid):
        geo, dv, ds, eta, t10 = _torus_pieces(v)
        total = v.normal_values if v.has_normal else 0.0
        if v.has_tangential:
            total = total + v.tangential_values
        grad = 4.0 * _hnorm2(dv)
        curv = _torus_curvature_density(geo, total, v.surface.ambient_curv)
        value = grid.integrate(grad - curv)
        perp = dv - _torus_tangential(geo, dv)
        normal_term = grid.integrate(4.0 * _hnorm2(perp))
        tang_term = grid.integrate(4.0 * (_hnorm2(eta) + _hnorm2(t10)))
        curv_term = -grid.integrate(curv)
    else:
        geo, dv, ds, eta, t10 = _sphere_or_disk_pieces(v)
        dens = 4.0 * _hnorm2(dv)
        if isinstance(grid, grids.SphereQuadratureGrid):
            dens = dens / geo.lambda_h2
        value = grid.integrate(dens)
        perp = dv - geo.tangential_projection(dv)
        npart = 4.0 * _hnorm2(perp)
        tpart = 4.0 * (_hnorm2(eta) + _hnorm2(t10))
        if isinstance(grid, grids.SphereQuadratureGrid):
            npart = npart / geo.lambda_h2
            tpart = tpart / geo.lambda_h2
        normal_term = grid.integrate(npart)
        tang_term = grid.integrate(tpart)
        curv_term = 0.0
    return FormValue(value=value, boundary_flag=flag, breakdown={
        "normal_grad_term": normal_term,
        "tangential_grad_term": tang_term,
        "curvature_term": curv_term,
        "eta_term": 0.0,
    })


def area_hessian(s: SectionSample) -> FormValue:
    """Second variation of area in the direction of the normal field s."""
    if not s.has_normal:
        raise ContractError("area hessian needs a normal field")
    grid = s.grid
    flag = _check_disk_support(s)
    if isinstance(grid, grids.FourierTorusGrid):
        geo, _dv, ds, _eta, _t10 = _torus_pieces(
            SectionSample(s.surface, s.grid, normal_values=s.normal_values,
                          normal_scalar=s.normal_scalar))
        tang = _torus_tangential(geo, ds)
        perp = ds - tang
        curv = _torus_curvature_density(geo, s.normal_values,
                                        s.surface.ambient_curv)
        npart = 4.0 * _hnorm2(perp)
        tpart = -4.0 * _hnorm2(tang)
        value = grid.integrate(npart + tpart - curv)
        parts = (grid.integrate(npart), grid.integrate(tpart),
                 -grid.integrate(curv))
    else:
        geo = geometry_of(s.surface, grid)
        ds = s.normal_dz
        tang = geo.tangential_projection(ds)
        perp = ds - tang
        npart = 4.0 * _hnorm2(perp)
        tpart = -4.0 * _hnorm2(tang)
        dens = npart + tpart
        if isinstance(grid, grids.SphereQuadratureGrid):
            dens = dens / geo.lambda_h2
            npart = npart / geo.lambda_h2
            tpart = tpart / geo.lambda_h2
        value = grid.integrate(dens)
        parts = (grid.integrate(npart), grid.integrate(tpart), 0.0)
    return FormValue(value=value, boundary_flag=flag, breakdown={
        "normal_grad_term": parts[0],
        "tangential_grad_term": parts[1],
        "curvature_term": parts[2],
        "eta_term": 0.0,
    })


def eta_functional(s: SectionSample, sigma: SectionSample) -> FormValue:
    """8 integral |eta|^2 with eta = (nabla_z s)^T + (nabla_z sigma^{0,1})^T.

    The returned FormValue carries the pointwise eta samples.
    """
    v = combine(s, sigma) if sigma is not None else s
    grid = v.grid
    flag = _check_disk_support(v)
    if isinstance(grid, grids.FourierTorusGrid):
        geo, _dv, _ds, eta, _t10 = _torus_pieces(v)
        value = grid.integrate(8.0 * _hnorm2(eta))
    else:
        geo, _dv, _ds, eta, _t10 = _sphere_or_disk_pieces(v)
        dens = 8.0 * _hnorm2(eta)
        if isinstance(grid, grids.SphereQuadratureGrid):
            dens = dens / geo.lambda_h2
        value = grid.integrate(dens)
    return FormValue(value=value, boundary_flag=flag,
                     breakdown={"normal_grad_term": 0.0,
                                "tangential_grad_term": 0.0,
                                "curvature_term": 0.0,
                                "eta_term": value},
                     eta_values=eta)


def comparison_residual(s: SectionSample, sigma: SectionSample) -> float:
    """Normalized defect of the identity
    d2E(s + sigma) = d2A(s) + 8 integral |eta|^2."""
    v = combine(s, sigma) if sigma is not None else s
    e = energy_hessian(v)
    a = area_hessian(s)
    h = eta_functional(s, sigma)
    return abs(e.value - a.value - h.value) / (1.0 + abs(e.value))


def h1_norm_sq(s: SectionSample) -> float:
    """Flat-chart H^1 norm of a normal field on a disk grid."""
    grid = s.grid
    dens = _hnorm2(s.normal_values) + 4.0 * _hnorm2(s.normal_dz)
    return grid.integrate(dens)


def energy_area_integrands(surface, grid):
    """Pointwise energy and area integrands e(F), g(F) of the immersion.

    e >= g with equality exactly at conformal points; catalog surfaces are
    conformal so the two agree to rounding.
    """
    geo = geometry_of(surface, grid)
    if isinstance(grid, grids.FourierTorusGrid):
        fx, fy = geo.Fx, geo.Fy
    else:
        fx = 2.0 * geo.fz.real
        fy = -2.0 * geo.fz.imag
    e = 0.5 * (_hnorm2(fx) + _hnorm2(fy))
    gram = _hnorm2(fx) * _hnorm2(fy) - np.einsum('...i,...i->...', fx, fy) ** 2
    g = np.sqrt(np.maximum(gram, 0.0))
    return e, g
