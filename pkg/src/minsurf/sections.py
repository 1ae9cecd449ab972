"""Variation fields sampled on discretizations.

Normal fields s and tangential fields sigma are generated from smooth
band-limited data (polynomials in the ambient sphere coordinates, Fourier
polynomials on the torus, bump-localized polynomials on the disk) so that
their chart derivatives are available in closed form and quadrature error
stays far below the identity tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import grids
from .catalog import GeometryTable
from .exceptions import ContractError

_GEOMETRY_CACHE = {}


def geometry_of(surface, grid):
    key = (id(surface), id(grid))
    if key not in _GEOMETRY_CACHE:
        _GEOMETRY_CACHE[key] = GeometryTable(surface, grid)
    return _GEOMETRY_CACHE[key]


class MultiPoly:
    """Polynomial in several variables as (exponents, coefficients)."""

    def __init__(self, exponents, coeffs):
        self.exponents = np.asarray(exponents, dtype=int)
        self.coeffs = np.asarray(coeffs, dtype=float)

    @classmethod
    def random(cls, nvars, degree, rng, decay=2.0):
        expo = [e for e in _exponents(nvars, degree)]
        expo = np.array(expo, dtype=int)
        total = expo.sum(axis=1)
        coeffs = rng.standard_normal(len(expo)) / (1.0 + total) ** decay
        return cls(expo, coeffs)

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        powers = pts[:, None, :] ** self.exponents[None, :, :]
        return np.prod(powers, axis=2) @ self.coeffs

    def partial(self, var):
        expo = self.exponents.copy()
        coeffs = self.coeffs * expo[:, var]
        keep = expo[:, var] > 0
        expo[keep, var] -= 1
        return MultiPoly(expo[keep], coeffs[keep])


def _exponents(nvars, degree):
    if nvars == 1:
        for d in range(degree + 1):
            yield (d,)
        return
    for d in range(degree + 1):
        for rest in _exponents(nvars - 1, degree - d):
            yield (d,) + rest


@dataclass
class SectionSample:
    """A normal and/or tangential variation field on a discretization.

    Ambient values are stored per node together with closed-form d/dz
    samples where the grid does not support spectral differentiation.
    """

    surface: object
    grid: object
    normal_values: np.ndarray | None = None       # s, ambient coordinates
    normal_dz: np.ndarray | None = None
    normal_scalar: np.ndarray | None = None       # f with s = f * nu (d=3)
    normal_scalar_dz: np.ndarray | None = None
    tangential_values: np.ndarray | None = None   # sigma, ambient coordinates
    tangential_dz: np.ndarray | None = None
    label: str = ""

    ORTHOGONALITY_TOL = 1e-10

    @property
    def has_normal(self):
        return self.normal_values is not None

    @property
    def has_tangential(self):
        return self.tangential_values is not None

    def __post_init__(self):
        self._validate()

    def _validate(self):
        geo = geometry_of(self.surface, self.grid)
        tol = self.ORTHOGONALITY_TOL
        if self.has_normal:
            s = self.normal_values
            if isinstance(self.grid, grids.FourierTorusGrid):
                scale = np.max(np.abs(s)) + 1e-300
                res = max(np.abs(np.einsum('...i,...i->...', s, geo.Fx)).max(),
                          np.abs(np.einsum('...i,...i->...', s, geo.Fy)).max())
                res /= scale
            else:
                # bilinear pairing with F_z captures both frame directions;
                # normalize pointwise so ends with large |F_z| do not dominate
                num = np.abs(np.sum(s * geo.fz, axis=-1))
                den = (np.linalg.norm(s, axis=-1)
                       * np.sqrt(geo.fz_norm2) + 1e-300)
                res = np.max(num / den)
            if res > tol:
                raise ContractError(
                    f"normal section not orthogonal to the tangent plane "
                    f"(relative residual {res:.2e})")
        if self.has_tangential:
            sig = self.tangential_values
            scale = np.max(np.abs(sig)) + 1e-300
            if isinstance(self.grid, grids.FourierTorusGrid) or \
                    self.surface.ambient_dim == 3:
                res = np.abs(np.einsum('...i,...i->...', sig, geo.nu)).max() / scale
            else:
                normal_part = sig - geo.tangential_projection(
                    sig.astype(complex)).real
                res = np.max(np.linalg.norm(normal_part, axis=-1)) / scale
            if res > tol:
                raise ContractError(
                    f"tangential section has a normal component "
                    f"(relative residual {res:.2e})")

    def sigma_coefficients(self):
        """(1,0)/(0,1) coefficients of sigma against F_z, F_zbar.

        For a real tangential field the (0,1) coefficient is the complex
        conjugate of the (1,0) coefficient.
        """
        geo = geometry_of(self.surface, self.grid)
        sig = self.tangential_values
        if isinstance(self.grid, grids.FourierTorusGrid):
            fz, fznorm2 = geo.Fz, 0.25
        else:
            fz, fznorm2 = geo.fz, geo.fz_norm2
        p10 = np.einsum('...i,...i->...', sig.astype(complex), np.conj(fz)) / fznorm2
        p01 = np.einsum('...i,...i->...', sig.astype(complex), fz) / fznorm2
        return p10, p01

    def scaled(self, alpha):
        """alpha * (this section); used by the quadratic-scaling checks."""
        def sc(a):
            return None if a is None else alpha * a
        return SectionSample(self.surface, self.grid,
                             normal_values=sc(self.normal_values),
                             normal_dz=sc(self.normal_dz),
                             normal_scalar=sc(self.normal_scalar),
                             normal_scalar_dz=sc(self.normal_scalar_dz),
                             tangential_values=sc(self.tangential_values),
                             tangential_dz=sc(self.tangential_dz),
                             label=f"{alpha}*{self.label}")


def combine(s, sigma):
    """Merge a normal-only and a tangential-only sample into one field."""
    if s.surface is not sigma.surface:
        raise ContractError("sections belong to different surfaces")
    s.grid.require_same(sigma.grid)
    return SectionSample(s.surface, s.grid,
                         normal_values=s.normal_values,
                         normal_dz=s.normal_dz,
                         normal_scalar=s.normal_scalar,
                         normal_scalar_dz=s.normal_scalar_dz,
                         tangential_values=sigma.tangential_values,
                         tangential_dz=sigma.tangential_dz,
                         label=f"{s.label}+{sigma.label}")


# ----------------------------------------------------------------------
# sphere-domain sections from ambient polynomials
# ----------------------------------------------------------------------

def normal_from_polynomial(surface, grid, poly):
    """s = f * nu with f the restriction of a polynomial in the sphere
    coordinates (band-limited: degree-D polynomials span spherical
    harmonics up to degree D)."""
    geo = geometry_of(surface, grid)
    pts = geo.points
    f = poly(pts)
    grad = np.stack([poly.partial(i)(pts) for i in range(3)], axis=-1)
    df_dz = np.einsum('ni,ni->n', grad.astype(complex), geo.dp_dz)
    s = f[:, None] * geo.nu
    ds_dz = df_dz[:, None] * geo.nu + f[:, None] * geo.dnu_dz
    return SectionSample(surface, grid, normal_values=s, normal_dz=ds_dz,
                         normal_scalar=f, normal_scalar_dz=df_dz,
                         label="poly-normal")


def tangential_from_polynomials(surface, grid, polys):
    """sigma = tangential projection of an ambient polynomial field W."""
    geo = geometry_of(surface, grid)
    pts = geo.points
    W = np.stack([p(pts) for p in polys], axis=-1)
    dW_dz = np.zeros(W.shape, dtype=complex)
    for c, p in enumerate(polys):
        grad = np.stack([p.partial(i)(pts) for i in range(3)], axis=-1)
        dW_dz[:, c] = np.einsum('ni,ni->n', grad.astype(complex), geo.dp_dz)
    nu = geo.nu
    wdotnu = np.einsum('ni,ni->n', W, nu)
    sigma = W - wdotnu[:, None] * nu
    dwdotnu = (np.einsum('ni,ni->n', dW_dz, nu.astype(complex))
               + np.einsum('ni,ni->n', W.astype(complex), geo.dnu_dz))
    dsigma = (dW_dz - dwdotnu[:, None] * nu
              - wdotnu[:, None] * geo.dnu_dz)
    return SectionSample(surface, grid, tangential_values=sigma,
                         tangential_dz=dsigma, label="poly-tangential")


def random_normal_sphere(surface, grid, rng, degree=8):
    return normal_from_polynomial(surface, grid,
                                  MultiPoly.random(3, degree, rng))


def random_tangential_sphere(surface, grid, rng, degree=8):
    polys = [MultiPoly.random(3, degree, rng) for _ in range(3)]
    return tangential_from_polynomials(surface, grid, polys)


# ----------------------------------------------------------------------
# flat-torus sections from Fourier data
# ----------------------------------------------------------------------

def torus_field_from_modes(grid, coeffs):
    """Real band-limited field: sum of c_mn e^{i(mx+ny)} + conjugate."""
    f = np.zeros((grid.n, grid.n))
    for (m, n), c in coeffs.items():
        if (m, n) == (0, 0):
            f += c.real
        else:
            phase = m * grid.X + n * grid.Y
            f += 2.0 * (c.real * np.cos(phase) - c.imag * np.sin(phase))
    return f

def random_torus_field(grid, rng, decay=2.0, zero_mean=False):
    coeffs = {}
    for (m, n) in grid.modes():
        if (m, n) == (0, 0) and zero_mean:
            continue
        if (m, n) < (0, 0):
            continue    # one representative per conjugate pair
        c = (rng.standard_normal() + 1j * rng.standard_normal())
        coeffs[(m, n)] = c / (1.0 + m * m + n * n) ** decay
    return torus_field_from_modes(grid, coeffs)


def torus_normal_section(surface, grid, f):
    geo = geometry_of(surface, grid)
    s = f[..., None] * geo.nu
    return SectionSample(surface, grid, normal_values=s, normal_scalar=f,
                         label="torus-normal")


def torus_tangential_section(surface, grid, a, b):
    """sigma = a e1 + b e2 in the global orthonormal tangent frame."""
    geo = geometry_of(surface, grid)
    sigma = a[..., None] * geo.e1 + b[..., None] * geo.e2
    return SectionSample(surface, grid, tangential_values=sigma,
                         label="torus-tangential")


def random_torus_normal(surface, grid, rng):
    return torus_normal_section(surface, grid, random_torus_field(grid, rng))


def random_torus_tangential(surface, grid, rng):
    a = random_torus_field(grid, rng)
    b = random_torus_field(grid, rng)
    return torus_tangential_section(surface, grid, a, b)


# ----------------------------------------------------------------------
# disk-domain sections (R^4 holomorphic curve)
# ----------------------------------------------------------------------

def disk_normal_section(surface, grid, polys, bump_power=4, support=0.95,
                        compact=True):
    """s = normal projection of W, W = bump * polynomial per component.

    With ``compact`` the bump (1 - (r/R)^2)^p localizes W strictly inside
    the disk; disabling it produces a deliberate support violation for the
    boundary-term checks.
    """
    geo = geometry_of(surface, grid)
    z = grid.z
    xy = np.stack([z.real, z.imag], axis=-1)
    rho2 = (np.abs(z) / (support * grid.radius)) ** 2
    if compact:
        bump = np.where(rho2 < 1.0, (1.0 - rho2) ** bump_power, 0.0)
        dbump_dz = np.where(rho2 < 1.0,
                            -bump_power * (1.0 - rho2) ** (bump_power - 1)
                            * np.conj(z) / (support * grid.radius) ** 2, 0.0)
    else:
        bump = np.ones_like(rho2)
        dbump_dz = np.zeros_like(z)
    W = np.zeros((z.size, 4))
    dW_dz = np.zeros((z.size, 4), dtype=complex)
    for c, p in enumerate(polys):
        val = p(xy)
        px = p.partial(0)(xy)
        py = p.partial(1)(xy)
        dval_dz = 0.5 * (px - 1j * py)
        W[:, c] = bump * val
        dW_dz[:, c] = dbump_dz * val + bump * dval_dz
    # s = W - tangential projection; derivative by the product rule with
    # d/dz F_zbar = 0 (flat harmonic target)
    fz, fzz = geo.fz, geo.fzz
    fzb = np.conj(fz)
    fn2 = geo.fz_norm2
    a = np.einsum('ni,ni->n', W.astype(complex), fzb) / fn2
    b = np.einsum('ni,ni->n', W.astype(complex), fz) / fn2
    tang = a[:, None] * fz + b[:, None] * fzb
    s = W - tang.real
    da = np.einsum('ni,ni->n', dW_dz, fzb) / fn2 - a * geo.mu
    db = (np.einsum('ni,ni->n', dW_dz, fz)
          + np.einsum('ni,ni->n', W.astype(complex), fzz)) / fn2 - b * geo.mu
    dtang = da[:, None] * fz + a[:, None] * fzz + db[:, None] * fzb
    ds_dz = dW_dz - dtang
    return SectionSample(surface, grid, normal_values=s, normal_dz=ds_dz,
                         label="disk-normal")


def random_disk_normal(surface, grid, rng, degree=6, compact=True):
    polys = [MultiPoly.random(2, degree, rng) for _ in range(4)]
    return disk_normal_section(surface, grid, polys, compact=compact)
