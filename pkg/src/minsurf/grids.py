"""Discretizations: spectral eigenproblem grids and quadrature grids.

Two kinds back the eigenvalue computations (icosphere mesh, Fourier
torus); two more are pure quadrature grids used by the variational-form
evaluations (Gauss-Legendre x trapezoid on the sphere, polar
Gauss-Legendre on a disk).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import meshes
from .exceptions import ContractError


def stereographic_coordinate(points):
    """Chart coordinate of unit-sphere points.

    Returns (z, use_w) with z the coordinate in the chart selected per
    point: the standard stereographic coordinate from the north pole
    where |z| <= 1 (southern hemisphere), else the reciprocal chart
    w = 1/z.  ``use_w`` marks points evaluated in the w chart.
    """
    p = np.asarray(points, dtype=float)
    x, y, w3 = p[..., 0], p[..., 1], p[..., 2]
    use_w = w3 > 0.0
    z = np.empty(p.shape[:-1], dtype=complex)
    south = ~use_w
    z[south] = (x[south] + 1j * y[south]) / (1.0 - w3[south])
    z[use_w] = (x[use_w] - 1j * y[use_w]) / (1.0 + w3[use_w])
    return z, use_w


def sphere_point(z):
    """Inverse stereographic projection (north-pole chart)."""
    z = np.asarray(z, dtype=complex)
    d = 1.0 + np.abs(z) ** 2
    return np.stack([2 * z.real / d, 2 * z.imag / d, (np.abs(z) ** 2 - 1) / d],
                    axis=-1)


class Grid:
    """Base class; grids compare by identity for contract checks."""

    def require_same(self, other):
        if self is not other:
            raise ContractError("sections live on different discretizations")


@dataclass(eq=False)
class IcosphereMesh(Grid):
    """Geodesic icosphere triangulation of the round reference sphere."""

    level: int
    conformal_weight: object = None   # optional callable p -> e^{2 phi(p)}
    verts: np.ndarray = field(init=False, repr=False)
    faces: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.verts, self.faces = meshes.icosphere(self.level)
        self.chart_z, self.chart_is_w = stereographic_coordinate(self.verts)

    @property
    def kind(self):
        return "icosphere_mesh"

    @property
    def n_nodes(self):
        return len(self.verts)

    def refine(self):
        return IcosphereMesh(self.level + 1, conformal_weight=self.conformal_weight)

    def mass_weights(self):
        if self.conformal_weight is None:
            return None
        return np.asarray(self.conformal_weight(self.verts), dtype=float)

    def euler_characteristic(self):
        return meshes.euler_characteristic(self.verts, self.faces)

    def describe(self):
        return {"kind": self.kind, "level": self.level, "n_vertices": self.n_nodes}


@dataclass(eq=False)
class FourierTorusGrid(Grid):
    """Uniform N x N grid on the square torus [0, 2pi)^2.

    N must be a power of two.  Band-limited fields use modes |m|,|n| <= band
    (default N // 4) so products remain alias-free and the trapezoid rule
    is exact for every quadratic-form integrand.
    """

    n: int
    band: int = None
    quotient: str = "none"   # "none" or "rp3" (keep modes with m+n even)

    def __post_init__(self):
        if self.n & (self.n - 1) != 0 or self.n < 8:
            raise ContractError("Fourier grid resolution must be a power of two >= 8")
        if self.band is None:
            self.band = self.n // 4
        if self.band > self.n // 2 - 2:
            raise ContractError("band too large for alias-free products")
        x = np.arange(self.n) * (2 * np.pi / self.n)
        self.X, self.Y = np.meshgrid(x, x, indexing="ij")
        self.cell = (2 * np.pi / self.n) ** 2

    @property
    def kind(self):
        return "fourier_torus"

    @property
    def n_nodes(self):
        return self.n * self.n

    def refine(self):
        return FourierTorusGrid(2 * self.n, band=2 * self.band, quotient=self.quotient)

    def integrate(self, values):
        """Trapezoid rule over the torus (exact for band-limited data)."""
        return float(np.sum(values).real) * self.cell

    def deriv_x(self, f):
        fh = np.fft.fft2(f)
        m = np.fft.fftfreq(self.n, d=1.0 / self.n)
        return np.fft.ifft2(fh * (1j * m[:, None]))

    def deriv_y(self, f):
        fh = np.fft.fft2(f)
        m = np.fft.fftfreq(self.n, d=1.0 / self.n)
        return np.fft.ifft2(fh * (1j * m[None, :]))

    def deriv_z(self, f):
        """d/dz = (d/dx - i d/dy)/2 acting on a (possibly complex) grid field."""
        return 0.5 * (self.deriv_x(f) - 1j * self.deriv_y(f))

    def modes(self):
        """Integer mode pairs (m, n) within the band, respecting the quotient."""
        rng = range(-self.band, self.band + 1)
        out = []
        for m in rng:
            for n in rng:
                if self.quotient == "rp3" and (m + n) % 2 != 0:
                    continue
                out.append((m, n))
        return out

    def describe(self):
        return {"kind": self.kind, "n": self.n, "band": self.band,
                "quotient": self.quotient}


@dataclass(eq=False)
class SphereQuadratureGrid(Grid):
    """Gauss-Legendre (colatitude) x trapezoid (longitude) quadrature on S^2.

    Integrates smooth functions on the sphere with spectral accuracy; nodes
    avoid the poles, so chart evaluation never lands on z = 0 or infinity.
    """

    n_theta: int

    def __post_init__(self):
        mu, wmu = np.polynomial.legendre.leggauss(self.n_theta)
        nphi = 2 * self.n_theta
        phi = np.arange(nphi) * (2 * np.pi / nphi)
        MU, PHI = np.meshgrid(mu, phi, indexing="ij")
        sin_t = np.sqrt(1.0 - MU ** 2)
        pts = np.stack([sin_t * np.cos(PHI), sin_t * np.sin(PHI), MU], axis=-1)
        self.points = pts.reshape(-1, 3)
        self.weights = (wmu[:, None] * (2 * np.pi / nphi) *
                        np.ones_like(PHI)).ravel()
        self.chart_z, self.chart_is_w = stereographic_coordinate(self.points)

    @property
    def kind(self):
        return "gauss_sphere"

    @property
    def n_nodes(self):
        return len(self.points)

    def refine(self):
        return SphereQuadratureGrid(2 * self.n_theta)

    def integrate(self, values):
        """Integral over S^2 with the round measure dA_h."""
        return float(np.sum(self.weights * np.asarray(values)).real)

    def describe(self):
        return {"kind": self.kind, "n_theta": self.n_theta,
                "n_nodes": self.n_nodes}


@dataclass(eq=False)
class DiskQuadratureGrid(Grid):
    """Polar Gauss-Legendre x trapezoid quadrature on a disk |z| <= radius."""

    n_r: int
    radius: float = 1.0

    def __post_init__(self):
        xg, wg = np.polynomial.legendre.leggauss(self.n_r)
        r = 0.5 * self.radius * (xg + 1.0)
        wr = 0.5 * self.radius * wg
        ntheta = 2 * self.n_r
        theta = np.arange(ntheta) * (2 * np.pi / ntheta)
        R, T = np.meshgrid(r, theta, indexing="ij")
        self.z = (R * np.exp(1j * T)).ravel()
        self.weights = (wr[:, None] * (2 * np.pi / ntheta) * R).ravel()
        self._outer_ring = slice((self.n_r - 1) * ntheta, self.n_r * ntheta)

    @property
    def kind(self):
        return "disk_polar"

    @property
    def n_nodes(self):
        return self.z.size

    def refine(self):
        return DiskQuadratureGrid(2 * self.n_r, radius=self.radius)

    def integrate(self, values):
        """Integral over the disk with the flat measure dx dy."""
        return float(np.sum(self.weights * np.asarray(values)).real)

    def boundary_band_max(self, values):
        """Largest magnitude on the outermost radial ring (support check)."""
        flat = np.asarray(values).reshape(self.n_nodes, -1)
        return float(np.max(np.abs(flat[self._outer_ring])))

    def describe(self):
        return {"kind": self.kind, "n_r": self.n_r, "radius": self.radius}
