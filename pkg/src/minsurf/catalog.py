"""Catalog of classical minimal surfaces with closed-form Weierstrass data.

Every derived quantity (conformal factor, Gauss curvature, normal frame,
Hopf coefficient) is evaluated pointwise from F_z; the immersion itself is
never integrated numerically.  Genus-zero surfaces carry data in two
stereographic charts (z and w = 1/z) so evaluation near poles of the
Gauss map stays pole-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from . import grids, meshes
from .bounds import SurfaceInvariants
from .exceptions import (CatalogError, DomainEvaluationError,
                         FeatureNotAvailable, QuadratureError)
from .rational import RationalFunction

INF = complex(np.inf)

CATALOG_NAMES = ("plane", "catenoid", "enneper", "knoid",
                 "holomorphic_curve_R4", "clifford_torus", "chen_gackstatter")


@dataclass
class ChartData:
    """Weierstrass package of a genus-zero surface in one chart."""

    gauss: RationalFunction          # meromorphic Gauss map g
    height: RationalFunction         # 1-form coefficient: F_z built from g, eta
    fz: list = field(init=False)     # component rationals of F_z (pole-free products)
    fzz: list = field(init=False)
    dgauss: RationalFunction = field(init=False)
    dheight: RationalFunction = field(init=False)
    wronskian: np.ndarray = field(init=False)   # P'Q - PQ' of the Gauss map

    def __post_init__(self):
        g, eta = self.gauss, self.height
        one = RationalFunction((1.0,))
        g2 = g * g
        self.fz = [(one - g2) * eta * 0.5,
                   (one + g2) * eta * (0.5j),
                   g * eta]
        self.fzz = [c.deriv() for c in self.fz]
        self.dgauss = g.deriv()
        self.dheight = eta.deriv()
        self.wronskian = g.wronskian()

    def hopf(self, z):
        """Hopf coefficient <nu, F_zz> = -g'(z) * eta(z)."""
        return -(self.dgauss(z) * self.height(z))


@dataclass
class WeierstrassSurface:
    """A catalog minimal surface.

    For d = 3 genus-zero entries the fields ``chart_z``/``chart_w`` hold
    the Weierstrass data in the two stereographic charts.  The Clifford
    torus and the R^4 holomorphic curve use direct evaluators instead.
    """

    name: str
    domain_kind: str                 # punctured_sphere | flat_torus | planar_disk
    ambient_dim: int
    ambient_curv: float
    genus: int
    punctures: list
    branch_divisor: list
    invariants: SurfaceInvariants
    params: dict = field(default_factory=dict)
    chart_z: ChartData | None = None
    chart_w: ChartData | None = None

    # -- basic checks ---------------------------------------------------

    def check_not_puncture(self, z, tol=1e-8):
        z = np.asarray(z, dtype=complex)
        for p in self.punctures:
            if p == INF:
                bad = ~np.isfinite(z.real) | ~np.isfinite(z.imag)
            else:
                bad = np.abs(z - p) < tol
            if np.any(bad):
                raise DomainEvaluationError(
                    f"{self.name}: evaluation at puncture {p}")

    def chart(self, use_w: bool) -> ChartData:
        return self.chart_w if use_w else self.chart_z

    def puncture_chart_coords(self, use_w: bool):
        """Puncture positions expressed in the requested chart."""
        out = []
        for p in self.punctures:
            if use_w:
                out.append(0.0 if p == INF else (INF if p == 0 else 1.0 / p))
            else:
                out.append(p)
        return out

    # -- serialization ----------------------------------------------------

    def describe(self):
        inv = self.invariants
        return {
            "name": self.name,
            "params": {k: v for k, v in self.params.items()},
            "domain_kind": self.domain_kind,
            "ambient_dim": self.ambient_dim,
            "ambient_curv": self.ambient_curv,
            "genus": inv.genus,
            "ends": inv.ends,
            "branch_total": inv.branch_total,
            "total_curvature_over_pi": (-inv.curv_pi if inv.curv_pi is not None
                                        else None),
            "strong_symmetry": inv.strong_symmetry,
            "closed": inv.closed,
        }


@dataclass
class GeometrySample:
    """Pointwise geometric data of a surface (single point)."""

    point: complex
    chart: str                        # "z" or "w": chart the vectors refer to
    fz: np.ndarray                    # F_z in C^d
    lambda2: float                    # conformal factor 2|F_z|^2 in that chart
    normal: np.ndarray                # unit normal (d=3) or normal frame rows (d=4)
    gauss_curvature: float
    density_q: float                  # q with q dA_h = -2K dA (chart-free)
    hopf: complex                     # <nu, F_zz> (d=3)
    dnu_tangential_sq: float          # |(d nu)^T|^2 in the induced metric


def catalog_invariants(name, k=None):
    """SurfaceInvariants of a catalog entry (available even for entries
    whose evaluators are feature-gated)."""
    if name == "plane":
        return SurfaceInvariants("plane", ambient_dim=3, genus=0, ends=1,
                                 curv_pi=0, planar=True)
    if name == "catenoid":
        return SurfaceInvariants("catenoid", ambient_dim=3, genus=0, ends=2,
                                 curv_pi=4, strong_symmetry=True)
    if name == "enneper":
        return SurfaceInvariants("enneper", ambient_dim=3, genus=0, ends=1,
                                 curv_pi=4, strong_symmetry=True)
    if name == "knoid":
        if k is None or k < 3:
            raise CatalogError("knoid requires k >= 3")
        return SurfaceInvariants(f"knoid({k})", ambient_dim=3, genus=0, ends=k,
                                 curv_pi=4 * (k - 1), strong_symmetry=True)
    if name == "clifford_torus":
        return SurfaceInvariants("clifford_torus", ambient_dim=3, genus=1,
                                 ends=0, curv_pi=0, closed=True)
    if name == "holomorphic_curve_R4":
        return SurfaceInvariants("holomorphic_curve_R4", ambient_dim=4, genus=0,
                                 ends=0, curv_pi=None)
    if name == "chen_gackstatter":
        return SurfaceInvariants("chen_gackstatter", ambient_dim=3, genus=1,
                                 ends=1, curv_pi=8)
    raise CatalogError(f"unknown catalog surface {name!r}")


def make_catalog_surface(name, k=None, quotient="rp3",
                         enable_elliptic=False):
    """Construct a catalog surface.

    Parameters
    ----------
    name : str
        One of plane, catenoid, enneper, knoid, holomorphic_curve_R4,
        clifford_torus, chen_gackstatter.
    k : int, optional
        Number of ends for the knoid (k >= 3).
    quotient : str
        "rp3" (default) or "s3" for the Clifford torus.
    enable_elliptic : bool
        The Chen-Gackstatter entry needs Weierstrass-p evaluation which is
        not implemented; requesting it raises FeatureNotAvailable.
    """
    z = RationalFunction((0.0, 1.0))
    one = RationalFunction((1.0,))

    def genus0(gauss, height, punctures, inv, params=None):
        g_w = gauss.reciprocal_argument()
        eta_w = height.pullback_one_form()
        return WeierstrassSurface(
            name=inv.name, domain_kind="punctured_sphere", ambient_dim=3,
            ambient_curv=0.0, genus=0, punctures=punctures, branch_divisor=[],
            invariants=inv, params=params or {},
            chart_z=ChartData(gauss, height),
            chart_w=ChartData(g_w, eta_w))

    if name == "plane":
        return genus0(RationalFunction((0.0,)), one, [INF],
                      catalog_invariants("plane"))
    if name == "catenoid":
        return genus0(z, RationalFunction((1.0,), (0.0, 0.0, 1.0)),
                      [0.0, INF], catalog_invariants("catenoid"))
    if name == "enneper":
        return genus0(z, one, [INF], catalog_invariants("enneper"))
    if name == "knoid":
        if k is None or int(k) < 3:
            raise CatalogError("knoid requires k >= 3")
        k = int(k)
        gauss = RationalFunction.monomial(k - 1)
        zk_minus_1 = np.zeros(k + 1, dtype=complex)
        zk_minus_1[0], zk_minus_1[k] = -1.0, 1.0
        height = RationalFunction((1.0,), P.polymul(zk_minus_1, zk_minus_1))
        punctures = [np.exp(2j * np.pi * j / k) for j in range(k)]
        return genus0(gauss, height, punctures,
                      catalog_invariants("knoid", k), params={"k": k})
    if name == "holomorphic_curve_R4":
        return WeierstrassSurface(
            name=name, domain_kind="planar_disk", ambient_dim=4,
            ambient_curv=0.0, genus=0, punctures=[], branch_divisor=[],
            invariants=catalog_invariants(name), params={"radius": 1.0})
    if name == "clifford_torus":
        if quotient not in ("rp3", "s3"):
            raise CatalogError("clifford_torus quotient must be 'rp3' or 's3'")
        return WeierstrassSurface(
            name=name, domain_kind="flat_torus", ambient_dim=3,
            ambient_curv=1.0, genus=1, punctures=[], branch_divisor=[],
            invariants=catalog_invariants(name),
            params={"quotient": quotient, "lattice": "square_2pi"})
    if name == "chen_gackstatter":
        if not enable_elliptic:
            raise FeatureNotAvailable(
                "chen_gackstatter requires the optional elliptic-function "
                "feature (Weierstrass-p lattice sums), which is not enabled; "
                "its invariants are available via catalog_invariants()")
        raise FeatureNotAvailable("elliptic-function feature not implemented")
    raise CatalogError(f"unknown catalog surface {name!r}")


# ----------------------------------------------------------------------
# pointwise evaluation (genus-zero d=3 charts)
# ----------------------------------------------------------------------

def _chart_eval(surface, zz, use_w):
    """Vectorized geometry in one chart.  Returns dict of arrays.

    F_z-derived quantities blow up at punctures (metric ends); the
    puncture-smooth quantities (nu, q, density) stay finite there, which
    is all the compactified assembly consumes.
    """
    ch = surface.chart(use_w)
    zz = np.asarray(zz, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        fz = np.stack([c(zz) for c in ch.fz], axis=-1)
        fzz = np.stack([c(zz) for c in ch.fzz], axis=-1)
        pg = ch.gauss.eval_num(zz)
        qg = ch.gauss.eval_den(zz)
        denom = np.abs(pg) ** 2 + np.abs(qg) ** 2
        nu = np.stack([2 * (pg * np.conj(qg)).real / denom,
                       2 * (pg * np.conj(qg)).imag / denom,
                       (np.abs(pg) ** 2 - np.abs(qg) ** 2) / denom], axis=-1)
        density = np.abs(P.polyval(zz, ch.wronskian)) / denom  # |g'|/(1+|g|^2)
        lam2 = 2.0 * np.sum(np.abs(fz) ** 2, axis=-1)
        K = -4.0 * density ** 2 / lam2
        q = 2.0 * density ** 2 * (1.0 + np.abs(zz) ** 2) ** 2
        hopf = ch.hopf(zz)
        # mu = d/dz log |F_z|^2 = <F_zz, F_zbar> / |F_z|^2
        mu = 2.0 * np.sum(fzz * np.conj(fz), axis=-1) / lam2
    return {"fz": fz, "fzz": fzz, "nu": nu, "lambda2": lam2, "K": K,
            "q": q, "hopf": hopf, "mu": mu, "density": density}


def sample_geometry(surface, zpt):
    """GeometrySample of a genus-zero d=3 surface at one point.

    ``zpt`` is the coordinate in the standard (z) chart; numpy.inf selects
    the point at infinity.  Points with |z| > 1 are evaluated in the
    reciprocal chart to avoid cancellation near poles of the Gauss map.
    """
    if surface.domain_kind != "punctured_sphere":
        raise CatalogError(f"{surface.name}: pointwise chart sampling is for "
                           "punctured-sphere entries")
    zpt = complex(zpt)
    surface.check_not_puncture(np.array([zpt]))
    if zpt == INF or not np.isfinite(abs(zpt)):
        use_w, zc = True, 0.0
    elif abs(zpt) > 1.0:
        use_w, zc = True, 1.0 / zpt
    else:
        use_w, zc = False, zpt
    out = _chart_eval(surface, np.array([zc]), use_w)
    lam2 = float(out["lambda2"][0])
    K = float(out["K"][0]) if np.isfinite(out["K"][0]) else 0.0
    return GeometrySample(
        point=zpt, chart="w" if use_w else "z",
        fz=out["fz"][0], lambda2=lam2, normal=out["nu"][0],
        gauss_curvature=K, density_q=float(out["q"][0]),
        hopf=complex(out["hopf"][0]),
        dnu_tangential_sq=-K)


class GeometryTable:
    """Geometry of a surface cached on every node of a grid."""

    def __init__(self, surface, grid):
        self.surface = surface
        self.grid = grid
        if isinstance(grid, (grids.SphereQuadratureGrid, grids.IcosphereMesh)):
            self._build_sphere(surface, grid)
        elif isinstance(grid, grids.FourierTorusGrid):
            self._build_torus(surface, grid)
        elif isinstance(grid, grids.DiskQuadratureGrid):
            self._build_disk(surface, grid)
        else:
            raise CatalogError(f"unsupported grid kind {grid!r}")

    def _build_sphere(self, surface, grid):
        if surface.domain_kind != "punctured_sphere":
            raise CatalogError(f"{surface.name} does not live on a sphere grid")
        zc = grid.chart_z
        use_w = grid.chart_is_w
        n = zc.size
        d = surface.ambient_dim
        self.fz = np.empty((n, d), dtype=complex)
        self.fzz = np.empty((n, d), dtype=complex)
        self.nu = np.empty((n, 3))
        self.lambda2 = np.empty(n)
        self.K = np.empty(n)
        self.q = np.empty(n)
        self.hopf = np.empty(n, dtype=complex)
        self.mu = np.empty(n, dtype=complex)
        for flag in (False, True):
            sel = use_w == flag
            if not np.any(sel):
                continue
            out = _chart_eval(surface, zc[sel], flag)
            self.fz[sel] = out["fz"]
            self.fzz[sel] = out["fzz"]
            self.nu[sel] = out["nu"]
            self.lambda2[sel] = out["lambda2"]
            self.K[sel] = out["K"]
            self.q[sel] = out["q"]
            self.hopf[sel] = out["hopf"]
            self.mu[sel] = out["mu"]
        self.lambda_h2 = 4.0 / (1.0 + np.abs(zc) ** 2) ** 2
        self.fz_norm2 = self.lambda2 / 2.0
        # d nu / dz = -(hopf/|F_z|^2) F_zbar  (tangential, (0,1) part)
        with np.errstate(invalid="ignore"):
            coef = -self.hopf / self.fz_norm2
            self.dnu_dz = coef[:, None] * np.conj(self.fz)
        # derivative of the chart point map p(zeta), for chain rules
        self.dp_dz = _dp_dchart(zc, use_w)
        self.points = getattr(grid, "points", None)
        if self.points is None:
            self.points = grid.verts

    def _build_torus(self, surface, grid):
        if surface.domain_kind != "flat_torus":
            raise CatalogError(f"{surface.name} does not live on a torus grid")
        X, Y = grid.X, grid.Y
        s2 = 1.0 / np.sqrt(2.0)
        self.F = np.stack([np.cos(X), np.sin(X), np.cos(Y), np.sin(Y)],
                          axis=-1) * s2
        self.Fx = np.stack([-np.sin(X), np.cos(X), np.zeros_like(X),
                            np.zeros_like(X)], axis=-1) * s2
        self.Fy = np.stack([np.zeros_like(X), np.zeros_like(X),
                            -np.sin(Y), np.cos(Y)], axis=-1) * s2
        self.Fz = 0.5 * (self.Fx - 1j * self.Fy)
        self.nu = np.stack([-np.cos(X), -np.sin(X), np.cos(Y), np.sin(Y)],
                           axis=-1) * s2
        self.lambda2 = 0.5
        self.e1 = self.Fx * np.sqrt(2.0)
        self.e2 = self.Fy * np.sqrt(2.0)
        self.K = 0.0
        self.q = 0.0

    def _build_disk(self, surface, grid):
        if surface.domain_kind != "planar_disk":
            raise CatalogError(f"{surface.name} does not live on a disk grid")
        z = grid.z
        n = z.size
        # F(z) = (z, z^2) in C^2 = R^4
        self.fz = np.stack([np.full(n, 0.5 + 0j), np.full(n, -0.5j),
                            z.astype(complex), -1j * z], axis=-1)
        self.fzz = np.stack([np.zeros(n, complex), np.zeros(n, complex),
                             np.ones(n, complex), np.full(n, -1j)], axis=-1)
        self.lambda2 = 2.0 * np.sum(np.abs(self.fz) ** 2, axis=-1)
        self.fz_norm2 = self.lambda2 / 2.0
        self.mu = 2.0 * np.sum(self.fzz * np.conj(self.fz), axis=-1) / self.lambda2

    # -- projectors (bilinear pairing against F_z, F_zbar) -------------

    def tangential_projection(self, X):
        """Project ambient (complex) vectors onto the complexified tangent
        bundle at every node: <X,Fzbar>Fz/|Fz|^2 + <X,Fz>Fzbar/|Fz|^2."""
        fz = self.fz
        fzb = np.conj(fz)
        a = np.sum(X * fzb, axis=-1) / self.fz_norm2
        b = np.sum(X * fz, axis=-1) / self.fz_norm2
        return a[:, None] * fz + b[:, None] * fzb

    def normal_projection(self, X):
        return X - self.tangential_projection(X)


def _dp_dchart(zc, use_w):
    """d(sphere point)/d(chart coordinate) at chart points."""
    zb = np.conj(zc)
    denom = (1.0 + np.abs(zc) ** 2) ** 2
    dz = np.stack([(1.0 - zb ** 2), -1j * (1.0 + zb ** 2), 2.0 * zb],
                  axis=-1) / denom[:, None]
    dw = np.stack([(1.0 - zb ** 2), 1j * (1.0 + zb ** 2), -2.0 * zb],
                  axis=-1) / denom[:, None]
    out = np.where(use_w[:, None], dw, dz)
    return out


# ----------------------------------------------------------------------
# total curvature
# ----------------------------------------------------------------------

def total_curvature(surface, level=5, check_convergence=True):
    """integral K dA by quadrature on the compactified surface.

    Uses the conformally invariant presentation q dA_h = -2K dA on an
    icosphere mesh of the round reference sphere; for the flat torus the
    answer is identically zero.  Raises QuadratureError when refinement
    does not shrink the defect against -4 pi deg(G).
    """
    inv = surface.invariants
    if inv.curv_pi is None:
        raise CatalogError(f"{surface.name} is not a finite-total-curvature "
                           "catalog entry")
    if surface.domain_kind == "flat_torus":
        return 0.0
    values = []
    levels = [max(2, level - 2), max(2, level - 1), level]
    target = -np.pi * inv.curv_pi
    errors = []
    for lv in levels:
        mesh = grids.IcosphereMesh(lv)
        geo = GeometryTable(surface, mesh)
        areas = meshes.vertex_areas(mesh.verts, mesh.faces)
        total = -0.5 * float(np.sum(geo.q * areas))
        values.append(total)
        errors.append(abs(total - target))
    if check_convergence and inv.curv_pi > 0:
        if not (errors[-1] < errors[0]):
            raise QuadratureError(
                f"total curvature quadrature not converging on {surface.name}: "
                f"levels={levels}, defects={errors}")
    return values[-1]
