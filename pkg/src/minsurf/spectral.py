"""Discretized index forms, generalized eigensolves, index/nullity counts.

Genus-zero surfaces use linear FEM on a geodesic icosphere with the
conformally invariant potential q (q dA_h = -2K dA) evaluated exactly at
vertices through the Gauss map.  Flat-torus domains use exact Fourier
blocks, so their spectra carry no discretization error.  The nullity
window epsilon is calibrated against the known-exact catenoid kernel at
the same resolution and validated by a cluster-gap check; refinement must
reproduce the counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh

from . import grids, meshes
from .catalog import GeometryTable, make_catalog_surface
from .exceptions import CatalogError, ContractError, IntegrityError
from .sections import geometry_of

EPS_FLOOR = 1e-8
EPS_SAFETY = 3.0        # cluster-width multiplier on the calibrated drift
GAP_FACTOR = 10.0       # required gap between the eps window and the rest
_DRIFT_CACHE = {}


@dataclass
class QuadFormPair:
    """Assembled stiffness-minus-potential and mass matrices."""

    A: sparse.csr_matrix
    M: sparse.csr_matrix
    meta: dict = field(default_factory=dict)
    provenance: tuple = None     # (assemble_fn, surface, disc, kwargs)

    def validate(self):
        """Symmetry of both matrices and positive definiteness of M."""
        asym = abs(self.A - self.A.T).max()
        msym = abs(self.M - self.M.T).max()
        scale = max(abs(self.A).max(), 1.0)
        if asym > 1e-12 * scale or msym > 1e-12:
            raise IntegrityError(
                f"assembled matrices not symmetric: {asym:.2e}, {msym:.2e}")
        n = self.M.shape[0]
        if n <= 2000:
            np.linalg.cholesky(self.M.toarray())
        else:
            lam_min = eigsh(self.M, k=1, sigma=0, which="LM",
                            return_eigenvectors=False)[0]
            if lam_min <= 0:
                raise IntegrityError("mass matrix is not positive definite")
        return True


@dataclass
class SpectralReport:
    """Sorted low eigenvalues with index/nullity counts and the policy used."""

    eigenvalues: list
    index: int
    nullity: int
    eps: float
    eps_policy: dict
    status: str = "ok"
    convergence: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "index": self.index,
            "nullity": self.nullity,
            "eps": self.eps,
            "eps_policy": self.eps_policy,
            "status": self.status,
            "convergence": self.convergence,
            "meta": self.meta,
        }


# ----------------------------------------------------------------------
# assembly
# ----------------------------------------------------------------------

def assemble_area_stability(surface, disc):
    """Quadratic form of the second variation of area.

    Genus-zero d=3 surfaces: Q(u) = integral(|du|^2_h - q u^2) dA_h on the
    icosphere.  Clifford torus: exact Fourier blocks of the flat-domain
    form integral(|grad u|^2 - (|A|^2 + 2c) lambda^2 u^2) dx dy.
    """
    if surface.domain_kind == "punctured_sphere":
        if not isinstance(disc, grids.IcosphereMesh):
            raise ContractError("punctured-sphere surfaces are discretized "
                                "on an icosphere mesh")
        geo = geometry_of(surface, disc)
        w = disc.mass_weights()
        A, M = meshes.fem_matrices(disc.verts, disc.faces, potential=geo.q,
                                   mass_weight=w)
        # the form is bounded below by -max(q / weight) relative to M
        qw = geo.q if w is None else geo.q / w
        # translation Jacobi fields <e_i, nu> lie in the exact kernel of the
        # continuum operator for non-planar entries; their discrete Rayleigh
        # quotients calibrate this surface's kernel drift
        drift = 0.0
        if not surface.invariants.planar:
            for i in range(3):
                u = geo.nu[:, i]
                drift = max(drift, abs(float(u @ (A @ u)) / float(u @ (M @ u))))
        return QuadFormPair(A, M, meta={
            "surface": surface.name, "operator": "area_stability",
            "disc": disc.describe(), "sigma_hint": -float(np.max(qw)) - 1.0,
            "kernel_drift_hint": drift},
            provenance=(assemble_area_stability, surface, disc, {}))
    if surface.domain_kind == "flat_torus":
        if not isinstance(disc, grids.FourierTorusGrid):
            raise ContractError("flat-torus surfaces use a Fourier grid")
        _check_quotient(surface, disc)
        lam2 = 0.5
        pot = 4.0 * lam2      # (|A|^2 + 2c) lambda^2 = (2 + 2) / 2
        blocks_a, blocks_m = [], []
        for k, half in _half_modes(disc):
            m, n = k
            h = np.array([[m * m + n * n - pot]])
            blocks_a.append(_real_block(h, half))
            blocks_m.append(_real_block(np.array([[lam2]]), half))
        A = sparse.block_diag(blocks_a, format="csr") * (4 * np.pi ** 2)
        M = sparse.block_diag(blocks_m, format="csr") * (4 * np.pi ** 2)
        return QuadFormPair(A, M, meta={
            "surface": surface.name, "operator": "area_stability",
            "disc": disc.describe()},
            provenance=(assemble_area_stability, surface, disc, {}))
    raise CatalogError(f"{surface.name}: no area stability assembly for "
                       f"domain kind {surface.domain_kind}")


def assemble_energy_hessian(surface, disc, target="ambient", flat_dim=None,
                            subspace="full"):
    """Quadratic form of the second variation of energy.

    ``target='ambient'`` uses the surface's own target (flat R^d or the
    three-sphere for the Clifford torus, with the RP^3 parity carried by
    the grid).  ``target='flat'`` assembles the rank-``flat_dim`` block
    Laplacian of a flat target regardless of the surface (the form does
    not involve the immersion).  ``subspace='tangential'`` restricts to
    purely tangential fields (used for n_E^T).
    """
    if target not in ("ambient", "flat"):
        raise CatalogError(f"unknown target {target!r}")
    kwargs = {"target": target, "flat_dim": flat_dim, "subspace": subspace}
    if isinstance(disc, grids.IcosphereMesh):
        if target == "ambient" and surface.ambient_curv != 0.0:
            raise CatalogError("curved targets are not assembled on meshes")
        d = flat_dim or surface.ambient_dim
        S, M0 = meshes.fem_matrices(disc.verts, disc.faces,
                                    mass_weight=disc.mass_weights())
        A = sparse.block_diag([S] * d, format="csr")
        M = sparse.block_diag([M0] * d, format="csr")
        return QuadFormPair(A, M, meta={
            "surface": surface.name, "operator": f"energy_hessian_R{d}",
            "disc": disc.describe()},
            provenance=(assemble_energy_hessian, surface, disc, kwargs))
    if not isinstance(disc, grids.FourierTorusGrid):
        raise ContractError("energy hessian needs an icosphere or Fourier grid")
    lam2 = 0.5
    if target == "flat":
        d = flat_dim or surface.ambient_dim
        blocks_a, blocks_m = [], []
        for k, half in _half_modes(disc):
            m, n = k
            h = (m * m + n * n) * np.eye(d)
            blocks_a.append(_real_block(h, half))
            blocks_m.append(_real_block(lam2 * np.eye(d), half))
        label = f"energy_hessian_flat_R{d}"
    else:
        _check_quotient(surface, disc)
        if surface.name != "clifford_torus":
            raise CatalogError("curved-target torus energy hessian is "
                               "implemented for the Clifford torus")
        blocks_a, blocks_m = [], []
        for k, half in _half_modes(disc):
            h = _clifford_energy_symbol(*k)
            if subspace == "tangential":
                h = h[:2, :2]
            blocks_a.append(_real_block(h, half))
            blocks_m.append(_real_block(lam2 * np.eye(h.shape[0]), half))
        label = "energy_hessian_S3" + ("_tangential" if subspace == "tangential"
                                       else "")
    A = sparse.block_diag(blocks_a, format="csr") * (4 * np.pi ** 2)
    M = sparse.block_diag(blocks_m, format="csr") * (4 * np.pi ** 2)
    return QuadFormPair(A, M, meta={
        "surface": surface.name, "operator": label, "disc": disc.describe()},
        provenance=(assemble_energy_hessian, surface, disc, kwargs))


def _clifford_energy_symbol(m, n):
    """Per-mode Hermitian symbol of the S^3 energy hessian in the global
    orthonormal frame (e1, e2, nu) of the Clifford torus."""
    s2 = np.sqrt(2.0)
    h = (m * m + n * n) * np.eye(3, dtype=complex)
    h[0, 2] = 1j * s2 * m
    h[2, 0] = -1j * s2 * m
    h[1, 2] = -1j * s2 * n
    h[2, 1] = 1j * s2 * n
    return h


def _check_quotient(surface, disc):
    want = surface.params.get("quotient", "none")
    have = disc.quotient if disc.quotient != "none" else "s3"
    if want == "rp3" and disc.quotient != "rp3":
        raise ContractError("surface lives in RP^3 but the grid does not "
                            "carry the parity constraint")
    if want == "s3" and disc.quotient == "rp3":
        raise ContractError("grid imposes the RP^3 parity on an S^3 surface")
    del have


def _half_modes(disc):
    """Representatives of conjugate mode pairs: (0,0) plus a half lattice."""
    out = []
    for (m, n) in disc.modes():
        if (m, n) == (0, 0):
            out.append(((0, 0), False))
        elif (m > 0) or (m == 0 and n > 0):
            out.append(((m, n), True))
    return out


def _real_block(h, half):
    """Real symmetric block of a Hermitian mode symbol.

    Pair modes (half=True) double and embed C^k as R^{2k}; the zero mode
    contributes its real part once.
    """
    h = np.asarray(h, dtype=complex)
    if not half:
        return np.real(h)
    R, S = np.real(h), np.imag(h)
    return 2.0 * np.block([[R, -S], [S, R]])


# ----------------------------------------------------------------------
# eigensolver and counting policy
# ----------------------------------------------------------------------

def _lowest_eigenvalues(pair, m, seed=0):
    n = pair.A.shape[0]
    m = min(m, n - 2) if n > 4 else n
    if n <= 6000:
        vals = eigh(pair.A.toarray(), pair.M.toarray(), eigvals_only=True)
        return np.sort(vals)[:m]
    sigma = pair.meta.get("sigma_hint", -2.0)
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n)
    vals = eigsh(pair.A, k=m, M=pair.M, sigma=sigma, which="LM",
                 return_eigenvectors=False, v0=v0)
    return np.sort(vals)


def kernel_drift(disc):
    """Observed drift of the catenoid kernel cluster at this resolution.

    The catenoid operator on the round sphere is Delta - 2 whose kernel is
    the exact three-dimensional first-harmonic space; the largest distance
    of the three discrete kernel eigenvalues from zero calibrates the
    nullity window for every surface computed at the same resolution.
    """
    if isinstance(disc, grids.FourierTorusGrid):
        return 0.0
    key = (disc.kind, disc.level)
    if key not in _DRIFT_CACHE:
        catenoid = make_catalog_surface("catenoid")
        mesh = disc if disc.conformal_weight is None else \
            grids.IcosphereMesh(disc.level)
        pair = assemble_area_stability(catenoid, mesh)
        vals = _lowest_eigenvalues(pair, 6)
        _DRIFT_CACHE[key] = float(np.max(np.abs(vals[1:4])))
    return _DRIFT_CACHE[key]


def _count(vals, eps):
    index = int(np.sum(vals < -eps))
    nullity = int(np.sum(np.abs(vals) <= eps))
    outside = np.abs(vals[np.abs(vals) > eps])
    gap_ok = outside.size == 0 or float(outside.min()) >= GAP_FACTOR * eps
    return index, nullity, gap_ok


def solve_spectrum(pair, m=12, refine=True, seed=0):
    """Lowest-m spectrum of A u = lambda M u with index/nullity counts.

    The epsilon window is max(1e-8, safety * calibrated kernel drift).
    When the pair carries provenance the counts are recomputed at the next
    refinement and must agree; lack of a clean spectral gap or a count
    disagreement yields an explicit indeterminate status instead of a
    guess.
    """
    vals = _lowest_eigenvalues(pair, m, seed=seed)
    disc = pair.provenance[2] if pair.provenance else None
    drift = kernel_drift(disc) if disc is not None else 0.0
    drift = max(drift, pair.meta.get("kernel_drift_hint", 0.0))
    eps = max(EPS_FLOOR, EPS_SAFETY * drift)
    index, nullity, gap_ok = _count(vals, eps)
    policy = {"eps_floor": EPS_FLOOR, "safety": EPS_SAFETY,
              "calibrated_drift": drift, "gap_factor": GAP_FACTOR,
              "gap_ok": gap_ok}
    status = "ok" if gap_ok else "indeterminate nullity (no clean spectral gap)"
    report = SpectralReport(
        eigenvalues=[float(v) for v in vals], index=index, nullity=nullity,
        eps=eps, eps_policy=policy, status=status, meta=dict(pair.meta))
    if refine and pair.provenance is not None and gap_ok:
        fn, surface, disc0, kwargs = pair.provenance
        fine = disc0.refine()
        fine_pair = fn(surface, fine, **kwargs)
        fine_pair.provenance = None
        fine_vals = _lowest_eigenvalues(fine_pair, m, seed=seed)
        fine_drift = max(kernel_drift(fine),
                         fine_pair.meta.get("kernel_drift_hint", 0.0))
        fine_eps = max(EPS_FLOOR, EPS_SAFETY * fine_drift)
        fi, fn_, fgap = _count(fine_vals, fine_eps)
        agrees = (fi == index and fn_ == nullity and fgap)
        report.convergence = {
            "resolutions": [pair.meta.get("disc"), fine.describe()],
            "index": [index, fi], "nullity": [nullity, fn_],
            "agrees": agrees,
        }
        if not agrees:
            report.status = "indeterminate (refinement changed the counts)"
    return report


def compute_spectral_report(surface, disc, which="area", m=12, **kwargs):
    """Assemble and solve in one step."""
    if which == "area":
        pair = assemble_area_stability(surface, disc)
    elif which == "energy":
        pair = assemble_energy_hessian(surface, disc, **kwargs)
    else:
        raise CatalogError(f"unknown operator {which!r}")
    return solve_spectrum(pair, m=m)
