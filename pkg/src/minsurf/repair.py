"""Conformal repair: the tangential correction equation, its Fredholm
obstruction space, the holomorphic reference section, and symmetry
decompositions.

The repair equation is solved exactly per Fourier mode on flat-torus
domains.  On genus-zero surfaces the obstruction space is represented by
Laurent-monomial multipliers against the reference section (d nu)^T,
whose divisor comes from the Gauss-map Wronskian; holomorphicity of the
reference section and of every basis element is verified by numerical
differentiation on per-chart polar grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from . import forms, grids, sections
from .bounds import h0_totcurv
from .catalog import INF, _chart_eval, total_curvature
from .exceptions import CatalogError, ContractError, IntegrityError
from .rational import RationalFunction


# ----------------------------------------------------------------------
# per-chart polar evaluation grid with differentiation
# ----------------------------------------------------------------------

def _diff_matrix(x):
    """Spectral differentiation matrix through arbitrary distinct nodes."""
    n = len(x)
    w = np.ones(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                w[i] /= (x[i] - x[j])
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                D[i, j] = w[j] / (w[i] * (x[i] - x[j]))
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


class ChartPolarGrid:
    """Gauss-Legendre radial x uniform angular grid on a closed chart disk.

    Supplies d/dzbar of sampled smooth functions via a radial
    differentiation matrix and an angular FFT.
    """

    def __init__(self, n_r=24, radius=1.0):
        xg, wg = np.polynomial.legendre.leggauss(n_r)
        self.r = 0.5 * radius * (xg + 1.0)
        self.wr = 0.5 * radius * wg
        self.n_theta = 2 * n_r
        self.theta = np.arange(self.n_theta) * (2 * np.pi / self.n_theta)
        R, T = np.meshgrid(self.r, self.theta, indexing="ij")
        self.z = R * np.exp(1j * T)
        self.weights = self.wr[:, None] * (2 * np.pi / self.n_theta) * R
        self.Dr = _diff_matrix(self.r)
        self.n_r = n_r

    def dzbar(self, F):
        """d/dzbar of a smooth sampled function F(r, theta)."""
        dFr = self.Dr @ F
        k = np.fft.fftfreq(self.n_theta, d=1.0 / self.n_theta)
        dFt = np.fft.ifft(np.fft.fft(F, axis=1) * (1j * k)[None, :], axis=1)
        phase = np.exp(1j * self.theta)[None, :]
        return 0.5 * phase * (dFr + 1j * dFt / self.r[:, None])

    def integrate_round(self, values):
        """Integral against the round measure dA_h restricted to the chart."""
        lamh2 = 4.0 / (1.0 + np.abs(self.z) ** 2) ** 2
        return float(np.sum(self.weights * lamh2 * values).real)

    def integrate_flat(self, values):
        return float(np.sum(self.weights * values).real)


# ----------------------------------------------------------------------
# reference section and obstruction space (genus zero, d = 3)
# ----------------------------------------------------------------------

@dataclass
class ReferenceSection:
    """(d nu)^T sampled per chart: coefficient c with section = c F_zbar dz."""

    surface: object
    grids_: dict                      # chart -> ChartPolarGrid
    coeff: dict                       # chart -> sampled c
    mu: dict                          # chart -> d/dz log |F_z|^2
    divisor: list                     # [(point_or_INF, multiplicity)]
    dbar_residual: float
    degenerate: bool = False          # identically zero (plane)

    def norm_l2(self):
        return np.sqrt(sum(g.integrate_round(np.abs(self.coeff[ch]) ** 2)
                           for ch, g in self.grids_.items()))

    def divisor_json(self):
        return [{"point": "infinity" if p == INF else [p.real, p.imag],
                 "multiplicity": int(m)} for p, m in self.divisor]


def _chart_coeff(surface, grid, use_w):
    out = _chart_eval(surface, grid.z.ravel(), use_w)
    shape = grid.z.shape
    lam2 = out["lambda2"].reshape(shape)
    c = (-out["hopf"] / (lam2.ravel() / 2.0)).reshape(shape)
    mu = out["mu"].reshape(shape)
    return c, mu


def _dbar_residual_of(surface, grids_, coeff, mu):
    """Relative L2 residual of D'' applied to a coefficient field.

    Holomorphicity of a section c F_zbar (x) dz reads dzbar(c) + c
    conj(mu) = 0 with mu = d/dz log |F_z|^2.
    """
    num = 0.0
    den = 0.0
    for ch, g in grids_.items():
        resid = g.dzbar(coeff[ch]) + coeff[ch] * np.conj(mu[ch])
        num += g.integrate_round(np.abs(resid) ** 2)
        den += g.integrate_round(np.abs(coeff[ch]) ** 2)
    if den == 0.0:
        return 0.0
    return float(np.sqrt(num / den))


def _wronskian_divisor(surface):
    """Zero divisor of (d nu)^T from the Gauss-map Wronskian, both charts."""
    div = []
    wz = surface.chart_z.wronskian
    roots = P.polyroots(wz) if wz.size > 1 else np.array([])
    for r in roots:
        matched = False
        for i, (p, m) in enumerate(div):
            if p != INF and abs(p - r) < 1e-8:
                div[i] = (p, m + 1)
                matched = True
        if not matched:
            div.append((complex(r), 1))
    # order at infinity: deg of the w-chart Wronskian at w = 0
    ww = surface.chart_w.wronskian
    if ww.size == 1 and ww[0] == 0:
        pass
    else:
        ord_inf = 0
        while ord_inf < ww.size and ww[ord_inf] == 0:
            ord_inf += 1
        if ord_inf > 0:
            div.append((INF, ord_inf))
    return div


def locate_section_zeros(surface, n_scan=160):
    """Numerically locate zeros of (d nu)^T as minima of the invariant
    density q, Newton-refined on the Wronskian, with multiplicity from the
    winding number on a small circle."""
    zeros = []
    for chart, use_w in (("z", False), ("w", True)):
        w = surface.chart(use_w).wronskian
        if w.size == 1:
            continue
        dw = P.polyder(w)
        # coarse scan of the chart disk
        rr = np.linspace(0.05, 0.999, 40)
        tt = np.linspace(0, 2 * np.pi, n_scan, endpoint=False)
        R, T = np.meshgrid(rr, tt, indexing="ij")
        zz = (R * np.exp(1j * T)).ravel()
        zz = np.concatenate([zz, [0.0]])
        vals = np.abs(P.polyval(zz, w))
        candidates = zz[vals < 1e-2 * (1 + vals.max())]
        for z0 in candidates:
            z = z0
            for _ in range(60):
                f = P.polyval(z, w)
                df = P.polyval(z, dw)
                if abs(df) < 1e-14:
                    break
                step = f / df
                z = z - step
                if abs(step) < 1e-14:
                    break
            if abs(P.polyval(z, w)) > 1e-9:
                continue
            if abs(z) > 1.0 + 1e-9:
                continue
            if use_w:
                point = INF if abs(z) < 1e-8 else 1.0 / z
            else:
                point = complex(z)
            if any((p == INF and point == INF) or
                   (p != INF and point != INF and abs(p - point) < 1e-6)
                   for p, _m in zeros):
                continue
            # multiplicity = winding number of the Wronskian on a small circle
            circ = z + 1e-3 * np.exp(1j * np.linspace(0, 2 * np.pi, 257))
            args = np.unwrap(np.angle(P.polyval(circ, w)))
            mult = int(round((args[-1] - args[0]) / (2 * np.pi)))
            zeros.append((point, mult))
    return zeros


def holomorphic_reference_section(surface, n_r=24):
    """Sample (d nu)^T, verify its holomorphicity, and return its divisor.

    Raises IntegrityError when the numerically located zeros disagree with
    the analytic Wronskian divisor.
    """
    if surface.domain_kind != "punctured_sphere" or surface.ambient_dim != 3:
        raise CatalogError("reference section requires a genus-zero d=3 entry")
    gz = ChartPolarGrid(n_r)
    gw = ChartPolarGrid(n_r)
    grids_ = {"z": gz, "w": gw}
    cz, muz = _chart_coeff(surface, gz, False)
    cw, muw = _chart_coeff(surface, gw, True)
    coeff = {"z": cz, "w": cw}
    mu = {"z": muz, "w": muw}
    divisor = _wronskian_divisor(surface)
    if surface.invariants.planar:
        return ReferenceSection(surface, grids_, coeff, mu, divisor,
                                dbar_residual=0.0, degenerate=True)
    located = locate_section_zeros(surface)
    if sorted(m for _p, m in located) != sorted(m for _p, m in divisor):
        raise IntegrityError(
            f"numerically located zeros {located} disagree with the "
            f"analytic divisor {divisor}")
    for p, m in divisor:
        if not any((p == INF and q == INF) or
                   (p != INF and q != INF and abs(p - q) < 1e-6)
                   for q, _ in located):
            raise IntegrityError(f"divisor point {p} not found numerically")
    resid = _dbar_residual_of(surface, grids_, coeff, mu)
    return ReferenceSection(surface, grids_, coeff, mu, divisor,
                            dbar_residual=resid)


@dataclass
class ObstructionSpace:
    """H^0 of the obstruction bundle: multipliers against (d nu)^T."""

    surface_name: str
    h0: int
    basis: list                       # Laurent exponents or 'constants'
    divisor: list
    dbar_residuals: list = field(default_factory=list)

    def as_dict(self):
        return {"surface": self.surface_name, "h0": self.h0,
                "basis": self.basis,
                "divisor": [{"point": "infinity" if p == INF else
                             [p.real, p.imag], "multiplicity": int(m)}
                            for p, m in self.divisor],
                "dbar_residuals": self.dbar_residuals}


def obstruction_space(surface, n_r=24, verify=True):
    """Basis and dimension of the Fredholm obstruction space.

    Genus-zero d=3 entries: Laurent monomials z^j bounded by the divisor
    of the reference section; flat torus: constants.  The dimension must
    match the Riemann-Roch count (1/2pi) integral(-K) dA + g - 1.
    """
    if surface.domain_kind == "flat_torus":
        return ObstructionSpace(surface.name, h0=1, basis=["constants"],
                                divisor=[])
    if surface.domain_kind != "punctured_sphere" or surface.ambient_dim != 3:
        raise CatalogError(f"{surface.name}: obstruction space needs genus 0 "
                           "d=3 or a flat torus")
    if surface.invariants.planar:
        raise CatalogError("the plane has a degenerate (zero) reference "
                           "section; no obstruction space is defined")
    ref = holomorphic_reference_section(surface, n_r=n_r)
    m0 = next((m for p, m in ref.divisor if p != INF and abs(p) < 1e-8), 0)
    minf = next((m for p, m in ref.divisor if p == INF), 0)
    others = [(p, m) for p, m in ref.divisor
              if p != INF and abs(p) >= 1e-8]
    if others:
        raise CatalogError("Laurent-monomial basis requires the divisor to "
                           f"be supported at 0 and infinity, got {others}")
    exponents = list(range(-m0, minf + 1))
    h0 = len(exponents)
    predicted = h0_totcurv(surface.invariants.curv_pi, surface.genus)
    if h0 != predicted:
        raise IntegrityError(
            f"Laurent basis dimension {h0} disagrees with the Riemann-Roch "
            f"count {predicted}")
    residuals = []
    if verify:
        for j in exponents:
            coeff = {}
            for ch, flag in (("z", False), ("w", True)):
                zz = ref.grids_[ch].z
                mono = zz ** j if not flag else zz ** (-j)
                coeff[ch] = mono * ref.coeff[ch]
            residuals.append(_dbar_residual_of(surface, ref.grids_, coeff,
                                               ref.mu))
    return ObstructionSpace(surface.name, h0=h0,
                            basis=[{"monomial_exponent": j} for j in exponents],
                            divisor=ref.divisor, dbar_residuals=residuals)


# ----------------------------------------------------------------------
# the repair equation on flat-torus domains
# ----------------------------------------------------------------------

@dataclass
class RepairResult:
    sigma: object                    # tangential SectionSample
    obstruction_components: list
    residual: float                  # defect of the repair equation
    eta_after: float

    def as_dict(self):
        return {"obstruction_components":
                [[c.real, c.imag] for c in self.obstruction_components],
                "residual": self.residual, "eta_after": self.eta_after}


def solve_repair(surface, grid, s):
    """Solve D' sigma^{0,1} = -(nabla' s)^T on a flat-torus domain.

    The Fourier solve is exact per mode; the right-hand side is first
    projected off the adjoint kernel (constants), whose removed components
    are reported.  The solution map is linear in s.
    """
    if surface.domain_kind != "flat_torus":
        raise CatalogError("the shipped repair solver covers flat-torus "
                           "domains")
    if not isinstance(grid, grids.FourierTorusGrid):
        raise ContractError("repair needs a Fourier torus grid")
    if not s.has_normal:
        raise ContractError("repair expects a normal field")
    f = s.normal_scalar
    if f is None:
        raise ContractError("normal field must carry its scalar coefficient")
    fh = np.fft.fft2(f)
    n = grid.n
    m = np.fft.fftfreq(n, d=1.0 / n)
    M, N = np.meshgrid(m, m, indexing="ij")
    sym = 0.5 * (N + 1j * M)         # symbol of d/dz on e^{i(mx+ny)}
    mean = fh[0, 0] / n ** 2
    qh = np.zeros_like(fh)
    nz = np.abs(sym) > 0
    qh[nz] = fh[nz] / sym[nz]
    qt = np.fft.ifft2(qh)
    # sigma = conj(qt) F_z + qt F_zbar in frame coordinates
    ab = qt / np.sqrt(2.0)
    a, b = ab.real, -ab.imag
    sigma = sections.torus_tangential_section(surface, grid, a, b)
    # defect of the equation after removing the obstruction component
    resid_field = grid.deriv_z(qt) - (f - mean.real)
    resid = float(np.sqrt(grid.integrate(np.abs(resid_field) ** 2)))
    area = (2 * np.pi) ** 2
    obstruction = [complex(mean) * np.sqrt(area)]
    eta_after = forms.eta_functional(s, sigma).value
    return RepairResult(sigma=sigma, obstruction_components=obstruction,
                        residual=resid, eta_after=eta_after)


def project_off_obstruction(grid, f):
    """Remove the adjoint-kernel (mean) component of a torus field."""
    return f - float(np.mean(f))


# ----------------------------------------------------------------------
# Fredholm codimension and symmetry machinery
# ----------------------------------------------------------------------

@dataclass
class SymmetrySpec:
    """Domain involution theta paired with an ambient isometry part Theta0.

    Anti-holomorphic theta(z) = tau(conj z), holomorphic theta(z) = tau(z),
    with tau rational.
    """

    kind: str                        # "antiholomorphic" | "holomorphic"
    tau: RationalFunction
    theta0: np.ndarray

    def apply_domain(self, z):
        z = np.asarray(z, dtype=complex)
        return self.tau(np.conj(z)) if self.kind == "antiholomorphic" \
            else self.tau(z)


def default_symmetry(surface):
    """The reflection symmetry shipped with the d=3 catalog entries:
    theta(z) = conj(z), Theta0 = reflection in the xz-plane."""
    if surface.domain_kind != "punctured_sphere":
        return None
    return SymmetrySpec("antiholomorphic", RationalFunction((0.0, 1.0)),
                        np.diag([1.0, -1.0, 1.0]))


@dataclass
class SymmetryVerdict:
    passed: bool
    frame_residual: float
    normal_residual: float
    closure_residual: float
    sign: int
    reason: str = ""


def check_symmetry(surface, sym: SymmetrySpec, tol=1e-8, n_samples=64):
    """Verify Theta o F = F o theta at the differential level, the normal
    equivariance with the determinant sign rule, and that multiplication
    by the induced map rho preserves the obstruction basis."""
    if surface.domain_kind != "punctured_sphere":
        raise CatalogError("symmetry checks cover the genus-zero entries")
    rng = np.random.default_rng(11)
    z = np.exp(rng.uniform(np.log(0.3), np.log(3.0), n_samples)) \
        * np.exp(2j * np.pi * rng.uniform(0, 1, n_samples))
    # keep clear of punctures in either chart
    for p in surface.punctures:
        if p != INF:
            z = z[np.abs(z - p) > 0.2]
    th = sym.apply_domain(z)
    fz_at = _eval_fz_any(surface, z)
    fz_th = _eval_fz_any(surface, th)
    nu_at = _eval_nu_any(surface, z)
    nu_th = _eval_nu_any(surface, th)
    dtau = sym.tau.deriv()
    det = float(np.linalg.det(sym.theta0))
    if sym.kind == "antiholomorphic":
        lhs = np.conj(fz_th * dtau(np.conj(z))[:, None])
        sign = +1 if det < 0 else -1
    else:
        lhs = fz_th * dtau(z)[:, None]
        sign = -1 if det < 0 else +1
    rhs = fz_at @ sym.theta0.T
    scale = np.linalg.norm(fz_at, axis=1)
    frame_res = float(np.max(np.linalg.norm(lhs - rhs, axis=1) / scale))
    normal_res = float(np.max(np.linalg.norm(
        nu_th - sign * (nu_at @ sym.theta0.T), axis=1)))
    closure_res = 0.0
    if not surface.invariants.planar:
        closure_res = _ml_closure_residual(surface, sym)
    passed = max(frame_res, normal_res, closure_res) <= tol
    reason = "" if passed else "residual above tolerance"
    return SymmetryVerdict(passed, frame_res, normal_res, closure_res,
                           sign, reason)


def _eval_fz_any(surface, z):
    z = np.asarray(z, dtype=complex)
    out = np.empty((z.size, 3), dtype=complex)
    big = np.abs(z) > 1.0
    if np.any(~big):
        out[~big] = _chart_eval(surface, z[~big], False)["fz"]
    if np.any(big):
        # F_z(z) = F_w(1/z) * dw/dz = -F_w(1/z) / z^2
        fw = _chart_eval(surface, 1.0 / z[big], True)["fz"]
        out[big] = fw * (-1.0 / z[big] ** 2)[:, None]
    return out


def _eval_nu_any(surface, z):
    z = np.asarray(z, dtype=complex)
    out = np.empty((z.size, 3))
    big = np.abs(z) > 1.0
    if np.any(~big):
        out[~big] = _chart_eval(surface, z[~big], False)["nu"]
    if np.any(big):
        out[big] = _chart_eval(surface, 1.0 / z[big], True)["nu"]
    return out


def _ml_basis_exponents(surface):
    space = obstruction_space(surface, verify=False)
    return [b["monomial_exponent"] for b in space.basis]


def _ml_closure_residual(surface, sym):
    """Least-squares misfit of the induced multiplier map against the basis
    span: rho(h) = conj(h o theta) for anti-holomorphic theta, h o theta
    for holomorphic theta."""
    exps = _ml_basis_exponents(surface)
    rng = np.random.default_rng(5)
    z = np.exp(rng.uniform(np.log(0.5), np.log(2.0), 4 * len(exps) + 8)) \
        * np.exp(2j * np.pi * rng.uniform(0, 1, 4 * len(exps) + 8))
    th = sym.apply_domain(z)
    basis_at = np.stack([z ** j for j in exps], axis=1)
    worst = 0.0
    for j in exps:
        rho_h = np.conj(th ** j) if sym.kind == "antiholomorphic" else th ** j
        coef = np.linalg.lstsq(basis_at, rho_h, rcond=None)[0]
        fit = basis_at @ coef
        worst = max(worst, float(np.linalg.norm(fit - rho_h)
                                 / (np.linalg.norm(rho_h) + 1e-300)))
    return worst


def symmetry_decomposition(surface, sym):
    """Dimensions of the +1/-1 eigenspaces of rho on the obstruction space,
    as real-linear spaces (their sum is dim_R M_L = 2 h0)."""
    if sym.kind != "antiholomorphic":
        raise CatalogError("the eigenspace decomposition is defined for the "
                           "antilinear involution of an anti-holomorphic "
                           "symmetry")
    exps = _ml_basis_exponents(surface)
    h0 = len(exps)
    rng = np.random.default_rng(5)
    z = np.exp(rng.uniform(np.log(0.5), np.log(2.0), 4 * h0 + 8)) \
        * np.exp(2j * np.pi * rng.uniform(0, 1, 4 * h0 + 8))
    th = sym.apply_domain(z)
    basis_at = np.stack([z ** j for j in exps], axis=1)
    C = np.empty((h0, h0), dtype=complex)
    for i, j in enumerate(exps):
        rho_h = np.conj(th ** j)
        C[i] = np.linalg.lstsq(basis_at, rho_h, rcond=None)[0]
    # rho is antilinear; as a real-linear map on R^{2 h0} it is an
    # involution, so the +1/-1 dimensions follow from its trace
    Re, Im = C.real.T, C.imag.T
    M = np.block([[Re, Im], [Im, -Re]])
    if np.linalg.norm(M @ M - np.eye(2 * h0)) > 1e-8:
        raise IntegrityError("rho is not an involution on the basis span")
    tr = int(round(np.trace(M)))
    plus = (2 * h0 + tr) // 2
    minus = (2 * h0 - tr) // 2
    return plus, minus


def fredholm_codimension(surface, symmetry: SymmetrySpec | None = None):
    """Real codimension of the solvable right-hand sides of the repair
    equation: 2 h0 - 1 in general (constants give one real condition),
    h0 under a verified anti-holomorphic strong symmetry."""
    if surface.domain_kind == "flat_torus":
        h0 = 1
    else:
        h0 = obstruction_space(surface, verify=False).h0
    if symmetry is None:
        return 2 * h0 - 1, {"h0": h0, "symmetric": False}
    verdict = check_symmetry(surface, symmetry)
    if not verdict.passed:
        raise IntegrityError(
            f"declared symmetry rejected: frame residual "
            f"{verdict.frame_residual:.2e}, normal residual "
            f"{verdict.normal_residual:.2e}")
    if symmetry.kind != "antiholomorphic":
        return 2 * h0 - 1, {"h0": h0, "symmetric": False,
                            "note": "holomorphic symmetry does not halve "
                                    "the codimension"}
    return h0, {"h0": h0, "symmetric": True}
