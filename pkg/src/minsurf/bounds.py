"""Exact arithmetic for every index/nullity bound and verdict checking.

Total curvature is carried as an exact integer multiple of pi
(``curv_pi`` below, with integral(-K) dA = curv_pi * pi), so all bound
values are exact integers or rationals; quadrature enters only as a
cross-check elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import IntegrityError


@dataclass(frozen=True)
class SurfaceInvariants:
    """Topological and curvature invariants of a catalog surface."""

    name: str
    ambient_dim: int                 # d
    genus: int                       # g
    branch_total: int = 0            # b, total branching order
    ends: int = 0                    # number of punctures of the compactification
    curv_pi: int | None = None       # integral(-K) dA = curv_pi * pi (None: not finite)
    strong_symmetry: bool = False
    closed: bool = False             # closed domain (no punctures)
    planar: bool = False
    nonpositive_ambient: bool = False

    def gauss_degree(self):
        """Degree of the Gauss map for d=3 finite-total-curvature entries."""
        if self.curv_pi is None:
            raise IntegrityError(f"{self.name}: total curvature not finite")
        if self.curv_pi % 4 != 0:
            raise IntegrityError(
                f"{self.name}: total curvature {self.curv_pi}*pi is not a "
                "multiple of 4*pi")
        return self.curv_pi // 4

    def osserman_holds(self):
        """(1/2pi) integral(-K) dA >= 2g - 2 + ends - b."""
        if self.curv_pi is None:
            return False
        return Fraction(self.curv_pi, 2) >= 2 * self.genus - 2 + self.ends - self.branch_total


def r_of(g, b):
    """Teichmueller-obstruction rank r for a closed genus-g surface with
    total branching order b.

    Returns (r, case) where case records which of the three formula
    branches fired; a boundary flag is attached when b sits on a case
    boundary.
    """
    if g < 0 or b < 0:
        raise ValueError("genus and branching order must be nonnegative")
    boundary = b in (2 * g - 2, 4 * g - 4, 4 * g - 3)
    if b <= 2 * g - 3:
        return 6 * g - 6 - 2 * b, {"case": "low_branching", "boundary": boundary}
    if 2 * g - 2 <= b <= 4 * g - 4:
        r = 4 * g - 2 + 2 * math.floor(Fraction(-b, 2))
        return r, {"case": "clifford", "boundary": boundary}
    return 0, {"case": "high_branching", "boundary": boundary}


def h0_totcurv(curv_pi, genus):
    """dim H^0 of the obstruction bundle for a non-planar complete minimal
    surface of finite total curvature: (1/2pi) integral(-K) dA + g - 1."""
    if curv_pi <= 0:
        raise IntegrityError("h0 formula requires a non-planar surface "
                             "(positive total |curvature|)")
    value = Fraction(curv_pi, 2) + genus - 1
    if value.denominator != 1:
        raise IntegrityError(
            f"h0 formula gave non-integer {value}; total curvature "
            f"{curv_pi}*pi is inconsistent")
    return int(value)


@dataclass
class BoundEntry:
    name: str
    applicable: bool
    bound: object = None            # int or Fraction
    computed: object = None         # the quantity being bounded, if known
    verdict: str = "no spectrum"    # "holds" | "holds, sharp" | "FAILS" | skip reason
    detail: str = ""

    def as_dict(self):
        b = self.bound
        if isinstance(b, Fraction):
            b = float(b) if b.denominator != 1 else int(b)
        return {"name": self.name, "applicable": self.applicable,
                "bound": b, "computed": self.computed,
                "verdict": self.verdict, "detail": self.detail}


@dataclass
class BoundReport:
    invariants: SurfaceInvariants
    r_value: int | None
    h0_value: int | None
    entries: list = field(default_factory=list)

    def failed(self):
        return [e for e in self.entries if e.verdict == "FAILS"]

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def as_dict(self):
        return {
            "surface": self.invariants.name,
            "r": self.r_value,
            "h0": self.h0_value,
            "bounds": [e.as_dict() for e in self.entries],
        }


def _verdict(bound, computed):
    if computed is None or bound is None:
        return "no spectrum"
    if computed > bound:
        return "FAILS"
    if computed == bound:
        return "holds, sharp"
    return "holds"


def evaluate_bounds(inv: SurfaceInvariants, computed=None):
    """Evaluate every applicable bound for a surface.

    Parameters
    ----------
    inv : SurfaceInvariants
    computed : dict, optional
        Any of the keys ``i_A, n_A, i_E, n_E, n_E_T`` with integer values
        from a spectral computation.  Verdicts are emitted only for
        bounds whose right-hand side is available.

    Returns
    -------
    BoundReport
    """
    computed = dict(computed or {})
    iA = computed.get("i_A")
    nA = computed.get("n_A")
    iE = computed.get("i_E")
    nE = computed.get("n_E")
    nET = computed.get("n_E_T")
    ia_plus_na = iA + nA if (iA is not None and nA is not None) else None

    entries = []
    g, b, d = inv.genus, inv.branch_total, inv.ambient_dim
    T = inv.curv_pi
    finite_tc = T is not None and not inv.closed and not inv.planar

    r_closed = None
    if inv.closed:
        r_closed, _rcase = r_of(g, b)
    h0 = None
    if finite_tc:
        h0 = h0_totcurv(T, g)

    def add(name, applicable, bound=None, value=None, detail="", skip=""):
        if not applicable:
            entries.append(BoundEntry(name, False, verdict=f"skipped: {skip}"))
            return
        entries.append(BoundEntry(name, True, bound=bound, computed=value,
                                  verdict=_verdict(bound, value), detail=detail))

    # ---- closed-surface comparisons ---------------------------------
    add("index_closed_lower (i_E <= i_A)", inv.closed,
        bound=iA, value=iE,
        detail="i_E <= i_A",
        skip="surface not closed")
    add("index_closed (i_A <= i_E + r)", inv.closed,
        bound=(iE + r_closed) if (inv.closed and iE is not None) else None,
        value=iA, detail=f"r={r_closed}",
        skip="surface not closed")
    add("index_closed3 (i_A <= i_E + r - 1)", inv.closed and d == 3,
        bound=(iE + r_closed - 1) if (inv.closed and d == 3 and iE is not None) else None,
        value=iA, detail="3-dim space form, not totally geodesic",
        skip="not a closed surface in a 3-dim space form")
    nul_ok = inv.closed and all(v is not None for v in (iE, nE, nET))
    add("nul_closed_lower (i_E + n_E - n_E_T <= i_A + n_A)",
        inv.closed,
        bound=ia_plus_na if nul_ok else None,
        value=(iE + nE - nET) if nul_ok else None,
        detail="lower half of the nullity comparison",
        skip="surface not closed")
    add("nul_closed_upper (i_A + n_A <= i_E + n_E - n_E_T + r)",
        inv.closed,
        bound=(iE + nE - nET + r_closed) if nul_ok else None,
        value=ia_plus_na if nul_ok else None,
        detail=f"r={r_closed}" if inv.closed else "",
        skip="surface not closed")
    add("nonpositive_ambient (i_A <= r <= 6g-6)",
        inv.closed and inv.nonpositive_ambient,
        bound=r_closed, value=iA,
        detail=f"and r={r_closed} <= 6g-6={6 * g - 6}" if inv.closed else "",
        skip="ambient curvature not nonpositive" if inv.closed else "surface not closed")

    # ---- finite-total-curvature comparisons in R^d ------------------
    add("totcurv_index (1.1, i_A <= T + 2g - 2)", finite_tc,
        bound=(T + 2 * g - 2) if finite_tc else None, value=iA,
        detail="valid for every d >= 3",
        skip="needs finite total curvature in R^d")
    if finite_tc:
        lhs = T + 2 * g - 2
        rhs = Fraction(3 * T, 2) - inv.ends + b
        if not inv.osserman_holds() or lhs > rhs:
            entries.append(BoundEntry("totcurv_index_chain (1.1 second inequality)",
                                      True, bound=rhs, computed=lhs, verdict="FAILS",
                                      detail="Osserman chain violated"))
        else:
            entries.append(BoundEntry("totcurv_index_chain (1.1 second inequality)",
                                      True, bound=rhs, computed=lhs,
                                      verdict="holds" if lhs < rhs else "holds, sharp",
                                      detail="follows from the Osserman inequality"))
    add("totcurv_index3 (1.2, i_A <= T + 2g - 3)", finite_tc and d == 3,
        bound=(T + 2 * g - 3) if finite_tc else None, value=iA,
        detail="d = 3 improvement",
        skip="needs d = 3 finite total curvature")
    nay_ok = finite_tc and T >= 8
    add("nayatani (1.2nay, i_A + n_A <= 3T/4 + 3g)", nay_ok,
        bound=Fraction(3 * T, 4) + 3 * g if nay_ok else None,
        value=ia_plus_na,
        detail="requires integral(-K) >= 8 pi",
        skip="total curvature below 8 pi")
    add("nayatani_index (1.2nayindx, i_A <= 3T/4 + 3g - 3)",
        nay_ok and d == 3,
        bound=Fraction(3 * T, 4) + 3 * g - 3 if nay_ok else None,
        value=iA,
        detail="requires integral(-K) >= 8 pi and d = 3",
        skip="total curvature below 8 pi or d != 3")
    add("totcurv (i_A + n_A <= T + 2g - 2 + d)", finite_tc,
        bound=(T + 2 * g - 2 + d) if finite_tc else None,
        value=ia_plus_na,
        detail="index plus nullity, every d >= 3",
        skip="needs finite total curvature in R^d")
    add("totcurv_3 (i_A + n_A <= T + 2g)", finite_tc and d == 3,
        bound=(T + 2 * g) if finite_tc else None,
        value=ia_plus_na,
        detail="d = 3 improvement",
        skip="needs d = 3 finite total curvature")
    sym_ok = finite_tc and d == 3 and inv.strong_symmetry
    add("totcurv_3sym (i_A + n_A <= T/2 + g + 2)", sym_ok,
        bound=Fraction(T, 2) + g + 2 if sym_ok else None,
        value=ia_plus_na,
        detail="anti-holomorphic strong symmetry verified",
        skip="no verified strong symmetry")
    add("indx_3sym (i_A <= T/2 + g - 1)", sym_ok,
        bound=Fraction(T, 2) + g - 1 if sym_ok else None,
        value=iA,
        detail="anti-holomorphic strong symmetry verified",
        skip="no verified strong symmetry")
    if finite_tc and g == 0:
        entries.append(BoundEntry(
            "genus0_generic (context: i_A <= T/2 - 1, generically =)",
            True, bound=Fraction(T, 2) - 1, computed=iA,
            verdict=_verdict(Fraction(T, 2) - 1, iA),
            detail="reported for context only"))

    return BoundReport(invariants=inv, r_value=r_closed, h0_value=h0,
                       entries=entries)
