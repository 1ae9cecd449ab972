"""Rational functions with complex coefficients.

The catalog stores Gauss maps and height differentials as ratios of
polynomials.  Keeping them in coefficient form makes derivatives, chart
swaps (z -> 1/w) and pole-free combinations like the spherical density
|g'|/(1+|g|^2) = |P'Q - PQ'|/(|P|^2+|Q|^2) exact coefficient arithmetic.

Coefficients are ascending (numpy.polynomial convention).
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P


def _trim(c):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    return P.polytrim(c, tol=0.0)


class RationalFunction:
    """A ratio num/den of complex polynomials in one variable."""

    def __init__(self, num, den=(1.0,)):
        self.num = _trim(num)
        self.den = _trim(den)
        if self.den.size == 1 and self.den[0] == 0:
            raise ZeroDivisionError("zero denominator polynomial")
        # normalize so the leading denominator coefficient is 1
        lead = self.den[-1]
        if lead != 0 and lead != 1:
            self.num = self.num / lead
            self.den = self.den / lead

    # -- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, k, coeff=1.0):
        """coeff * z**k; negative k gives coeff / z**|k|."""
        if k >= 0:
            c = np.zeros(k + 1, dtype=complex)
            c[k] = coeff
            return cls(c)
        c = np.zeros(-k + 1, dtype=complex)
        c[-k] = 1.0
        return cls((coeff,), c)

    @classmethod
    def const(cls, value):
        return cls((value,))

    # -- evaluation ----------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, self.num) / P.polyval(z, self.den)

    def eval_num(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.num)

    def eval_den(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.den)

    # -- calculus / algebra --------------------------------------------

    def deriv(self):
        n, d = self.num, self.den
        num = P.polysub(P.polymul(P.polyder(n), d), P.polymul(n, P.polyder(d)))
        den = P.polymul(d, d)
        return RationalFunction(num, den)

    def reciprocal_argument(self):
        """The rational function w -> f(1/w)."""
        m = max(self.num.size, self.den.size)
        num = np.zeros(m, dtype=complex)
        den = np.zeros(m, dtype=complex)
        num[m - self.num.size:] = self.num[::-1]
        den[m - self.den.size:] = self.den[::-1]
        return RationalFunction(num, den)

    def pullback_one_form(self):
        """Coefficient of the 1-form f(z)dz rewritten in the chart w = 1/z.

        f(z)dz = -f(1/w)/w^2 dw.
        """
        g = self.reciprocal_argument()
        return RationalFunction(P.polymul(g.num, (-1.0,)),
                                P.polymul(g.den, (0.0, 0.0, 1.0)))

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalFunction(P.polymul(self.num, other.num),
                                P.polymul(self.den, other.den))

    __rmul__ = __mul__

    def __add__(self, other):
        other = _as_rational(other)
        num = P.polyadd(P.polymul(self.num, other.den),
                        P.polymul(other.num, self.den))
        return RationalFunction(num, P.polymul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rational(other)
        num = P.polysub(P.polymul(self.num, other.den),
                        P.polymul(other.num, self.den))
        return RationalFunction(num, P.polymul(self.den, other.den))

    def __pow__(self, k):
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        out = RationalFunction((1.0,))
        for _ in range(int(k)):
            out = out * self
        return out

    def conj_coeffs(self):
        """Coefficient-wise conjugate: represents z -> conj(f(conj(z)))."""
        return RationalFunction(np.conj(self.num), np.conj(self.den))

    # -- structure -----------------------------------------------------

    def degree(self):
        """Degree as a map of the Riemann sphere (num, den assumed coprime)."""
        return max(self.num.size, self.den.size) - 1

    def wronskian(self):
        """P'Q - PQ' as polynomial coefficients (numerator of f' * den^2)."""
        return _trim(P.polysub(P.polymul(P.polyder(self.num), self.den),
                               P.polymul(self.num, P.polyder(self.den))))

    def is_constant(self):
        return self.num.size <= 1 and self.den.size <= 1

    def __repr__(self):
        return f"RationalFunction(num={self.num!r}, den={self.den!r})"


def _as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction((complex(x),))


def spherical_density(g):
    """|g'| / (1 + |g|^2) evaluated pole-free.

    For g = P/Q this equals |P'Q - PQ'| / (|P|^2 + |Q|^2), finite at poles
    of g; only the point z = infinity needs the reciprocal chart.
    Returns a callable z -> density.
    """
    w = g.wronskian()

    def density(z):
        z = np.asarray(z, dtype=complex)
        p = g.eval_num(z)
        q = g.eval_den(z)
        return np.abs(P.polyval(z, w)) / (np.abs(p) ** 2 + np.abs(q) ** 2)

    return density
