"""Exact algebraic numbers: minimal polynomial over Q plus a certified isolating box.

Root isolation is delegated to sympy (exact rational rectangles); we only pick
which isolated root is the one we mean, using a high-precision approximation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath
import sympy

from .gaussian import GaussianRational
from .numberfield import NFElement
from .poly import Poly

_T = sympy.Symbol("t")


def _to_sympy(c) -> sympy.Expr:
    c = GaussianRational.coerce(c)
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def _fr(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


class AlgebraicNumber:
    """A complex algebraic number pinned down by (minimal polynomial over Q, isolating box)."""

    def __init__(self, minpoly: Sequence[Fraction], box, approx):
        self.minpoly = tuple(Fraction(c) for c in minpoly)  # ascending, monic
        self.box = box  # (re_lo, re_hi, im_lo, im_hi); im_lo == im_hi == 0 for real roots
        self.approx = approx

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def is_real(self) -> bool:
        return self.box[2] == 0 and self.box[3] == 0

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction | None:
        return -self.minpoly[0] if self.degree == 1 else None

    def sign(self) -> int:
        """Sign of a real algebraic number, decided from its isolating interval."""
        if not self.is_real():
            raise ValueError("sign of a non-real number")
        if self.degree == 1:
            q = -self.minpoly[0]
            return (q > 0) - (q < 0)
        lo, hi = self.box[0], self.box[1]
        if lo >= 0:
            return 1
        if hi <= 0:
            return -1
        # the interval straddles 0 but the root is not 0 (irreducible, degree > 1)
        return 1 if float(mpmath.re(self.approx)) > 0 else -1

    def __complex__(self):
        return complex(self.approx)

    def __float__(self):
        if not self.is_real():
            raise ValueError("not a real number")
        return float(mpmath.re(self.approx))

    def minpoly_str(self, var: str = "t") -> str:
        from ..parser import format_poly

        return format_poly(Poly({(k,): c for k, c in enumerate(self.minpoly)}, nvars=1), names=(var,))

    def box_str(self) -> str:
        lo, hi, ilo, ihi = self.box
        if self.is_real():
            return f"[{lo}, {hi}]"
        return f"[{lo}, {hi}] x i[{ilo}, {ihi}]"

    def __str__(self):
        q = self.as_fraction()
        if q is not None:
            return str(q)
        return f"root of {self.minpoly_str()} in {self.box_str()}"

    def to_dict(self) -> dict:
        return {
            "minimal_polynomial": self.minpoly_str(),
            "isolating_box": {
                "re": [str(self.box[0]), str(self.box[1])],
                "im": [str(self.box[2]), str(self.box[3])],
            },
            "approx": [repr(complex(self.approx).real), repr(complex(self.approx).imag)],
        }


def _select_factor(qpoly: sympy.Poly, approx) -> sympy.Poly:
    _, factors = qpoly.factor_list()
    best, best_val = None, None
    with mpmath.workdps(60):
        for f, _m in factors:
            cs = [mpmath.mpf(int(c.p)) / int(c.q) for c in f.all_coeffs()]
            v = abs(mpmath.polyval(cs, approx)) / max(1, max(abs(c) for c in cs))
            if best_val is None or v < best_val:
                best, best_val = f, v
    return best


def _isolate(f: sympy.Poly, approx) -> tuple:
    z = complex(approx)
    eps = sympy.Rational(1, 2 ** 10)
    for _ in range(12):
        reals, cplx = f.intervals(all=True, eps=eps)
        hits = []
        for (a, b), _m in reals:
            hits.append(((_fr(a), _fr(b), Fraction(0), Fraction(0)), abs(z.imag) + max(0.0, float(a) - z.real, z.real - float(b))))
        for ((lo, hi), _m) in cplx:
            lo, hi = sympy.nsimplify(lo), sympy.nsimplify(hi)
            rl, il = _fr(sympy.re(lo)), _fr(sympy.im(lo))
            rh, ih = _fr(sympy.re(hi)), _fr(sympy.im(hi))
            d = max(0.0, float(rl) - z.real, z.real - float(rh)) + max(0.0, float(il) - z.imag, z.imag - float(ih))
            hits.append(((rl, rh, il, ih), d))
        hits.sort(key=lambda h: h[1])
        inside = [h for h in hits if h[1] == 0.0]
        if len(inside) == 1 or (len(hits) == 1):
            return hits[0][0]
        if len(hits) >= 2 and hits[0][1] < 1e-40 and hits[1][1] > 1e-30:
            return hits[0][0]
        eps = eps / 2 ** 20
    return hits[0][0]


def from_rational_poly(qcoeffs: Sequence[Fraction], approx) -> AlgebraicNumber:
    """The root nearest ``approx`` of a polynomial with rational coefficients (ascending)."""
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _T ** k for k, c in enumerate(qcoeffs))
    f = _select_factor(sympy.Poly(expr, _T, domain="QQ"), approx)
    f = f.monic()
    box = _isolate(f, approx)
    mins = [_fr(c) for c in reversed(f.all_coeffs())]
    return AlgebraicNumber(mins, box, approx)


def from_gaussian_poly(coeffs: Sequence, approx) -> AlgebraicNumber:
    """The root nearest ``approx`` of a polynomial over Q(i) (ascending coefficients)."""
    p = sum(_to_sympy(c) * _T ** k for k, c in enumerate(coeffs))
    pbar = sum(_to_sympy(GaussianRational.coerce(c).conjugate()) * _T ** k for k, c in enumerate(coeffs))
    q = sympy.Poly(sympy.expand(p * pbar), _T)
    qcoeffs = [_fr(c) for c in reversed(q.all_coeffs())]
    return from_rational_poly(qcoeffs, approx)


def from_gaussian(z: GaussianRational) -> AlgebraicNumber:
    z = GaussianRational.coerce(z)
    if z.is_real():
        return AlgebraicNumber((-z.re, Fraction(1)), (z.re, z.re, Fraction(0), Fraction(0)), mpmath.mpf(z.re.numerator) / z.re.denominator)
    return from_gaussian_poly([-z, 1], complex(z))


def from_nf(x: NFElement) -> AlgebraicNumber:
    """Minimal polynomial over Q via the characteristic polynomial of multiplication by x."""
    g = x.as_gaussian()
    if g is not None:
        return from_gaussian(g)
    field = x.field
    n = field.degree
    basis = [Poly.monomial((j,), 1) for j in range(n)] + [Poly.monomial((j,), GaussianRational(0, 1)) for j in range(n)]
    cols = []
    for b in basis:
        img = (x * NFElement(field, b)).poly
        re = [img.coeff((j,)).re for j in range(n)]
        im = [img.coeff((j,)).im for j in range(n)]
        cols.append([sympy.Rational(v.numerator, v.denominator) for v in re + im])
    m = sympy.Matrix(cols).T
    cp = m.charpoly(_T)
    qcoeffs = [_fr(c) for c in reversed(cp.all_coeffs())]
    return from_rational_poly(qcoeffs, x.to_mpc())


def to_algebraic(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, NFElement):
        return from_nf(x)
    return from_gaussian(GaussianRational.coerce(x))
