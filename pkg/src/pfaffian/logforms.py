"""Closed meromorphic 1-forms  sum lambda_i df_i/f_i + d(h / prod f_i^(m_i - 1)).

Kept as one fraction N / D with D = prod f_i^(m_i).  Writing F = prod f_i and
P = prod f_i^(m_i - 1):

    N = sum lambda_i P (F/f_i) df_i + F dh - h sum (m_i - 1) (F/f_i) df_i
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra.forms import HoloOneForm, MeroOneForm, primitive_part
from .algebra.gaussian import GaussianRational
from .algebra.poly import Poly, gcd
from .rolle import FirstIntegral, log_magnitude_integral


class LogFormError(ValueError):
    pass


@dataclass(frozen=True)
class Pole:
    f: Poly
    residue: object
    order: int = 1


@dataclass(frozen=True)
class ClosedMeroForm:
    poles: tuple
    h: Poly

    @property
    def is_logarithmic(self) -> bool:
        return all(p.order == 1 for p in self.poles) and not self.h

    def _products(self):
        F = Poly.one(2)
        P = Poly.one(2)
        for p in self.poles:
            F = F * p.f
            P = P * p.f ** (p.order - 1)
        return F, P

    @property
    def denominator(self) -> Poly:
        F, P = self._products()
        return F * P

    def numerator(self) -> HoloOneForm:
        F, P = self._products()
        a = Poly.zero(2)
        b = Poly.zero(2)
        for p in self.poles:
            cof = F.exquo(p.f)
            w = cof * P * p.residue - cof * self.h * (p.order - 1)
            a = a + w * p.f.diff(0)
            b = b + w * p.f.diff(1)
        a = a + F * self.h.diff(0)
        b = b + F * self.h.diff(1)
        return HoloOneForm(a, b)

    def to_mero(self) -> MeroOneForm:
        return MeroOneForm(self.numerator(), self.denominator)

    def __str__(self):
        parts = [f"({p.residue}) d({p.f})/({p.f})" + (f"^{p.order}" if p.order > 1 else "") for p in self.poles]
        if self.h:
            _, P = self._products()
            parts.append(f"d(({self.h}) / ({P}))")
        return " + ".join(parts) or "0"


def _check_factors(fs: Sequence[Poly]):
    for f in fs:
        if f.nvars != 2:
            raise LogFormError("pole factors must be bivariate polynomials")
        if f.is_constant():
            raise LogFormError(f"pole factor {f} is constant")
        sq = gcd(f, f.diff(0))
        sq = gcd(sq, f.diff(1))
        if not sq.is_constant():
            raise LogFormError(f"pole factor {f} is not squarefree")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if not gcd(fs[i], fs[j]).is_constant():
                raise LogFormError(f"pole factors {fs[i]} and {fs[j]} (#{i}, #{j}) share a common factor")


def closed_meromorphic(poles: Sequence[tuple], h: Poly | None = None) -> ClosedMeroForm:
    """poles: (f, residue, order) triples; h: numerator of the exact part."""
    ps = tuple(Pole(f, GaussianRational.coerce(lam) if not hasattr(lam, "field") else lam, int(m))
               for f, lam, m in poles)
    for p in ps:
        if p.order < 1:
            raise LogFormError("pole orders must be >= 1")
    _check_factors([p.f for p in ps])
    return ClosedMeroForm(ps, h if h is not None else Poly.zero(2))


def build_logarithmic(factors: Sequence[tuple]) -> ClosedMeroForm:
    """sum lambda_i df_i / f_i for pairwise coprime f_i."""
    return closed_meromorphic([(f, lam, 1) for f, lam in factors])


def saddle_node_closed_form(k: int, mu) -> ClosedMeroForm:
    """(mu/y + 1/y^(k+1)) dy - dx/x: the saddle-node normal form divided by x y^(k+1)."""
    x, y = Poly.variable(0, 2), Poly.variable(1, 2)
    return closed_meromorphic([(y, mu, k + 1), (x, -1, 1)], Poly.constant(GaussianRational(-1) / k, 2))


def resonant_closed_form(p: int, q: int, k: int, mu) -> ClosedMeroForm:
    """(mu - 1) p dx/x + mu q dy/y - d(1 / (k (x^p y^q)^k))."""
    mu = GaussianRational.coerce(mu)
    x, y = Poly.variable(0, 2), Poly.variable(1, 2)
    return closed_meromorphic([(x, (mu - 1) * p, p * k + 1), (y, mu * q, q * k + 1)],
                              Poly.constant(GaussianRational(-1) / k, 2))


def closedness_check(tau) -> bool:
    """Exact test d(N/D) = 0, i.e. D dN - dD ^ N = 0."""
    m = tau.to_mero() if isinstance(tau, ClosedMeroForm) else tau
    return m.is_closed()


def induced_holomorphic_form(tau) -> HoloOneForm:
    """Clear the denominator and strip the content: the polynomial form of the same foliation."""
    num = tau.numerator() if isinstance(tau, ClosedMeroForm) else tau.numerator
    return primitive_part(num)[0]


def _residue_is_real(lam) -> bool:
    if hasattr(lam, "is_real"):
        return bool(lam.is_real())
    return True


def magnitude_first_integral(tau: ClosedMeroForm) -> FirstIntegral | None:
    """prod |f_i|^(lambda_i) when every residue is real; None otherwise."""
    if not tau.is_logarithmic:
        raise LogFormError("the magnitude first integral is defined for logarithmic forms only")
    if not all(_residue_is_real(p.residue) for p in tau.poles):
        return None
    return log_magnitude_integral([(p.f, complex(p.residue).real) for p in tau.poles])


def extract_residues(tau: ClosedMeroForm) -> list:
    """Recover each residue of a logarithmic form from its single-fraction numerator.

    Modulo f_i the numerator reduces to lambda_i (F/f_i) df_i; dividing by f_i
    (a one-element Groebner basis, so remainders are canonical) exposes lambda_i.
    """
    if not tau.is_logarithmic:
        raise LogFormError("residue extraction is implemented for logarithmic forms")
    N = tau.numerator()
    F, _ = tau._products()
    out = []
    for p in tau.poles:
        cof = F.exquo(p.f)
        lam = None
        for num, dfj in ((N.a, p.f.diff(0)), (N.b, p.f.diff(1))):
            rn = num.divmod(p.f)[1]
            rd = (cof * dfj).divmod(p.f)[1]
            if not rd:
                if rn:
                    raise LogFormError("numerator is not logarithmic along a pole")
                continue
            en, cd = rd.leading_term()
            cand = rn.coeff(en) / cd
            if rn - rd * cand:
                raise LogFormError("residue along a pole is not constant")
            if lam is not None and lam != cand:
                raise LogFormError("inconsistent residues")
            lam = cand
        out.append(lam)
    return out


def parse_log_factors(items) -> list[tuple[Poly, GaussianRational]]:
    """Factor/residue pairs from JSON: [["x", "1"], ["y", "-1/2"]] or [{"f": ..., "residue": ...}]."""
    from .parser import parse_poly, parse_scalar

    out = []
    for item in items:
        if isinstance(item, dict):
            f, lam = item["f"], item["residue"]
        else:
            f, lam = item
        out.append((parse_poly(str(f)), parse_scalar(str(lam))))
    return out
