"""Polynomial differential forms on C^2 = R^4.

Real-analytic forms use the frame dz1 < dconj(z1) < dz2 < dconj(z2), indexed
0..3 to match the variable layout of 4-variable polynomials.  Holomorphic
1-forms A dx + B dy keep bivariate coefficients.
"""

from __future__ import annotations

from typing import Mapping

from .gaussian import I
from .poly import Poly, gcd

# frame index -> index of its conjugate
_CONJ_FRAME = (1, 0, 3, 2)
# holomorphic (x, y) -> slots in the 4-variable layout
_HOLO_SLOTS = (0, 2)


class FormDegreeError(ValueError):
    pass


def _sort_sign(idx: tuple):
    """Sort a frame index tuple; return (sorted, sign) or (None, 0) on repetition."""
    if len(set(idx)) != len(idx):
        return None, 0
    arr = list(idx)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return tuple(arr), sign


class RealPForm:
    """A p-form sum_I c_I dz_I with 4-variable polynomial coefficients."""

    __slots__ = ("degree", "terms", "real")

    def __init__(self, degree: int, terms: Mapping[tuple, Poly] | None = None, real: bool = False):
        if not 0 <= degree <= 4:
            raise FormDegreeError(f"form degree {degree} outside 0..4")
        clean: dict = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise FormDegreeError(f"frame element {idx} does not have degree {degree}")
            if not isinstance(c, Poly):
                c = Poly.constant(c, 4)
            if c.nvars != 4:
                raise ValueError("form coefficients must be 4-variable polynomials")
            s, sign = _sort_sign(idx)
            if s is None:
                continue
            c = c if sign > 0 else -c
            clean[s] = clean[s] + c if s in clean else c
            if not clean[s]:
                del clean[s]
        self.degree = degree
        self.terms = clean
        self.real = real
        if real and not self.is_real():
            raise ValueError("form flagged real is not equal to its conjugate")

    @classmethod
    def zero(cls, degree: int) -> "RealPForm":
        return cls(degree)

    @classmethod
    def function(cls, p: Poly) -> "RealPForm":
        return cls(0, {(): p})

    @classmethod
    def frame(cls, j: int) -> "RealPForm":
        return cls(1, {(j,): Poly.one(4)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, idx: tuple) -> Poly:
        return self.terms.get(tuple(idx), Poly.zero(4))

    def _check(self, other: "RealPForm"):
        if not isinstance(other, RealPForm):
            raise TypeError("expected a RealPForm")
        if other.degree != self.degree:
            raise FormDegreeError("adding forms of different degrees")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return RealPForm(self.degree, out)

    def __neg__(self):
        return RealPForm(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        """Multiply by a scalar or a 0-form coefficient polynomial."""
        if isinstance(s, RealPForm):
            return wedge(self, s)
        return RealPForm(self.degree, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return RealPForm(self.degree, {k: c / s for k, c in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, RealPForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def conjugate(self) -> "RealPForm":
        out = {}
        for idx, c in self.terms.items():
            out[tuple(_CONJ_FRAME[j] for j in idx)] = c.conjugate()
        return RealPForm(self.degree, out, real=self.real)

    def is_real(self) -> bool:
        return self.terms == self.conjugate_terms()

    def conjugate_terms(self) -> dict:
        out = {}
        for idx, c in self.terms.items():
            s, sign = _sort_sign(tuple(_CONJ_FRAME[j] for j in idx))
            out[s] = c.conjugate() if sign > 0 else -c.conjugate()
        return out

    def as_real(self) -> "RealPForm":
        return RealPForm(self.degree, self.terms, real=True)

    def holomorphic_part(self) -> "RealPForm":
        """Terms whose frame uses only dz1, dz2."""
        return RealPForm(self.degree, {k: c for k, c in self.terms.items() if all(j in (0, 2) for j in k)})

    def map_coeffs(self, f) -> "RealPForm":
        return RealPForm(self.degree, {k: f(c) for k, c in self.terms.items()})

    def __repr__(self):
        return f"RealPForm({self})"

    def __str__(self):
        from ..parser import format_form

        return format_form(self)


def wedge(f: RealPForm, g: RealPForm) -> RealPForm:
    if f.degree + g.degree > 4:
        raise FormDegreeError(f"wedge of degrees {f.degree} and {g.degree} exceeds 4")
    out: dict = {}
    for i1, c1 in f.terms.items():
        for i2, c2 in g.terms.items():
            s, sign = _sort_sign(i1 + i2)
            if s is None:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            out[s] = out[s] + c if s in out else c
    return RealPForm(f.degree + g.degree, {k: c for k, c in out.items() if c})


def exterior_derivative(f: RealPForm) -> RealPForm:
    """Formal d, with z1, conj(z1), z2, conj(z2) as independent variables."""
    if f.degree >= 4:
        raise FormDegreeError("exterior derivative of a 4-form")
    out: dict = {}
    for idx, c in f.terms.items():
        for j in range(4):
            if j in idx:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            s, sign = _sort_sign((j,) + idx)
            v = dc if sign > 0 else -dc
            out[s] = out[s] + v if s in out else v
    return RealPForm(f.degree + 1, {k: c for k, c in out.items() if c})


class HoloOneForm:
    """A dx + B dy with bivariate polynomial coefficients."""

    __slots__ = ("a", "b", "primitive")

    def __init__(self, a: Poly, b: Poly, primitive: bool = False):
        a = a if isinstance(a, Poly) else Poly.constant(a, 2)
        b = b if isinstance(b, Poly) else Poly.constant(b, 2)
        if a.nvars != 2 or b.nvars != 2:
            raise ValueError("holomorphic form coefficients must be bivariate")
        self.a = a
        self.b = b
        self.primitive = primitive
        if primitive and not gcd(a, b).is_constant():
            raise ValueError("form flagged primitive has a nontrivial common factor")

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __eq__(self, other):
        if not isinstance(other, HoloOneForm):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other: "HoloOneForm"):
        return HoloOneForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "HoloOneForm"):
        return HoloOneForm(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return HoloOneForm(-self.a, -self.b, self.primitive)

    def __mul__(self, s):
        return HoloOneForm(self.a * s, self.b * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return HoloOneForm(self.a / s, self.b / s)

    def is_singular_at_origin(self) -> bool:
        return not self.a.constant_term() and not self.b.constant_term()

    def swap(self) -> "HoloOneForm":
        """Exchange the roles of x and y."""
        return HoloOneForm(self.b.permute((1, 0)), self.a.permute((1, 0)), self.primitive)

    def translate(self, center) -> "HoloOneForm":
        return HoloOneForm(self.a.translate(center), self.b.translate(center), self.primitive)

    def d(self) -> Poly:
        """Coefficient of dx^dy in the exterior derivative."""
        return self.b.diff(0) - self.a.diff(1)

    def is_closed(self) -> bool:
        return not self.d()

    def to_real(self) -> RealPForm:
        """The same form viewed in the real 4-variable frame."""
        a4 = self.a.embed(4, _HOLO_SLOTS)
        b4 = self.b.embed(4, _HOLO_SLOTS)
        return RealPForm(1, {(0,): a4, (2,): b4})

    def __repr__(self):
        return f"HoloOneForm({self})"

    def __str__(self):
        from ..parser import format_form

        return format_form(self)


def primitive_part(f: HoloOneForm):
    """Split off the gcd of the coefficients: returns (f / g, g) with g monic."""
    if f.is_zero():
        raise ValueError("primitive part of the zero form")
    g = gcd(f.a, f.b)
    return HoloOneForm(f.a.exquo(g), f.b.exquo(g), primitive=True), g


def realify(h: HoloOneForm):
    """(Re h, Im h) as real forms: ((h + conj h)/2, (h - conj h)/(2i))."""
    eta = h.to_real()
    bar = eta.conjugate()
    re = (eta + bar) / 2
    im = (eta - bar) / (2 * I)
    return RealPForm(1, re.terms, real=True), RealPForm(1, im.terms, real=True)


def sharp(omega: RealPForm) -> RealPForm:
    """The companion form: -i (dz part) + i (dconj z part) of a real 1-form."""
    if omega.degree != 1:
        raise FormDegreeError("companion form is defined for 1-forms")
    out = {}
    for (j,), c in omega.terms.items():
        out[(j,)] = c * (-I if j in (0, 2) else I)
    return RealPForm(1, out)


class MeroOneForm:
    """numerator / denominator, kept as a single fraction; cancellation is explicit."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator: Poly):
        if not denominator:
            raise ZeroDivisionError("meromorphic form with zero denominator")
        if isinstance(numerator, HoloOneForm) and denominator.nvars != 2:
            raise ValueError("holomorphic numerator needs a bivariate denominator")
        if isinstance(numerator, RealPForm) and denominator.nvars != 4:
            raise ValueError("real numerator needs a 4-variable denominator")
        self.numerator = numerator
        self.denominator = denominator

    def _coeffs(self) -> list:
        if isinstance(self.numerator, HoloOneForm):
            return [self.numerator.a, self.numerator.b]
        return list(self.numerator.terms.values())

    def cancel(self) -> "MeroOneForm":
        g = self.denominator
        for c in self._coeffs():
            g = gcd(g, c)
        _, lc = self.denominator.leading_term()
        g = g * lc  # keep the denominator monic after division
        if isinstance(self.numerator, HoloOneForm):
            num = HoloOneForm(self.numerator.a.exquo(g), self.numerator.b.exquo(g))
        else:
            num = RealPForm(self.numerator.degree, {k: c.exquo(g) for k, c in self.numerator.terms.items()})
        return MeroOneForm(num, self.denominator.exquo(g))

    def d_numerator(self):
        """Numerator of d(N/D) over D^2, namely D dN - dD ^ N.

        Holomorphic case: the dx^dy coefficient (a bivariate polynomial).
        Real case: a 2-form.
        """
        D = self.denominator
        if isinstance(self.numerator, HoloOneForm):
            n = self.numerator
            return D * n.d() - (D.diff(0) * n.b - D.diff(1) * n.a)
        dD = exterior_derivative(RealPForm.function(D))
        return exterior_derivative(self.numerator) * D - wedge(dD, self.numerator)

    def is_closed(self) -> bool:
        return not self.d_numerator()

    def __str__(self):
        from ..parser import format_poly

        return f"({self.numerator}) / ({format_poly(self.denominator)})"
