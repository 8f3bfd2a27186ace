"""Simple algebraic extensions K = Q(i)[a]/(phi(a)) with a fixed complex embedding."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .gaussian import GaussianRational
from .poly import Poly, coeffs1, ext_gcd1

_DPS = 60


class NumberField:
    """Q(i)(a) where a is the root of an irreducible ``phi`` closest to ``approx``."""

    def __init__(self, modulus: Poly, approx: complex, name: str = "a"):
        if modulus.nvars != 1 or modulus.degree_in(0) < 2:
            raise ValueError("number field modulus must be univariate of degree >= 2")
        self.modulus = modulus.monic()
        self.degree = self.modulus.degree_in(0)
        self.name = name
        self.root = _polish_root(self.modulus, approx)

    @property
    def gen(self) -> "NFElement":
        return NFElement(self, Poly.variable(0, 1))

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field is not self:
                raise ValueError("element belongs to a different number field")
            return value
        if isinstance(value, Poly):
            return NFElement(self, value)
        return NFElement(self, Poly.constant(value, 1))

    def __repr__(self):
        from ..parser import format_poly

        return f"NumberField({format_poly(self.modulus, names=(self.name,))} = 0, {self.name} ~ {complex(self.root):.12g})"


def _polish_root(phi: Poly, approx: complex):
    cs = [complex(c) for c in coeffs1(phi)]
    with mpmath.workdps(_DPS):
        f = lambda z: mpmath.polyval(cs[::-1], z)
        return mpmath.findroot(f, mpmath.mpc(approx))


class NFElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: NumberField, poly: Poly):
        if poly.degree_in(0) >= field.degree:
            poly = poly.divmod(field.modulus)[1]
        self.field = field
        self.poly = poly

    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field:
                raise ValueError("mixing elements of different number fields")
            return other.poly
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Poly.constant(other, 1)
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else NFElement(self.field, self.poly + o)

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, -self.poly)

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else NFElement(self.field, self.poly - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else NFElement(self.field, o - self.poly)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else NFElement(self.field, self.poly * o)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self.poly:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = ext_gcd1(self.poly, self.field.modulus)
        if g.degree_in(0) != 0:
            raise ArithmeticError("modulus is reducible: zero divisor found")
        return NFElement(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, NFElement):
            return self * other.inverse()
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, self.poly / o.constant_term())

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else NFElement(self.field, o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = NFElement(self.field, Poly.one(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.poly == o

    def __hash__(self):
        if self.poly.is_constant():
            return hash(self.poly.constant_term())
        return hash((id(self.field), self.poly))

    def as_gaussian(self) -> GaussianRational | None:
        """The element as a Gaussian rational when it lies in Q(i), else None."""
        return self.poly.constant_term() if self.poly.is_constant() else None

    def conjugate(self):
        g = self.as_gaussian()
        if g is None:
            raise ArithmeticError("complex conjugation does not preserve a generic number field")
        return g.conjugate()

    def to_mpc(self):
        with mpmath.workdps(_DPS):
            z = mpmath.mpc(0)
            for (k,), c in self.poly.terms.items():
                z += (mpmath.mpf(c.re.numerator) / c.re.denominator
                      + 1j * (mpmath.mpf(c.im.numerator) / c.im.denominator)) * self.field.root ** k
            return z

    def __complex__(self):
        return complex(self.to_mpc())

    def __str__(self):
        from ..parser import format_poly

        if self.poly.is_constant():
            return str(self.poly.constant_term())
        return f"({format_poly(self.poly, names=(self.field.name,))})"

    def __repr__(self):
        return f"NFElement{self}"
