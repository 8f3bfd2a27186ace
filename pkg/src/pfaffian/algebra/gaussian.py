"""Exact Gaussian rationals, elements of Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


class GaussianRational:
    """a + b*i with a, b arbitrary-precision rationals.

    Instances are immutable. ``GaussianRational(3) == 3`` and the two hash
    identically, so plain ints and Fractions can be mixed in freely.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; use GaussianRational(re, im)")
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse strings such as ``"3/2+1/2*i"``, ``"-i"`` or ``"7"``."""
        from ..parser import parse_scalar

        return parse_scalar(text)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- conversion -----------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_fraction(self) -> Fraction:
        if self.im != 0:
            raise ValueError(f"{self} is not rational")
        return self.re

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)


def format_gaussian(z: GaussianRational) -> str:
    """Canonical text form, e.g. ``3/2+1/2*i``; parseable by the form parser."""
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    if im == 1:
        ipart = "i"
    elif im == -1:
        ipart = "-i"
    else:
        ipart = f"{im}*i"
    if re == 0:
        return ipart
    sign = "" if ipart.startswith("-") else "+"
    return f"{re}{sign}{ipart}"


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def fraction_sqrt_exact(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt_exact(z: GaussianRational) -> GaussianRational | None:
    """A square root of z inside Q(i), or None if z is not a square there.

    The root returned has positive real part, or nonnegative imaginary part
    when the real part is zero.
    """
    if z.is_zero():
        return ZERO
    modulus = fraction_sqrt_exact(z.norm())
    if modulus is None:
        return None
    x = fraction_sqrt_exact((modulus + z.re) / 2)
    y = fraction_sqrt_exact((modulus - z.re) / 2)
    if x is None or y is None:
        return None
    if z.im < 0:
        y = -y
    root = GaussianRational(x, y)
    if root.re < 0 or (root.re == 0 and root.im < 0):
        root = -root
    assert root * root == z
    return root
