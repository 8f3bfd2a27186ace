"""Sparse multivariate polynomials over an exact field.

The coefficient field is Q(i) by default (``GaussianRational``); any object
with field arithmetic, ``__bool__`` and ``__eq__`` also works, which is how
number-field coefficients flow through the blow-up machinery.

Variable layouts used across the package:

* 1 variable: ``t`` (univariate helpers, number-field moduli)
* 2 variables: ``(z1, z2)`` a.k.a. ``(x, y)``, holomorphic data
* 4 variables: ``(z1, conj(z1), z2, conj(z2))``, real-analytic data
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .gaussian import GaussianRational

Exps = tuple


def _coerce(c):
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    if isinstance(c, complex):
        raise TypeError("floating complex coefficients are not exact")
    return c


def grlex_key(e: Exps):
    return (sum(e), e)


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int = 2):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = _coerce(c)
            if c:
                clean[e] = clean[e] + c if e in clean else c
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 2) -> "Poly":
        return cls._make(nvars, {})

    @classmethod
    def one(cls, nvars: int = 2) -> "Poly":
        return cls.constant(1, nvars)

    @classmethod
    def constant(cls, c, nvars: int = 2) -> "Poly":
        c = _coerce(c)
        return cls._make(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, i: int, nvars: int = 2) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, {tuple(e): GaussianRational(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls({tuple(exps): c}, nvars=len(exps))

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, GaussianRational(0))

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), GaussianRational(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Lowest total degree among the terms (order of vanishing at 0)."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def order_in(self, i: int) -> int:
        """Largest power of variable i dividing the polynomial."""
        return min((e[i] for e in self.terms), default=0)

    def sorted_terms(self) -> list:
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._make(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self, d: int) -> bool:
        return bool(self.terms) and all(sum(e) == d for e in self.terms)

    # -- arithmetic -----------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return Poly._make(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _coerce(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._make(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    s = out[e] + v
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                else:
                    out[e] = v
        return Poly._make(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exquo(other)
        c = _coerce(other)
        return Poly._make(self.nvars, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {(0,) * self.nvars: c}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Poly._make(self.nvars, out)

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute variable j by ``images[j]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not self.terms:
            return Poly.zero(images[0].nvars if images else 0)
        target = images[0].nvars
        cache: dict = {}

        def power(j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = images[j] ** k
            return cache[key]

        result = Poly.zero(target)
        for e, c in self.terms.items():
            term = Poly.constant(c, target)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            result = result + term
        return result

    def evaluate(self, point: Sequence):
        """Exact evaluation at a point with field coordinates."""
        total = GaussianRational(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = v + total
        return total

    def restrict(self, i: int, value) -> "Poly":
        """Set variable i to a constant, keeping the variable count."""
        value = _coerce(value)
        out: dict = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1:]
            v = c * value ** e[i] if e[i] else c
            if e2 in out:
                s = out[e2] + v
                if s:
                    out[e2] = s
                else:
                    del out[e2]
            elif v:
                out[e2] = v
        return Poly._make(self.nvars, out)

    def translate(self, shifts: Sequence) -> "Poly":
        """Substitute variable j by (variable j + shifts[j])."""
        images = []
        for j, s in enumerate(shifts):
            v = Poly.variable(j, self.nvars)
            images.append(v + s if s else v)
        return self.compose(images)

    def permute(self, perm: Sequence[int]) -> "Poly":
        """New polynomial whose variable ``perm[j]`` carries old variable j."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for j, k in enumerate(e):
                e2[perm[j]] = k
            out[tuple(e2)] = c
        return Poly._make(self.nvars, out)

    def map_coeffs(self, f: Callable) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            v = _coerce(f(c))
            if v:
                out[e] = v
        return Poly._make(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Move variable j to slot ``positions[j]`` of a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for j, k in enumerate(e):
                e2[positions[j]] += k
            out[tuple(e2)] = c
        return Poly._make(nvars, out)

    def conjugate(self) -> "Poly":
        """Formal conjugation on the 4-variable layout: z_j <-> conj(z_j), scalars conjugated."""
        if self.nvars != 4:
            raise ValueError("conjugation is defined on the (z1, conj z1, z2, conj z2) layout only")
        out = {}
        for e, c in self.terms.items():
            out[(e[1], e[0], e[3], e[2])] = c.conjugate()
        return Poly._make(4, out)

    def conjugate_coefficients(self) -> "Poly":
        return Poly._make(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    # -- division -------------------------------------------------------
    def divmod(self, g: "Poly"):
        """Division by a single polynomial in graded-lex order."""
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        ge, gc = g.leading_term()
        p = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while p:
            e = max(p, key=grlex_key)
            c = p[e]
            if all(a >= b for a, b in zip(e, ge)):
                qe = tuple(a - b for a, b in zip(e, ge))
                qc = c / gc
                q[qe] = q[qe] + qc if qe in q else qc
                for e2, c2 in g.terms.items():
                    t = tuple(a + b for a, b in zip(qe, e2))
                    v = p.get(t)
                    v = -(qc * c2) if v is None else v - qc * c2
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
            else:
                r[e] = c
                del p[e]
        q = {e: c for e, c in q.items() if c}
        return Poly._make(self.nvars, q), Poly._make(self.nvars, r)

    def exquo(self, g: "Poly") -> "Poly":
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("polynomial is not exactly divisible")
        return q

    def divides(self, f: "Poly") -> bool:
        return not f.divmod(self)[1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self / c

    # -- numerics -------------------------------------------------------
    def to_numeric(self) -> Callable:
        """Vectorized complex evaluator ``f(*coords)``."""
        items = [(e, complex(c)) for e, c in self.terms.items()]

        def f(*xs):
            xs = [np.asarray(x, dtype=complex) for x in xs]
            shape = np.broadcast(*xs).shape if xs else ()
            out = np.zeros(shape, dtype=complex)
            for e, c in items:
                t = c
                for x, k in zip(xs, e):
                    if k:
                        t = t * x ** k
                out = out + t
            return out

        return f

    def __repr__(self):
        return f"Poly({self}, nvars={self.nvars})"

    def __str__(self):
        from ..parser import format_poly

        return format_poly(self)


# -- univariate views -------------------------------------------------------

def as_univariate(f: Poly, v: int) -> dict:
    """Coefficients of f as a polynomial in variable v (each free of v)."""
    parts: dict = {}
    for e, c in f.terms.items():
        e2 = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(e[v], {})[e2] = c
    return {d: Poly._make(f.nvars, t) for d, t in parts.items()}


def _lc_in(f: Poly, v: int):
    d = f.degree_in(v)
    return d, as_univariate(f, v)[d]


def _var_power(v: int, k: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[v] = k
    return Poly._make(nvars, {tuple(e): GaussianRational(1)})


def prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b with respect to variable v."""
    db, lb = _lc_in(b, v)
    r = a
    while r and r.degree_in(v) >= db:
        dr, lr = _lc_in(r, v)
        r = lb * r - lr * _var_power(v, dr - db, a.nvars) * b
    return r


def _content(f: Poly, v: int) -> Poly:
    parts = list(as_univariate(f, v).values())
    c = parts[0].monic()
    for p in parts[1:]:
        if c.is_constant():
            break
        c = _gcd(c, p, v + 1).monic()
    return c


def content(f: Poly, v: int) -> Poly:
    """Gcd of the coefficients of f viewed as a polynomial in variable v."""
    if not f:
        return f
    return _content(f, v)


def _gcd(f: Poly, g: Poly, v: int) -> Poly:
    n = f.nvars
    while v < n and f.degree_in(v) <= 0 and g.degree_in(v) <= 0:
        v += 1
    if v == n:
        return Poly.one(n)
    cf, cg = _content(f, v), _content(g, v)
    a, b = f.exquo(cf), g.exquo(cg)
    c = _gcd(cf, cg, v + 1)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while b:
        if b.degree_in(v) == 0:
            return c
        r = prem(a, b, v)
        # monic keeps field coefficients from blowing up in the innermost variable
        a, b = b, (r.exquo(_content(r, v)).monic() if r else r)
    return c * a


def gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, normalized to leading coefficient 1.

    Recursive content / primitive-part scheme with primitive pseudo-remainder
    sequences; works over any exact coefficient field.
    """
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    return _gcd(f, g, 0).monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    polys = list(polys)
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant() and g:
            break
        g = gcd(g, p)
    return g.monic()


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors (characteristic zero)."""
    g = f
    for v in range(f.nvars):
        if f.degree_in(v) > 0:
            g = gcd(g, f.diff(v))
    return f.exquo(g).monic() if g else f


# -- univariate (nvars == 1) helpers -----------------------------------------

def poly1(coeffs: Sequence, var_degree_ascending: bool = True) -> Poly:
    """Univariate polynomial from a coefficient list, constant term first."""
    items = list(coeffs) if var_degree_ascending else list(reversed(list(coeffs)))
    return Poly({(k,): c for k, c in enumerate(items)}, nvars=1)


def coeffs1(f: Poly) -> list:
    """Dense coefficients of a univariate polynomial, constant term first."""
    d = f.degree_in(0)
    return [f.terms.get((k,), GaussianRational(0)) for k in range(d + 1)]


def ext_gcd1(a: Poly, b: Poly):
    """Extended Euclid in K[t]: returns (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.one(1), Poly.zero(1)
    t0, t1 = Poly.zero(1), Poly.one(1)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    _, lc = r0.leading_term()
    return r0 / lc, s0 / lc, t0 / lc


def order_at_zero1(f: Poly) -> int:
    return f.order_in(0) if f else -1


def intersection_multiplicity(F: Poly, G: Poly) -> float | int:
    """Local intersection number of two plane curves at the origin (Fulton's algorithm).

    Returns ``math.inf`` when the curves share a component through the origin.
    """
    import math

    if F.nvars != 2 or G.nvars != 2:
        raise ValueError("intersection multiplicity is for bivariate polynomials")
    y = Poly.variable(1, 2)
    total = 0
    while True:
        if not F or not G:
            return math.inf
        if F.constant_term() or G.constant_term():
            return total
        F0, G0 = F.restrict(1, 0), G.restrict(1, 0)
        if not F0 and not G0:
            return math.inf
        if not F0:
            F, G, F0, G0 = G, F, G0, F0
        if not G0:
            # G = y H, and I(F, y) is the order of F(x, 0) at x = 0
            total += F0.order_in(0)
            G = G.exquo(y)
            continue
        r, s = F0.degree_in(0), G0.degree_in(0)
        if r > s:
            F, G, F0, G0, r, s = G, F, G0, F0, s, r
        lf = F0.terms[(r, 0)]
        lg = G0.terms[(s, 0)]
        G = G - F * _var_power(0, s - r, 2) * (lg / lf)
