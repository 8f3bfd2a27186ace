from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfaffian.algebra import GaussianRational as G, NumberField, Poly, gcd
from pfaffian.algebra.algebraic import from_gaussian, from_nf, from_rational_poly
from pfaffian.algebra.gaussian import fraction_sqrt_exact, gaussian_sqrt_exact
from pfaffian.algebra.poly import intersection_multiplicity, squarefree_part
from pfaffian.parser import parse_poly as P

I = G(0, 1)


# -- Gaussian rationals --------------------------------------------------------

def test_gaussian_field_arithmetic():
    assert (1 + I) * (1 - I) == 2
    assert (2 + I).inverse() * (2 + I) == 1
    assert (G(3, 4) / G(0, 2)) == G(2, Fraction(-3, 2))
    assert G(1, 1).conjugate() == G(1, -1)
    assert G(3) == 3 and hash(G(3)) == hash(3)


def test_gaussian_string_round_trip():
    z = G(Fraction(3, 2), Fraction(1, 2))
    assert str(z) == "3/2+1/2*i"
    assert G.parse(str(z)) == z
    assert G.parse("-i") == -I


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        G(0).inverse()


def test_exact_square_roots():
    assert fraction_sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert fraction_sqrt_exact(Fraction(2)) is None
    r = gaussian_sqrt_exact(G(0, 2))  # (1+i)^2 = 2i
    assert r is not None and r * r == G(0, 2)
    assert gaussian_sqrt_exact(G(0, 1)) is None


# -- polynomials ---------------------------------------------------------------

def test_polynomial_gcd_and_division():
    f, g = P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")
    assert gcd(f, g) == P("x + y")
    assert f.exquo(P("x - y")) == P("x + y")
    q, r = P("x^3 + y").divmod(P("x"))
    assert q * P("x") + r == P("x^3 + y")
    assert gcd(P("x*y"), P("x + 1")) == 1


def test_gcd_over_gaussian_integers():
    f = P("(x + i*y)^2 * (x - 1)")
    g = P("(x + i*y) * (y + 2)")
    assert gcd(f, g) == P("x + i*y")


def test_squarefree_part():
    assert squarefree_part(P("x^3*(y+1)^2")) == P("x*(y+1)")


def test_compose_and_translate():
    f = P("x^2*y")
    assert f.compose([P("x"), P("x*y")]) == P("x^3*y")
    assert f.translate((G(1), G(0))) == P("(x+1)^2*y")


@pytest.mark.parametrize("f, g, expected", [
    ("y^2", "x*(1+y)", 2),
    ("y^2 - x^3", "y", 3),
    ("y^2 - x^3", "y^2 - x^3 + x^4", 8),
    ("x", "x", float("inf")),
    ("x + 1", "y", 0),
])
def test_intersection_multiplicity(f, g, expected):
    assert intersection_multiplicity(P(f), P(g)) == expected


small = st.integers(min_value=-3, max_value=3)


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = (draw(st.integers(0, 2)), draw(st.integers(0, 2)))
        terms[e] = G(draw(small), draw(small))
    return Poly(terms, nvars=2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_gcd_divides_both(a, b):
    if not a and not b:
        return
    g = gcd(a, b)
    assert g.divides(a) and g.divides(b)


# -- number fields and algebraic numbers -----------------------------------------

def test_number_field_arithmetic():
    K = NumberField(Poly({(2,): 1, (0,): -2}, nvars=1), 1.4)
    a = K.gen
    assert a * a == K(2)
    assert (a + 1) * (a - 1) == K(1)
    inv = (a + 1).inverse()
    assert inv * (a + 1) == K(1)
    assert abs(complex(a) - 2 ** 0.5) < 1e-15


def test_number_field_root_selection():
    K = NumberField(Poly({(2,): 1, (0,): 1}, nvars=1), -1j)
    assert abs(complex(K.gen) + 1j) < 1e-15


def test_algebraic_number_sqrt2():
    a = from_rational_poly([Fraction(-2), Fraction(0), Fraction(1)], 1.41)
    assert a.degree == 2 and a.is_real()
    lo, hi = a.box[0], a.box[1]
    assert 0 < lo and lo * lo <= 2 <= hi * hi
    assert hi - lo < Fraction(1, 10 ** 6)
    assert a.sign() == 1


def test_algebraic_number_from_gaussian():
    z = from_gaussian(I)
    assert z.degree == 2 and not z.is_real()
    assert from_gaussian(G(Fraction(-1, 2))).as_fraction() == Fraction(-1, 2)


def test_algebraic_number_from_field_element():
    K = NumberField(Poly({(2,): 1, (0,): -3}, nvars=1), 1.7)
    x = from_nf(K.gen + 1)  # 1 + sqrt 3, minimal polynomial t^2 - 2t - 2
    assert x.minpoly == (Fraction(-2), Fraction(-2), Fraction(1))
    assert x.is_real()
