import cmath
from fractions import Fraction

import pytest

from pfaffian.algebra import GaussianRational as G, Poly
from pfaffian.classify import (
    ELLIPTIC_NEG,
    ELLIPTIC_POS,
    HYPERBOLIC,
    NON_SIMPLE,
    REGULAR,
    RESONANT,
    SADDLE_NODE,
    ClassificationError,
    LinearPart,
    camacho_sad_axis,
    camacho_sad_index,
    classify_singularity,
    extract_saddle_node_invariants,
    linear_part,
    ratio_minimal_poly,
    recognize_normal_form,
)
from pfaffian.parser import parse_oneform as F


def _diag(a, b):
    return LinearPart(((G(a), G(0)), (G(0), G(b))))


def _roots(p: Poly):
    a, b, c = (complex(p.coeff((j,))) for j in (2, 1, 0))
    d = cmath.sqrt(b * b - 4 * a * c)
    return sorted([(-b + d) / (2 * a), (-b - d) / (2 * a)], key=lambda z: (z.real, z.imag))


def test_linear_part_of_diagonal_form():
    lp = linear_part(F("y*dx - 3*x*dy"))
    assert lp.matrix == ((-3, 0), (0, -1))
    assert linear_part(F("y*dx + x*dy")).matrix == ((1, 0), (0, -1))


def test_linear_part_at_regular_point():
    with pytest.raises(ClassificationError):
        linear_part(F("dx + y*dy"))


def test_saddle_node_linear_part_has_one_zero_eigenvalue():
    lp = linear_part(F("x*(1+y)*dy - y^2*dx"))
    assert lp.det == 0 and lp.trace != 0


@pytest.mark.parametrize("diag, expected", [
    ((-2, -1), {(2,): 2, (1,): -5, (0,): 2}),
    ((1, -1), {(2,): -1, (1,): -2, (0,): -1}),
])
def test_ratio_polynomial(diag, expected):
    assert ratio_minimal_poly(_diag(*diag)) == Poly(expected, nvars=1)


def test_ratio_polynomial_roots_are_ratio_and_inverse():
    # oracle: eigenvalues 2 and 1 directly
    assert _roots(ratio_minimal_poly(_diag(-2, -1))) == pytest.approx([0.5, 2.0])
    assert _roots(ratio_minimal_poly(_diag(5, 5))) == pytest.approx([1.0, 1.0])


def test_ratio_polynomial_needs_nonzero_det():
    with pytest.raises(ClassificationError):
        ratio_minimal_poly(_diag(1, 0))


@pytest.mark.parametrize("src, tag, label", [
    ("y*dx + x*dy", RESONANT, "SimpleResonant(1,1)"),
    ("y*dx - i*x*dy", HYPERBOLIC, "SimpleHyperbolic"),
    ("y*dx - (2+i)*x*dy", HYPERBOLIC, "SimpleHyperbolic"),
    ("y*dx - 2*x*dy", NON_SIMPLE, "NonSimple"),
    ("y*dx - x*dy", NON_SIMPLE, "NonSimple"),
    ("y*dx + 2*x*dy", RESONANT, "SimpleResonant(2,1)"),
    ("3*y*dx + 2*x*dy", RESONANT, "SimpleResonant(2,3)"),
    ("x*(1+(1/2)*y)*dy - y^2*dx", SADDLE_NODE, "SaddleNode(1,1/2)"),
    ("x*dy - y^3*dx", SADDLE_NODE, "SaddleNode(2,0)"),
    ("y*dy - x^2*dx", NON_SIMPLE, "NonSimple"),
    ("dx", REGULAR, "Regular"),
])
def test_classification_table(src, tag, label):
    cls = classify_singularity(F(src))
    assert cls.tag == tag and cls.label == label


def test_elliptic_negative_from_trace_and_det():
    # X = B d/dx - A d/dy with B = x + y, A = x: trace 1, det -1, ratio polynomial -r^2 - 3r - 1
    cls = classify_singularity(F("-x*dx + (x+y)*dy"))
    assert cls.linear.trace == 1 and cls.linear.det == -1
    assert cls.tag == ELLIPTIC_NEG
    lam = complex(cls.multiplier.approx)
    assert lam.real == pytest.approx((-3 - 5 ** 0.5) / 2, abs=1e-12)
    assert cls.multiplier.minpoly == (Fraction(1), Fraction(3), Fraction(1))


def test_elliptic_positive():
    # X = (x + y) d/dx + (x + 2y) d/dy: trace 3, det 1, roots (7 +- 3 sqrt 5)/2 > 0 irrational
    cls = classify_singularity(F("-(x + 2*y)*dx + (x + y)*dy"))
    assert cls.linear.trace == 3 and cls.linear.det == 1
    assert cls.tag == ELLIPTIC_POS
    assert complex(cls.multiplier.approx).real == pytest.approx((7 + 3 * 5 ** 0.5) / 2, abs=1e-12)


def test_rational_positive_ratio_is_not_simple():
    # X = 2x d/dx + (x + y) d/dy: eigenvalues 2 and 1
    assert classify_singularity(F("-(x + y)*dx + (2*x)*dy")).tag == NON_SIMPLE


def test_reality_of_purely_imaginary_ratio():
    # lambda = i has s = lambda + 1/lambda = 0 real, yet lambda is not real
    assert classify_singularity(F("y*dx - i*x*dy")).tag == HYPERBOLIC


def test_saddle_node_invariants():
    assert extract_saddle_node_invariants(F("x*(1+(1/2)*y)*dy - y^2*dx")) == (1, Fraction(1, 2))
    assert extract_saddle_node_invariants(F("x*dy - y^3*dx")) == (2, 0)
    k, diag = extract_saddle_node_invariants(F("x*(1+y+x*y)*dy - y^2*dx"))
    assert k is None and "normal form" in diag
    with pytest.raises(ClassificationError):
        extract_saddle_node_invariants(F("y*dx + x*dy"))


def test_saddle_node_axis_swap():
    cls = classify_singularity(F("y*(1+(1/2)*x)*dx - x^2*dy"))
    assert cls.tag == SADDLE_NODE and cls.k == 1 and cls.mu == Fraction(1, 2)
    assert cls.normal_form.swapped


def test_saddle_node_milnor_number():
    for k in (1, 2, 3):
        cls = classify_singularity(F(f"x*dy - y^{k + 1}*dx"))
        assert cls.milnor == k + 1


def test_camacho_sad_indices():
    res = classify_singularity(F("y*dx + x*dy"))
    assert camacho_sad_index(res, "x-axis") == -1
    assert camacho_sad_index(res, "y-axis") == -1
    sn = classify_singularity(F("x*(1+(1/2)*y)*dy - y^2*dx"))
    assert camacho_sad_index(sn, "y-axis") == Fraction(1, 2)  # weak separatrix {x = 0}
    with pytest.raises(ClassificationError):
        camacho_sad_index(classify_singularity(F("y*dx - 2*x*dy")), "x-axis")


def test_camacho_sad_resonant_normal_form():
    # p = 2, q = 3, k = 1, mu = 1/2: index along {y = 0} is -p/q
    eta = F("2*y*(1 - (1/2)*x^2*y^3)*dx + 3*x*(1 + (1/2)*x^2*y^3)*dy")
    assert camacho_sad_axis(eta, "x-axis") == Fraction(-2, 3)
    nf = recognize_normal_form(eta)
    assert nf.kind == "resonant" and (nf.p, nf.q, nf.k, nf.mu) == (2, 3, 1, Fraction(1, 2))


def test_camacho_sad_sum_on_a_line():
    # for y dx - l x dy the two indices are l and 1/l
    eta = F("y*dx - (1/3 + i)*x*dy")
    lam = G(Fraction(1, 3), 1)
    assert camacho_sad_axis(eta, "y-axis") * camacho_sad_axis(eta, "x-axis") == 1
    assert lam in (camacho_sad_axis(eta, "y-axis"), camacho_sad_axis(eta, "x-axis"))


def test_serialization_uses_exact_strings():
    d = classify_singularity(F("x*(1+(1/2)*y)*dy - y^2*dx")).to_dict()
    assert d["mu"] == "1/2" and d["label"] == "SaddleNode(1,1/2)"
