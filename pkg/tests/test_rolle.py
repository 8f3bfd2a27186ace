import math
from fractions import Fraction

import pytest

from pfaffian.algebra import GaussianRational as G, realify
from pfaffian.blowup import seidenberg_reduce
from pfaffian.holonomy import circle_samples, resonant_holonomy
from pfaffian.parser import parse_oneform as F
from pfaffian.rolle import (
    COMPATIBLE,
    INCOMPATIBLE,
    INCONCLUSIVE,
    GLOBAL_CAVEAT,
    first_integral_conservation,
    integrate_leaf,
    integrate_section_leaf,
    levi_integrability_check,
    log_magnitude_integral,
    nodal_separator_form,
    resonant_first_integral,
    rolle_verdict,
    saddle_node_first_integral,
    transversal_crossing_count,
    transversal_linear,
    transversal_saddle_node_strong,
    transversal_saddle_node_weak,
)
from pfaffian.parser import parse_poly as P


def verdict(src):
    return rolle_verdict(seidenberg_reduce(F(src)))


@pytest.mark.parametrize("src, outcome", [
    ("y*dx - i*x*dy", INCOMPATIBLE),
    ("y*dx + x*dy", COMPATIBLE),
    ("-x*dx + (x+y)*dy", COMPATIBLE),
    ("x*(1+(1/2)*y)*dy - y^2*dx", COMPATIBLE),
    ("x*(1+i*y)*dy - y^2*dx", INCOMPATIBLE),
    ("y*dx - x*dy", COMPATIBLE),
])
def test_verdict_table(src, outcome):
    v = verdict(src)
    assert v.outcome == outcome
    assert v.to_dict()["scope"] == GLOBAL_CAVEAT


def test_incompatible_reasons_are_tagged():
    assert verdict("y*dx - i*x*dy").reasons[0]["reason"] == "hyperbolic-exclusion"
    assert verdict("x*(1+i*y)*dy - y^2*dx").reasons[0]["reason"] == "saddle-node-nonreal-weak-multiplier"


def test_dicritical_annotation():
    v = verdict("y*dx - x*dy")
    assert v.dicritical and v.annotations[0].startswith("dicritical components [0]")


def test_unknown_normalizability_is_inconclusive():
    v = verdict("y*dx - 2*x*dy + x^3*dy")
    assert v.outcome == INCONCLUSIVE and v.unknowns
    v = verdict("x*(1+y+x*y)*dy - y^2*dx")
    assert v.outcome == INCONCLUSIVE


def test_closed_input_counts_as_normalizable():
    # the cusp form is exact, so every resonant leaf sits under a holomorphic first integral
    v = verdict("2*y*dy - 3*x^2*dx")
    assert v.outcome == COMPATIBLE
    assert any("first integral" in a for a in v.annotations)


# -- Levi-flat integrability ------------------------------------------------------

@pytest.mark.parametrize("lam", [Fraction(1, 2), 2])
@pytest.mark.parametrize("sign", [-1, 1])
def test_nodal_separator_is_levi_flat(lam, sign):
    omega = nodal_separator_form(lam, sign)
    assert omega.is_real()
    a, b = levi_integrability_check(omega)
    assert a.is_zero() and b.is_zero()


def test_twisted_form_is_not_levi_flat():
    w = F("dx + conj(x)*dy")
    omega = (w + w.conjugate()) / 2
    a, b = levi_integrability_check(omega)
    assert not a.is_zero() and not b.is_zero()


def test_real_part_of_holomorphic_form_is_always_levi_flat():
    # Re and Im of a holomorphic 1-form on C^2 always satisfy both identities
    for src in ("y*dx", "y*dx - i*x*dy", "x^2*dy + (1+i)*y*dx"):
        a, b = levi_integrability_check(realify(F(src))[0])
        assert a.is_zero() and b.is_zero()


def test_levi_check_rejects_nonreal_forms():
    with pytest.raises(ValueError):
        levi_integrability_check(F("x*dx", real=True))


# -- transversal sections --------------------------------------------------------

def spiral_crossings_oracle(r0: float, r_min: float, r_max: float) -> int:
    # leaves of z' = (1+i) z: r = r0 e^theta, meeting the positive axis at r0 e^(2 pi n)
    n_lo = math.ceil(math.log(r_min / r0) / (2 * math.pi))
    n_hi = math.floor(math.log(r_max / r0) / (2 * math.pi))
    return n_hi - n_lo + 1


def test_spiral_crossings_match_closed_form():
    tf = transversal_linear(G(1, 1))
    scan = transversal_crossing_count(tf, 0.3, 0.0, 1e-4, 0.5)
    assert scan.count == spiral_crossings_oracle(0.3, 1e-4, 0.5) == 2
    radii = sorted(abs(z) for _, z in scan.crossings)
    assert radii == pytest.approx([0.3 * math.exp(-2 * math.pi), 0.3], rel=1e-6)


def test_circle_crosses_once():
    scan = transversal_crossing_count(transversal_linear(1), 0.2 + 0.1j, 0.0, 1e-4, 0.5)
    assert scan.closed and scan.count == 1


def test_weak_section_crosses_once():
    scan = transversal_crossing_count(transversal_saddle_node_weak(1), 0.2j, 0.0, 1e-4, 0.5)
    assert scan.count == 1


def test_section_form_is_real():
    assert transversal_saddle_node_strong(1, Fraction(1, 2), G(1, 1)).one_form.is_real()


# -- first integrals ---------------------------------------------------------------

def test_saddle_node_first_integral_conservation():
    fi = saddle_node_first_integral(1, 0)
    pts = integrate_leaf(F("x*dy - y^2*dx"), (0.3 + 0.1j, 0.2 + 0.05j))
    assert first_integral_conservation(fi, pts) < 1e-6


def test_saddle_node_first_integral_with_weak_multiplier():
    fi = saddle_node_first_integral(2, Fraction(1, 2))
    pts = integrate_leaf(F("x*(1+(1/2)*y^2)*dy - y^3*dx"), (0.25 - 0.1j, 0.15 + 0.1j))
    assert first_integral_conservation(fi, pts) < 1e-6


def test_first_integral_refuses_axes_and_nonreal_mu():
    fi = saddle_node_first_integral(1, 0)
    with pytest.raises(ValueError):
        fi(0, 0.1)
    with pytest.raises(ValueError):
        saddle_node_first_integral(1, G(0, 1))


@pytest.mark.parametrize("p, q, mu", [(1, 2, Fraction(1, 2)), (2, 3, Fraction(-1, 3))])
def test_resonant_first_integral_along_leaves_and_holonomy(p, q, mu):
    fi = resonant_first_integral(q, 1, mu)
    tf = transversal_saddle_node_strong(q, mu, 1)
    leaf = integrate_section_leaf(tf, 0.05 + 0.02j, arc=0.02, n=50)
    assert first_integral_conservation(fi, leaf) < 1e-6
    h = resonant_holonomy(p, q, 1, mu)
    for y in circle_samples(0.03, 16, phase=0.1):
        assert abs(fi(h(y)) - fi(y)) / (1 + abs(fi(y))) < 1e-6


def test_log_magnitude_integral():
    fi = log_magnitude_integral([(P("x"), 1.0), (P("y"), -0.5)])
    assert fi(0.5, 0.25) == pytest.approx(1.0)
    pts = integrate_leaf(F("y*dx - (1/2)*x*dy"), (0.3 + 0.1j, 0.2 - 0.1j))
    assert first_integral_conservation(fi, pts) < 1e-6
