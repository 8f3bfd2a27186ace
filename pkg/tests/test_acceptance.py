"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are repeated in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""

import cmath
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pfaffian.algebra import GaussianRational as G, HoloOneForm, exterior_derivative as d, wedge
from pfaffian.blowup import blowup_at_origin, pullback_chart1, seidenberg_reduce
from pfaffian.classify import (
    ELLIPTIC_NEG,
    HYPERBOLIC,
    NON_SIMPLE,
    RESONANT,
    SADDLE_NODE,
    classify_singularity,
)
from pfaffian.holonomy import (
    circle_samples,
    conjugacy_check,
    resonant_holonomy,
    saddle_node_strong_holonomy,
)
from pfaffian.logforms import closedness_check, resonant_closed_form, saddle_node_closed_form
from pfaffian.parser import format_form, format_poly, parse_oneform, parse_poly
from pfaffian.rolle import (
    COMPATIBLE,
    INCOMPATIBLE,
    first_integral_conservation,
    integrate_leaf,
    integrate_section_leaf,
    levi_integrability_check,
    nodal_separator_form,
    resonant_first_integral,
    rolle_verdict,
    saddle_node_first_integral,
    transversal_crossing_count,
    transversal_linear,
    transversal_saddle_node_strong,
)

from randforms import rand_form, rand_poly

RESULTS: dict[int, tuple[bool, str]] = {}
MUS = (G(0), G(1) / 2, G(0, 1))


def c1():
    x, y = parse_poly("x"), parse_poly("y")
    bad = []
    for k in (1, 2, 3):
        for mu in MUS:
            eta = HoloOneForm(-(y ** (k + 1)), x * (1 + y ** k * mu))
            uv = (x * y) ** k
            eta_k = HoloOneForm(x * y * (1 + uv * (mu - 1)), x * x * (1 + uv * mu))
            raw_ok = pullback_chart1(eta) == eta_k
            chart, _ = blowup_at_origin(eta)
            stripped_ok = chart.content_removed == x
            if not (raw_ok and stripped_ok):
                bad.append((k, str(mu)))
    return not bad, f"9 (k, mu) cases, mismatches {bad}"


def c2():
    h = saddle_node_strong_holonomy(1, 0)
    err = max(abs(h(v) - v / (1 - 2j * math.pi * v)) for v in circle_samples(0.05, 16))
    return err < 1e-8, f"max error {err:.2e} (< 1e-8)"


def c3():
    worst = rel = 0.0
    for p, q in ((1, 2), (2, 3)):
        for mu in (0, Fraction(1, 2)):
            for y in circle_samples(0.03, 16):
                r = conjugacy_check(p, q, 1, mu, [y])
                worst, rel = max(worst, r), max(rel, r / abs(y) ** q)
    return worst < 1e-7, f"max residual {worst:.2e} (< 1e-7), relative to |y|^q {rel:.2e}"


def c4():
    worst = 0.0
    for mu in (0, Fraction(1, 2), G(0, 1)):
        worst = max(worst, abs(resonant_holonomy(1, 2, 1, mu).derivative_at_zero() - cmath.exp(-1j * math.pi)))
    return worst < 1e-6, f"max |h'(0) + 1| {worst:.2e} (< 1e-6)"


def c5():
    n = 0
    bad = []
    for k in (1, 2, 3):
        for mu in MUS:
            n += 1
            if not closedness_check(saddle_node_closed_form(k, mu)):
                bad.append(("saddle-node", k, str(mu)))
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            for k in (1, 2):
                for mu in MUS:
                    n += 1
                    if not closedness_check(resonant_closed_form(p, q, k, mu)):
                        bad.append(("resonant", p, q, k, str(mu)))
    return not bad, f"{n} instances exactly closed, failures {bad}"


def c6():
    flat = True
    for lam in (Fraction(1, 2), 2):
        for sign in (-1, 1):
            a, b = levi_integrability_check(nodal_separator_form(lam, sign))
            flat = flat and a.is_zero() and b.is_zero()
    w = parse_oneform("dx + conj(x)*dy")
    a, b = levi_integrability_check((w + w.conjugate()) / 2)
    detects = not a.is_zero()
    return flat and detects, f"nodal separators vanish: {flat}; twisted form nonzero: {detects}"


GOLDEN = (
    ("y*dx - i*x*dy", HYPERBOLIC, INCOMPATIBLE),
    ("y*dx + x*dy", RESONANT, COMPATIBLE),
    ("-x*dx + (x+y)*dy", ELLIPTIC_NEG, COMPATIBLE),
    ("x*(1+(1/2)*y)*dy - y^2*dx", SADDLE_NODE, COMPATIBLE),
    ("x*(1+i*y)*dy - y^2*dx", SADDLE_NODE, INCOMPATIBLE),
    ("y*dx - x*dy", NON_SIMPLE, "dicritical"),
)


def c7():
    bad = []
    for src, tag, want in GOLDEN:
        eta = parse_oneform(src)
        got_tag = classify_singularity(eta).tag
        v = rolle_verdict(seidenberg_reduce(eta))
        if want == "dicritical":
            ok = v.dicritical and any(a.startswith("dicritical") for a in v.annotations)
        else:
            ok = v.outcome == want
        if got_tag != tag or not ok:
            bad.append(src)
    return not bad, f"{len(GOLDEN)} fixture forms, mismatches {bad}"


def c8():
    spiral = transversal_crossing_count(transversal_linear(G(1, 1)), 0.3, 0.0, 1e-4, 0.5).count
    circle = transversal_crossing_count(transversal_linear(1), 0.2 + 0.1j, 0.0, 1e-4, 0.5).count
    ok = spiral >= 10 and circle == 1
    return ok, f"alpha=1+i spiral crossings {spiral} (need >= 10); alpha=1 circle crossings {circle} (need 1)"


def c9():
    worst = 0.0
    fi = saddle_node_first_integral(1, 0)
    worst = max(worst, first_integral_conservation(fi, integrate_leaf(parse_oneform("x*dy - y^2*dx"),
                                                                      (0.3 + 0.1j, 0.2 + 0.05j))))
    inv = 0.0
    for p, q, mu in ((1, 2, Fraction(1, 2)), (2, 3, Fraction(-1, 3)), (1, 2, 0)):
        f = resonant_first_integral(q, 1, mu)
        leaf = integrate_section_leaf(transversal_saddle_node_strong(q, mu, 1), 0.05 + 0.02j, arc=0.02, n=50)
        worst = max(worst, first_integral_conservation(f, leaf))
        h = resonant_holonomy(p, q, 1, mu)
        for y in circle_samples(0.03, 16, phase=0.1):
            inv = max(inv, abs(f(h(y)) - f(y)) / (1 + abs(f(y))))
    return worst < 1e-6 and inv < 1e-6, f"max drift {worst:.2e}; max |f o h - f| {inv:.2e} (< 1e-6)"


def c10():
    cusp = seidenberg_reduce(parse_oneform("2*y*dy - 3*x^2*dx"))
    leaves = [n for n in cusp.leaves() if n.cls.status != "regular"]
    cusp_ok = (cusp.complete and all(n.cls.is_simple for n in leaves) and len(cusp.divisor) == 3
               and all(c.invariant for c in cusp.divisor) and cusp.depth <= 5)
    radial = seidenberg_reduce(parse_oneform("y*dx - x*dy"))
    radial_ok = radial.blowups == 1 and any(not c.invariant for c in radial.divisor)
    return cusp_ok and radial_ok, (f"cusp: {len(cusp.divisor)} components, depth {cusp.depth}, "
                                   f"ok {cusp_ok}; radial: {radial.blowups} blow-up, dicritical {radial_ok}")


def c11(n: int = 1000):
    rng = random.Random(2024)
    fails = {"d^2": 0, "leibniz": 0, "anticommute": 0, "conjugation": 0, "round-trip": 0}
    for _ in range(n):
        w = rand_form(rng, rng.randint(0, 2))
        fails["d^2"] += not d(d(w)).is_zero()

        p = rng.randint(0, 2)
        q = rng.randint(0, 3 - p)
        a, b = rand_form(rng, p), rand_form(rng, q)
        lhs = d(wedge(a, b))
        rhs = wedge(d(a), b) + wedge(a, d(b)) * (-1) ** p
        fails["leibniz"] += lhs != rhs

        p = rng.randint(0, 4)
        q = rng.randint(0, 4 - p)
        a, b = rand_form(rng, p), rand_form(rng, q)
        fails["anticommute"] += wedge(a, b) != wedge(b, a) * (-1) ** (p * q)

        w = rand_form(rng, rng.randint(0, 4))
        fails["conjugation"] += w.conjugate().conjugate() != w

        f = rand_poly(rng)
        w = rand_form(rng, 1)
        fails["round-trip"] += (parse_poly(format_poly(f), real=True) != f
                                or parse_oneform(format_form(w), real=True) != w)
    return not any(fails.values()), f"{n} checks per identity, failures {fails}"


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11}


def run_criterion(n: int) -> tuple[bool, str]:
    t = time.perf_counter()
    try:
        ok, detail = CRITERIA[n]()
    except Exception as e:  # a crash is a failure, reported on the same line
        ok, detail = False, f"{type(e).__name__}: {e}"
    detail += f" [{time.perf_counter() - t:.2f}s]"
    RESULTS[n] = (ok, detail)
    return ok, detail


def format_line(n: int) -> str:
    ok, detail = RESULTS[n]
    return f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} | {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n):
    ok, _ = run_criterion(n)
    print(format_line(n))
    assert ok, format_line(n)


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, _ = run_criterion(n)
        failed += not ok
        print(format_line(n), flush=True)
    sys.exit(1 if failed else 0)
