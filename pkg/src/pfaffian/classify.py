"""Exact classification of a singular point of A dx + B dy.

Everything is decided from the linear part of the dual field
X = B d/dx - A d/dy.  With trace tr and determinant det != 0, the eigenvalue
ratio r satisfies det r^2 - (tr^2 - 2 det) r + det = 0, so s = r + 1/r is an
element of the coefficient field and all class boundaries reduce to questions
about s:

* s not real                      -> hyperbolic
* s real, |s| < 2                 -> ratio on the unit circle, not real: hyperbolic
* s real, |s| >= 2                -> ratio real; rational iff s is rational and
                                     s^2 - 4 is a rational square
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import algebraic
from .algebra.algebraic import AlgebraicNumber
from .algebra.forms import HoloOneForm
from .algebra.gaussian import GaussianRational, fraction_sqrt_exact
from .algebra.numberfield import NFElement
from .algebra.poly import Poly, intersection_multiplicity

REGULAR = "Regular"
HYPERBOLIC = "SimpleHyperbolic"
ELLIPTIC_POS = "SimpleEllipticPositive"
ELLIPTIC_NEG = "SimpleEllipticNegative"
RESONANT = "SimpleResonant"
SADDLE_NODE = "SaddleNode"
NON_SIMPLE = "NonSimple"

SIMPLE_TAGS = (HYPERBOLIC, ELLIPTIC_POS, ELLIPTIC_NEG, RESONANT, SADDLE_NODE)


class ClassificationError(ValueError):
    pass


def _scalar_str(c) -> str:
    return str(c)


@dataclass(frozen=True)
class LinearPart:
    """Jacobian of X = B d/dx - A d/dy at the point, as ((a11, a12), (a21, a22))."""

    matrix: tuple

    @property
    def trace(self):
        return self.matrix[0][0] + self.matrix[1][1]

    @property
    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def is_nilpotent(self) -> bool:
        return not self.trace and not self.det

    def is_triangular(self) -> bool:
        return not self.matrix[0][1] or not self.matrix[1][0]

    def to_dict(self) -> dict:
        return {
            "matrix": [[_scalar_str(v) for v in row] for row in self.matrix],
            "trace": _scalar_str(self.trace),
            "det": _scalar_str(self.det),
        }


@dataclass(frozen=True)
class NormalForm:
    """A recognized normal form of the input (this is what 'normalizability established' means)."""

    kind: str  # "linear", "saddle-node" or "resonant"
    swapped: bool = False
    k: int | None = None
    mu: object = None
    p: int | None = None
    q: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "axes_swapped": self.swapped}
        for name in ("k", "p", "q"):
            if getattr(self, name) is not None:
                d[name] = getattr(self, name)
        if self.mu is not None:
            d["mu"] = str(self.mu)
        return d


@dataclass
class SingularityClass:
    tag: str
    linear: LinearPart | None = None
    p: int | None = None
    q: int | None = None
    k: int | None = None
    mu: object = None
    ratio: object = None  # exact ratio in the coefficient field, when available
    multiplier: AlgebraicNumber | None = None
    ratio_poly: Poly | None = None
    camacho_sad: dict = field(default_factory=dict)  # "x-axis" / "y-axis" -> exact index
    normal_form: NormalForm | None = None
    milnor: int | float | None = None
    diagnostics: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.tag == REGULAR:
            return "regular"
        if self.tag == NON_SIMPLE:
            return "non-simple"
        return "simple"

    @property
    def is_simple(self) -> bool:
        return self.status == "simple"

    @property
    def normalizable(self) -> bool:
        return self.normal_form is not None

    @property
    def label(self) -> str:
        if self.tag == RESONANT:
            return f"{RESONANT}({self.p},{self.q})"
        if self.tag == SADDLE_NODE:
            mu = "?" if self.mu is None else str(self.mu)
            return f"{SADDLE_NODE}({self.k},{mu})"
        return self.tag

    def to_dict(self) -> dict:
        d = {"tag": self.tag, "label": self.label, "status": self.status}
        if self.linear is not None:
            d["linear_part"] = self.linear.to_dict()
        if self.tag == RESONANT:
            d["p"], d["q"] = self.p, self.q
        if self.tag == SADDLE_NODE:
            d["k"] = self.k
            d["mu"] = None if self.mu is None else str(self.mu)
        if self.ratio is not None:
            d["ratio"] = str(self.ratio)
        if self.multiplier is not None:
            d["multiplier"] = self.multiplier.to_dict()
        if self.ratio_poly is not None:
            from .parser import format_poly

            d["ratio_polynomial"] = format_poly(self.ratio_poly, names=("r",)) if self.ratio_poly.nvars == 1 else None
        if self.camacho_sad:
            d["camacho_sad"] = {k: str(v) for k, v in sorted(self.camacho_sad.items())}
        d["normal_form"] = self.normal_form.to_dict() if self.normal_form else None
        if self.milnor is not None:
            d["milnor"] = self.milnor if self.milnor != math.inf else "inf"
        if self.diagnostics:
            d["diagnostics"] = list(self.diagnostics)
        return d


# -- linear algebra -----------------------------------------------------------

def _at_center(f: HoloOneForm, center) -> HoloOneForm:
    if center is None:
        return f
    c = tuple(center)
    if not c[0] and not c[1]:
        return f
    return f.translate(c)


def linear_part(f: HoloOneForm, center=None) -> LinearPart:
    f = _at_center(f, center)
    if not f.is_singular_at_origin():
        raise ClassificationError("the form is regular at this point")
    P, Q = f.b, -f.a
    z = (0, 0)
    m = (
        (P.diff(0).coeff(z), P.diff(1).coeff(z)),
        (Q.diff(0).coeff(z), Q.diff(1).coeff(z)),
    )
    return LinearPart(m)


def ratio_minimal_poly(lp: LinearPart) -> Poly:
    """det r^2 - (tr^2 - 2 det) r + det, whose roots are the ratio and its inverse."""
    tr, det = lp.trace, lp.det
    if not det:
        raise ClassificationError("determinant is zero: saddle-node or nilpotent, no ratio polynomial")
    return Poly({(2,): det, (1,): -(tr * tr - 2 * det), (0,): det}, nvars=1)


# -- normal forms -------------------------------------------------------------

def _single(p: Poly):
    if len(p.terms) != 1:
        return None
    return next(iter(p.terms.items()))


def _match_saddle_node(f: HoloOneForm):
    """c [x (1 + mu y^k) dy - y^(k+1) dx]."""
    one = _single(f.a)
    if one is None:
        return None
    (ea, ca) = one
    if ea[0] != 0 or ea[1] < 2:
        return None
    k = ea[1] - 1
    c = -ca
    rest = dict(f.b.terms)
    if rest.pop((1, 0), None) != c:
        return None
    mu = GaussianRational(0)
    if rest:
        if list(rest) != [(1, k)]:
            return None
        mu = rest[(1, k)] / c
    return k, mu


def _match_resonant(f: HoloOneForm):
    """c [p y (1 + (mu-1) m^k) dx + q x (1 + mu m^k) dy] with m = x^p y^q, or its linear part alone."""
    al = f.a.terms.get((0, 1))
    be = f.b.terms.get((1, 0))
    if not al or not be:
        return None
    ratio = al / be
    if isinstance(ratio, NFElement):
        ratio = ratio.as_gaussian()
        if ratio is None:
            return None
    if not ratio.is_real() or ratio.re <= 0:
        return None
    p, q = ratio.re.numerator, ratio.re.denominator
    c = al / p
    ra = dict(f.a.terms)
    rb = dict(f.b.terms)
    del ra[(0, 1)]
    del rb[(1, 0)]
    if not ra and not rb:
        return "linear", None
    if len(ra) > 1 or len(rb) > 1:
        return None
    k = None
    if rb:
        (e, v), = rb.items()
        if e[0] < 1 or (e[0] - 1) % p or e[1] % q:
            return None
        k = (e[0] - 1) // p
        if k < 1 or e[1] != q * k:
            return None
        mu = v / (c * q)
    if ra:
        (e, v), = ra.items()
        if e[0] % p or e[1] < 1 or (e[1] - 1) % q:
            return None
        k2 = e[0] // p
        if k2 < 1 or e[1] != q * k2 + 1 or (k is not None and k2 != k):
            return None
        mu_a = v / (c * p) + 1
        if k is None:
            k, mu = k2, mu_a
        elif mu_a != mu:
            return None
    elif mu != 1:
        return None
    return "resonant", (p, q, k, mu)


def _is_linear_form(f: HoloOneForm) -> bool:
    return all(sum(e) == 1 for e in f.a.terms) and all(sum(e) == 1 for e in f.b.terms)


def recognize_normal_form(f: HoloOneForm) -> NormalForm | None:
    if _is_linear_form(f):
        return NormalForm("linear")
    for swapped, g in ((False, f), (True, f.swap())):
        m = _match_saddle_node(g)
        if m is not None:
            return NormalForm("saddle-node", swapped, k=m[0], mu=m[1])
    for swapped, g in ((False, f), (True, f.swap())):
        m = _match_resonant(g)
        if m is not None and m[0] == "resonant":
            p, q, k, mu = m[1]
            return NormalForm("resonant", swapped, k=k, mu=mu, p=p, q=q)
    return None


def extract_saddle_node_invariants(f: HoloOneForm, center=None):
    """(k, mu) for inputs in saddle-node normal form, else (None, diagnostic)."""
    f = _at_center(f, center)
    cls = classify_singularity(f)
    if cls.tag != SADDLE_NODE:
        raise ClassificationError(f"not a saddle-node: {cls.label}")
    nf = recognize_normal_form(f)
    if nf is not None and nf.kind == "saddle-node":
        return nf.k, nf.mu
    return None, "saddle-node is not in normal form; the weak multiplier is not computed"


# -- Camacho-Sad indices ------------------------------------------------------

def _series_residue(num: Poly, den: Poly):
    """Residue at 0 of num(t)/den(t) for univariate polynomials over a field."""
    m = den.order_in(0)
    shift = Poly.monomial((m,), 1)
    d1 = den.exquo(shift)
    c0 = d1.constant_term()
    # coefficients of num / d1 up to t^(m-1)
    inv = [1 / c0]
    for n in range(1, m):
        s = GaussianRational(0)
        for j in range(1, n + 1):
            s = s + d1.coeff((j,)) * inv[n - j]
        inv.append(-s / c0)
    total = GaussianRational(0)
    for j in range(m):
        total = total + num.coeff((j,)) * inv[m - 1 - j]
    return total


def _univ(p: Poly, v: int) -> Poly:
    return Poly({(e[v],): c for e, c in p.terms.items()}, nvars=1)


def camacho_sad_axis(f: HoloOneForm, axis: str):
    """Index of the coordinate axis as a separatrix, or None if the axis is not invariant.

    For {y = 0}: -Res_{x=0} (A/y)(x, 0) / B(x, 0); dually for {x = 0}.
    """
    y = Poly.variable(1, 2)
    x = Poly.variable(0, 2)
    if axis == "x-axis":  # {y = 0}
        if f.a.restrict(1, 0):
            return None
        num = _univ(f.a.exquo(y).restrict(1, 0), 0)
        den = _univ(f.b.restrict(1, 0), 0)
    elif axis == "y-axis":  # {x = 0}
        if f.b.restrict(0, 0):
            return None
        num = _univ(f.b.exquo(x).restrict(0, 0), 1)
        den = _univ(f.a.restrict(0, 0), 1)
    else:
        raise ValueError("axis must be 'x-axis' or 'y-axis'")
    if not den:
        return None
    return -_series_residue(num, den)


def camacho_sad_index(cls: SingularityClass, separatrix_axis: str):
    if cls.tag == NON_SIMPLE:
        raise ClassificationError("Camacho-Sad index requested at a non-simple singularity")
    if cls.tag == REGULAR:
        raise ClassificationError("Camacho-Sad index requested at a regular point")
    return cls.camacho_sad.get(separatrix_axis)


# -- the decision procedure ---------------------------------------------------

def _is_in_qi(z):
    if isinstance(z, NFElement):
        return z.as_gaussian()
    return GaussianRational.coerce(z)


def _real_sign(z) -> int:
    """Sign of a real field element."""
    g = _is_in_qi(z)
    if g is not None:
        return (g.re > 0) - (g.re < 0)
    return algebraic.to_algebraic(z).sign()


def _lambda_algebraic(s, lam_approx) -> AlgebraicNumber:
    """Minimal polynomial of a root of r^2 - s r + 1, from that of s."""
    ms = algebraic.to_algebraic(s)
    d = ms.degree
    # r^d m_s(r + 1/r) has rational coefficients and vanishes at both roots
    from math import comb

    coeffs = [Fraction(0)] * (2 * d + 1)
    for j, a in enumerate(ms.minpoly):
        # a (r + 1/r)^j r^d = a sum_i C(j,i) r^(d + j - 2i)
        for i in range(j + 1):
            coeffs[d + j - 2 * i] += a * comb(j, i)
    return algebraic.from_rational_poly(coeffs, lam_approx)


def _choose_ratio(lp: LinearPart, s):
    """The ratio lambda under the package convention.

    Triangular linear part: lambda = a11 / a22 (so y dx - l x dy has ratio l).
    Otherwise the root with |lambda| > 1, ties broken by Im lambda > 0.
    Returns (exact value or None, complex approximation).
    """
    (a11, a12), (a21, a22) = lp.matrix
    if lp.is_triangular() and a22:
        lam = a11 / a22
        return lam, complex(lam)
    import cmath

    sc = complex(s)
    disc = cmath.sqrt(sc * sc - 4)
    r1, r2 = (sc + disc) / 2, (sc - disc) / 2
    if abs(abs(r1) - abs(r2)) > 1e-12:
        lam = r1 if abs(r1) > abs(r2) else r2
    else:
        lam = r1 if r1.imag >= r2.imag else r2
    return None, lam


def classify_singularity(f: HoloOneForm, center=None) -> SingularityClass:
    f = _at_center(f, center)
    if f.is_zero():
        raise ClassificationError("zero form")
    if not f.is_singular_at_origin():
        return SingularityClass(REGULAR)
    lp = linear_part(f)
    nf = recognize_normal_form(f)
    cs = {}
    for axis in ("x-axis", "y-axis"):
        v = camacho_sad_axis(f, axis)
        if v is not None:
            cs[axis] = v
    tr, det = lp.trace, lp.det

    if lp.is_nilpotent():
        return SingularityClass(NON_SIMPLE, lp, diagnostics=["nilpotent linear part"])

    if not det:
        milnor = intersection_multiplicity(f.a, f.b)
        if milnor == math.inf:
            raise ClassificationError("coefficients share a component; form is not primitive")
        k = milnor - 1
        mu = None
        diag = []
        if nf is not None and nf.kind == "saddle-node":
            mu = nf.mu
            if nf.k != k:
                diag.append(f"normal-form k={nf.k} disagrees with Milnor number {milnor}")
        else:
            nf = None
            diag.append("saddle-node not in normal form; weak multiplier unknown")
        return SingularityClass(SADDLE_NODE, lp, k=k, mu=mu, camacho_sad=cs,
                                normal_form=nf, milnor=milnor, diagnostics=diag)

    rp = ratio_minimal_poly(lp)
    s = (tr * tr - 2 * det) / det
    lam_exact, lam_approx = _choose_ratio(lp, s)
    sg = _is_in_qi(s)

    def make(tag, **kw):
        mult = None
        if lam_exact is not None:
            mult = algebraic.to_algebraic(lam_exact)
        else:
            mult = _lambda_algebraic(s, lam_approx)
        return SingularityClass(tag, lp, ratio=lam_exact, multiplier=mult, ratio_poly=rp,
                                camacho_sad=cs, normal_form=nf, **kw)

    if sg is not None:
        s_real = sg.is_real()
    else:
        s_real = algebraic.to_algebraic(s).is_real()
    if not s_real:
        return make(HYPERBOLIC)

    # s real: compare with +-2
    sign_minus = _real_sign(s - 2)
    sign_plus = _real_sign(s + 2)
    if sign_minus < 0 and sign_plus > 0:
        return make(HYPERBOLIC)
    if sign_minus == 0:
        return make(NON_SIMPLE, diagnostics=["eigenvalue ratio 1"])
    if sign_plus == 0:
        return make(RESONANT, p=1, q=1)

    rational = False
    if sg is not None:
        root = fraction_sqrt_exact(sg.re * sg.re - 4)
        rational = root is not None
    if rational:
        if lam_exact is not None:
            lam = _is_in_qi(lam_exact).re
        else:
            cands = [(sg.re + root) / 2, (sg.re - root) / 2]
            lam = min(cands, key=lambda c: abs(float(c) - lam_approx.real))
        if lam > 0:
            return make(NON_SIMPLE, diagnostics=[f"eigenvalue ratio {lam} is a positive rational"])
        p, q = (-lam).numerator, (-lam).denominator
        return make(RESONANT, p=p, q=q)
    tag = ELLIPTIC_POS if _real_sign(s) > 0 else ELLIPTIC_NEG
    return make(tag)
