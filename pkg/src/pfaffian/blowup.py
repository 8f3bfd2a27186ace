"""Quadratic blow-ups of plane 1-forms and the reduction-of-singularities loop.

Chart 1 has coordinates (x, t) with y = x t; chart 2 has (s, y) with x = s y.
In both charts polynomial variable 0 is the first coordinate.  The
exceptional divisor is {x = 0} in chart 1 and {y = 0} in chart 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np
import sympy

from .algebra.forms import HoloOneForm, primitive_part
from .algebra.gaussian import GaussianRational
from .algebra.numberfield import NumberField
from .algebra.poly import Poly, coeffs1, gcd

log = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 20

_X = Poly.variable(0, 2)
_Y = Poly.variable(1, 2)


class BlowupError(ValueError):
    pass


class NumberFieldTowerError(BlowupError):
    """A center would need a second algebraic extension (or extensions are disabled)."""


class ReductionDepthError(RuntimeError):
    def __init__(self, message: str, tree: "ReductionTree"):
        super().__init__(message)
        self.tree = tree


@dataclass(frozen=True)
class ChartForm:
    form: HoloOneForm
    chart: int
    content_removed: Poly
    raw: HoloOneForm

    @property
    def exceptional_var(self) -> int:
        return 0 if self.chart == 1 else 1

    @property
    def coordinates(self) -> tuple[str, str]:
        return ("x", "t") if self.chart == 1 else ("s", "y")


def _strip(raw: HoloOneForm, v: int, chart: int) -> ChartForm:
    m = min(raw.a.order_in(v) if raw.a else 10 ** 9, raw.b.order_in(v) if raw.b else 10 ** 9)
    e = [0, 0]
    e[v] = m
    content = Poly.monomial(e, 1)
    form = HoloOneForm(raw.a.exquo(content), raw.b.exquo(content))
    return ChartForm(form, chart, content, raw)


def pullback_chart1(f: HoloOneForm) -> HoloOneForm:
    """A(x, xt) dx + B(x, xt) (t dx + x dt)."""
    sub = [_X, _X * _Y]
    A, B = f.a.compose(sub), f.b.compose(sub)
    return HoloOneForm(A + _Y * B, _X * B)


def pullback_chart2(f: HoloOneForm) -> HoloOneForm:
    """A(sy, y) (y ds + s dy) + B(sy, y) dy."""
    sub = [_X * _Y, _Y]
    A, B = f.a.compose(sub), f.b.compose(sub)
    return HoloOneForm(_Y * A, _X * A + B)


def blowup_at_origin(f: HoloOneForm) -> tuple[ChartForm, ChartForm]:
    if f.is_zero():
        raise BlowupError("cannot blow up the zero form")
    if not f.is_singular_at_origin():
        raise BlowupError("the form is regular at the origin; nothing to blow up")
    return _strip(pullback_chart1(f), 0, 1), _strip(pullback_chart2(f), 1, 2)


def divisor_invariance(c: ChartForm) -> bool:
    """True when the exceptional divisor is an integral curve in this chart."""
    if c.chart == 1:
        return not c.form.b.restrict(0, 0)
    return not c.form.a.restrict(1, 0)


# -- centers ----------------------------------------------------------------

@dataclass(frozen=True)
class Center:
    """A point (u, v) in chart coordinates; coordinates in Q(i) or a number field."""

    coords: tuple
    field: NumberField | None = None
    label: str = ""

    @property
    def is_origin(self) -> bool:
        return not self.coords[0] and not self.coords[1]

    def approx(self) -> tuple[complex, complex]:
        return complex(self.coords[0]), complex(self.coords[1])

    def coord_strings(self) -> list[str]:
        return [str(c) for c in self.coords]


def _to_sympy(c) -> sympy.Expr:
    c = GaussianRational.coerce(c)
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def _from_sympy(z) -> GaussianRational:
    re, im = sympy.re(z), sympy.im(z)
    re, im = sympy.Rational(re), sympy.Rational(im)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _univariate(p: Poly, v: int) -> Poly:
    """Restriction of a bivariate polynomial (other variable already set to 0) as a univariate one."""
    return Poly({(e[v],): c for e, c in p.terms.items()}, nvars=1)


def _gaussian_roots(g: Poly, allow_number_fields: bool) -> list:
    """Distinct roots of a univariate polynomial over Q(i): exact ones first, then number-field ones."""
    t = sympy.Symbol("t")
    expr = sum(_to_sympy(c) * t ** e[0] for e, c in g.terms.items())
    _, factors = sympy.factor_list(expr, t, gaussian=True)
    exact, algebraic = [], []
    for fac, _mult in factors:
        fp = sympy.Poly(fac, t)
        if fp.degree() == 1:
            c1, c0 = fp.all_coeffs()
            exact.append(_from_sympy(-c0 / c1))
        elif fp.degree() > 1:
            if not allow_number_fields:
                raise NumberFieldTowerError(f"center is a root of {fac}, outside Q(i); number fields disabled")
            coeffs = [_from_sympy(c) for c in reversed(fp.all_coeffs())]
            phi = Poly({(k,): c for k, c in enumerate(coeffs)}, nvars=1).monic()
            approx = np.roots([complex(c) for c in reversed(coeffs)])
            for z in sorted(approx, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
                algebraic.append((phi, complex(z)))
    exact.sort(key=lambda z: (z.re, z.im))
    return exact + algebraic


def _field_roots(g: Poly) -> list:
    """Roots of a univariate polynomial with number-field coefficients, when they lie in the field."""
    sf = g.exquo(gcd(g, g.diff(0)))
    roots = []
    if sf.constant_term() == 0:
        roots.append(GaussianRational(0))
        sf = sf.exquo(Poly.variable(0, 1))
    if sf.degree_in(0) == 0:
        return roots
    if sf.degree_in(0) == 1:
        c = coeffs1(sf)
        roots.append(-c[0] / c[1])
        return roots
    raise NumberFieldTowerError(
        "a center on the divisor needs a second algebraic extension; only one level is supported"
    )


def singular_points_on_divisor(c: ChartForm, allow_number_fields: bool = True,
                               field: NumberField | None = None) -> list[Center]:
    """Common zeros of both coefficients on the exceptional divisor of this chart.

    Centers are in chart coordinates with the exceptional coordinate 0, sorted
    canonically: exact roots by (re, im), then algebraic ones.
    """
    v = c.exceptional_var
    w = 1 - v
    a0, b0 = c.form.a.restrict(v, 0), c.form.b.restrict(v, 0)
    if not a0 and not b0:
        raise BlowupError("both coefficients vanish on the divisor; content was not fully stripped")
    g = gcd(_univariate(a0, w), _univariate(b0, w))
    if g.degree_in(0) <= 0:
        return []
    centers = []
    if field is not None:
        for r in _field_roots(g):
            centers.append(_center(v, r, field))
        return centers
    for r in _gaussian_roots(g, allow_number_fields):
        if isinstance(r, GaussianRational):
            centers.append(_center(v, r, None))
        else:
            phi, approx = r
            K = NumberField(phi, approx)
            centers.append(_center(v, K.gen, K, label=f"root of {phi} near {approx:.6g}"))
    return centers


def _center(v: int, r, field, label: str = "") -> Center:
    zero = GaussianRational(0)
    coords = (zero, r) if v == 0 else (r, zero)
    return Center(coords, field, label)


def local_form_at(f: HoloOneForm, center: Center) -> HoloOneForm:
    """Translate the form so the center becomes the origin (coefficients may enter a number field)."""
    if center.is_origin:
        return f
    K = center.field
    a, b = f.a, f.b
    if K is not None:
        a = a.map_coeffs(K)
        b = b.map_coeffs(K)
    shifts = list(center.coords)
    return HoloOneForm(a.translate(shifts), b.translate(shifts))


# -- reduction tree ---------------------------------------------------------

@dataclass
class DivisorComponent:
    id: int
    invariant: bool
    created_at: int
    anchors: list = dc_field(default_factory=list)  # (node id, chart)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "invariant": self.invariant,
            "created_at": self.created_at,
            "anchors": [{"node": n, "chart": ch} for n, ch in self.anchors],
        }


@dataclass
class ReductionNode:
    id: int
    form: HoloOneForm
    depth: int
    parent: int | None = None
    chart: int | None = None
    center: Center | None = None
    field: NumberField | None = None
    # divisor components carried by the axes {var0 = 0} and {var1 = 0}
    axes: tuple = (None, None)
    cls: object = None
    blown_up: bool = False
    exceptional: int | None = None
    children: list = dc_field(default_factory=list)
    content_removed: tuple = ()

    @property
    def status(self) -> str:
        return self.cls.status if self.cls is not None else "unclassified"

    @property
    def is_leaf(self) -> bool:
        return not self.blown_up

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "parent": self.parent,
            "depth": self.depth,
            "chart": self.chart,
            "center": self.center.coord_strings() if self.center else None,
            "number_field": repr(self.field) if self.field else None,
            "form": str(self.form),
            "status": self.status,
            "class": self.cls.to_dict() if self.cls is not None else None,
            "divisor_axes": list(self.axes),
            "blown_up": self.blown_up,
            "exceptional_component": self.exceptional,
            "children": list(self.children),
        }
        return d


@dataclass
class ReductionTree:
    nodes: list = dc_field(default_factory=list)
    divisor: list = dc_field(default_factory=list)
    complete: bool = False

    @property
    def root(self) -> ReductionNode:
        return self.nodes[0]

    @property
    def depth(self) -> int:
        return max((n.depth for n in self.nodes), default=0)

    def leaves(self) -> list[ReductionNode]:
        return [n for n in self.nodes if n.is_leaf]

    @property
    def blowups(self) -> int:
        return sum(1 for n in self.nodes if n.blown_up)

    @property
    def dicritical(self) -> bool:
        return any(not c.invariant for c in self.divisor)

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "depth": self.depth,
            "blowups": self.blowups,
            "dicritical": self.dicritical,
            "nodes": [n.to_dict() for n in self.nodes],
            "divisor": [c.to_dict() for c in self.divisor],
        }


def seidenberg_reduce(f: HoloOneForm, max_depth: int = DEFAULT_MAX_DEPTH,
                      allow_number_fields: bool = True) -> ReductionTree:
    """Blow up non-simple points until every leaf is simple or regular.

    Traversal is depth-first: chart 1 centers in canonical order, then the
    origin of chart 2 (the one point of the divisor chart 1 does not see).
    """
    from .classify import classify_singularity

    f, _ = primitive_part(f)
    tree = ReductionTree()
    root = ReductionNode(id=0, form=f, depth=0)
    tree.nodes.append(root)
    stack = [root]
    while stack:
        node = stack.pop()
        node.cls = classify_singularity(node.form)
        if node.cls.status != "non-simple":
            continue
        if node.depth >= max_depth:
            raise ReductionDepthError(
                f"reduction did not finish within {max_depth} blow-ups (node {node.id})", tree
            )
        c1, c2 = blowup_at_origin(node.form)
        inv1, inv2 = divisor_invariance(c1), divisor_invariance(c2)
        if inv1 != inv2:
            raise BlowupError("chart invariance flags disagree; blow-up bookkeeping is inconsistent")
        comp = DivisorComponent(len(tree.divisor), inv1, node.id)
        tree.divisor.append(comp)
        node.blown_up = True
        node.exceptional = comp.id
        node.content_removed = (c1.content_removed.order_in(0), c2.content_removed.order_in(1))
        log.debug("node %d: blow-up, component %d invariant=%s", node.id, comp.id, inv1)

        children = []
        for center in singular_points_on_divisor(c1, allow_number_fields, node.field):
            K = center.field or node.field
            if center.field is not None and node.field is not None and center.field is not node.field:
                raise NumberFieldTowerError("nested number-field centers are not supported")
            t0 = center.coords[1]
            axes = (comp.id, node.axes[1] if not t0 else None)
            children.append((c1, center, K, axes))
        origin2 = Center((GaussianRational(0), GaussianRational(0)))
        if c2.form.is_singular_at_origin():
            children.append((c2, origin2, node.field, (node.axes[0], comp.id)))
        comp.anchors.append((node.id, 1))
        comp.anchors.append((node.id, 2))

        created = []
        for cf, center, K, axes in children:
            child = ReductionNode(
                id=len(tree.nodes),
                form=local_form_at(cf.form, center),
                depth=node.depth + 1,
                parent=node.id,
                chart=cf.chart,
                center=center,
                field=K,
                axes=axes,
            )
            tree.nodes.append(child)
            node.children.append(child.id)
            created.append(child)
        stack.extend(reversed(created))
    tree.complete = True
    return tree
