"""Rolle-compatibility verdicts and the numerical evidence that backs them.

The verdict uses exact data only (the reduction tree and the recognized
normal forms).  Crossing counts and first-integral drifts are evidence, never
proof, and are labeled as such in reports.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .algebra.forms import HoloOneForm, RealPForm, exterior_derivative, sharp, wedge
from .algebra.gaussian import GaussianRational
from .algebra.poly import Poly
from .blowup import ReductionTree
from .classify import (
    ELLIPTIC_NEG,
    ELLIPTIC_POS,
    HYPERBOLIC,
    NON_SIMPLE,
    REGULAR,
    RESONANT,
    SADDLE_NODE,
)

COMPATIBLE = "Compatible"
INCOMPATIBLE = "Incompatible"
INCONCLUSIVE = "Inconclusive"

GLOBAL_CAVEAT = (
    "per-singularity necessary conditions only; a Rolle foliation near the whole germ is not certified"
)


class VerdictError(ValueError):
    pass


@dataclass
class Verdict:
    outcome: str
    reasons: list = field(default_factory=list)    # for Incompatible: {"node", "reason", "detail"}
    unknowns: list = field(default_factory=list)   # for Inconclusive: {"node", "detail"}
    findings: dict = field(default_factory=dict)   # node id -> short finding
    annotations: list = field(default_factory=list)

    @property
    def dicritical(self) -> bool:
        return any(a.startswith("dicritical") for a in self.annotations)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "reasons": self.reasons,
            "unknowns": self.unknowns,
            "findings": {str(k): v for k, v in sorted(self.findings.items())},
            "annotations": self.annotations,
            "scope": GLOBAL_CAVEAT,
        }


def _mu_is_real(mu) -> bool:
    if hasattr(mu, "as_gaussian"):
        g = mu.as_gaussian()
        if g is None:
            from .algebra.algebraic import to_algebraic

            return to_algebraic(mu).is_real()
        mu = g
    return GaussianRational.coerce(mu).is_real()


def rolle_verdict(tree: ReductionTree) -> Verdict:
    """Incompatible / Compatible / Inconclusive from the simple singularities of a reduction."""
    if not tree.complete:
        raise VerdictError("the reduction tree is incomplete")
    leaves = tree.leaves()
    for n in leaves:
        if n.cls is None or n.cls.tag == NON_SIMPLE:
            raise VerdictError(f"leaf {n.id} is not simple; reduce the tree first")

    v = Verdict(COMPATIBLE)
    if tree.dicritical:
        ids = [c.id for c in tree.divisor if not c.invariant]
        v.annotations.append(
            f"dicritical components {ids}: leaves cross the divisor; the verdict covers the singular points only"
        )
    closed_root = tree.root.form.is_closed()
    if closed_root:
        v.annotations.append("holomorphic first integral: the input form is closed")

    for n in leaves:
        c = n.cls
        tag = c.tag
        if tag == REGULAR:
            v.findings[n.id] = "regular point"
        elif tag == HYPERBOLIC:
            v.findings[n.id] = "hyperbolic"
            v.reasons.append({"node": n.id, "reason": "hyperbolic-exclusion",
                              "detail": f"eigenvalue ratio {c.multiplier} is not real"})
        elif tag == SADDLE_NODE:
            if c.normal_form is not None and not _mu_is_real(c.mu):
                v.findings[n.id] = f"saddle-node with weak multiplier {c.mu}"
                v.reasons.append({"node": n.id, "reason": "saddle-node-nonreal-weak-multiplier",
                                  "detail": f"weak multiplier {c.mu} is not real"})
            elif c.normal_form is not None:
                v.findings[n.id] = f"normal-form saddle-node, real weak multiplier {c.mu}"
            elif closed_root:
                v.findings[n.id] = "saddle-node under a holomorphic first integral"
            else:
                v.findings[n.id] = "saddle-node, normalizability unknown"
                v.unknowns.append({"node": n.id, "detail": "saddle-node not in normal form; "
                                   "analytic normalizability and weak multiplier unknown"})
        elif tag in (ELLIPTIC_POS, ELLIPTIC_NEG, RESONANT):
            kind = {ELLIPTIC_POS: "elliptic", ELLIPTIC_NEG: "elliptic", RESONANT: "resonant"}[tag]
            if c.normal_form is not None:
                v.findings[n.id] = f"{kind}, {c.normal_form.kind} normal form"
            elif closed_root:
                v.findings[n.id] = f"{kind} under a holomorphic first integral"
            else:
                v.findings[n.id] = f"{kind}, normalizability unknown"
                what = "linearizability" if kind == "elliptic" else "analytic normalizability"
                v.unknowns.append({"node": n.id, "detail": f"{kind} singularity: {what} unknown"})
        else:
            raise VerdictError(f"unexpected class {tag} at leaf {n.id}")

    if v.reasons:
        v.outcome = INCOMPATIBLE
    elif v.unknowns:
        v.outcome = INCONCLUSIVE
    return v


# -- Levi-flat integrability ----------------------------------------------------

def levi_integrability_check(omega: RealPForm) -> tuple[RealPForm, RealPForm]:
    """(d w ^ w ^ w#, d w# ^ w ^ w#); both vanish exactly iff the model is Levi-flat."""
    if omega.degree != 1:
        raise ValueError("expected a real 1-form")
    if not omega.is_real():
        raise ValueError("the 1-form is not real (it differs from its conjugate)")
    w_sharp = sharp(omega)
    ww = wedge(omega, w_sharp)
    return wedge(exterior_derivative(omega), ww), wedge(exterior_derivative(w_sharp), ww)


def nodal_separator_form(lam, sign: int = -1) -> RealPForm:
    """|x|^2 |y|^2 Re(dx/x + sign * lam dy/y), polynomialized.

    ``sign = -1`` is the real part of the logarithmic form dx/x - lam dy/y.
    """
    lam = GaussianRational.coerce(lam)
    x, xb, y, yb = (Poly.variable(j, 4) for j in range(4))
    half = GaussianRational(1) / 2
    s = lam * sign
    return RealPForm(1, {
        (0,): xb * y * yb * half,
        (1,): x * y * yb * half,
        (2,): x * xb * yb * (s * half),
        (3,): x * xb * y * (s.conjugate() * half),
    }, real=True)


# -- transversal foliations on a one-dimensional section ------------------------

@dataclass(frozen=True)
class TransversalFoliation:
    """The real foliation on a section given by theta = alpha/g dz + conj(alpha/g) dconj(z).

    g = numerator / denominator is a univariate rational function; leaves follow
    z' = i conj(alpha) g(z).
    """

    alpha: GaussianRational
    numerator: Poly
    denominator: Poly
    section: str = "{(1, y)}"
    source: str = ""

    @property
    def one_form(self) -> RealPForm:
        """alpha Q conj(P) dz + conj(alpha) conj(Q) P dconj(z), with g = P/Q."""
        P = self.numerator.embed(4, (0,))
        Q = self.denominator.embed(4, (0,))
        a = self.alpha
        return RealPForm(1, {(0,): Q * P.conjugate() * a, (1,): Q.conjugate() * P * a.conjugate()})

    def g(self, z) -> complex:
        return complex(self.numerator.to_numeric()(z)) / complex(self.denominator.to_numeric()(z))

    def direction(self) -> Callable:
        a = complex(self.alpha).conjugate()
        num, den = self.numerator.to_numeric(), self.denominator.to_numeric()

        def f(z):
            return 1j * a * complex(num(z)) / complex(den(z))

        return f


def transversal_linear(alpha, section: str = "{(x, 1)}", source: str = "") -> TransversalFoliation:
    """Leaves of alpha conj(z) dz + conj(alpha) z dconj(z): circles (alpha real) or spirals."""
    return TransversalFoliation(GaussianRational.coerce(alpha), Poly.variable(0, 1), Poly.one(1), section,
                                source or "linear section")


def transversal_saddle_node_strong(k: int, mu, alpha) -> TransversalFoliation:
    """Section {(1, y)} of Re(alpha tau) for the saddle-node normal form: g = y^(k+1)/(1 + mu y^k)."""
    mu = GaussianRational.coerce(mu)
    num = Poly.monomial((k + 1,), 1)
    den = Poly({(0,): 1, (k,): mu}, nvars=1)
    return TransversalFoliation(GaussianRational.coerce(alpha), num, den, "{(1, y)}",
                                f"saddle-node k={k} mu={mu}, strong separatrix section")


def transversal_saddle_node_weak(alpha) -> TransversalFoliation:
    """Section {(x, 1)} of Re(alpha tau): theta = -alpha dx/x + c.c., so g = -x."""
    return TransversalFoliation(GaussianRational.coerce(alpha), Poly.monomial((1,), -1), Poly.one(1),
                                "{(x, 1)}", "saddle-node weak separatrix section")


class CrossingError(RuntimeError):
    def __init__(self, message: str, partial_count: int):
        super().__init__(message)
        self.partial_count = partial_count


@dataclass
class CrossingScan:
    count: int
    crossings: list        # (arc length, z) of accepted crossings
    closed: bool
    arc_forward: float
    arc_backward: float
    ray_angle: float
    annulus: tuple

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "closed_leaf": self.closed,
            "crossing_radii": [abs(z) for _, z in self.crossings],
            "arc_length": [self.arc_forward, self.arc_backward],
            "ray_angle": self.ray_angle,
            "annulus": list(self.annulus),
            "transversality_threshold": TRANSVERSALITY,
            "duplicate_window": DUPLICATE_ARC,
            "kind": "numerical evidence",
        }


TRANSVERSALITY = 1e-6
DUPLICATE_ARC = 1e-4
_RTOL, _ATOL = 1e-10, 1e-12


def _leaf_segments(direction: Callable, seed: complex, r_min: float, r_max: float, sign: float,
                   ray_angle: float, max_turns: int, max_arc: float):
    """Integrate one direction turn by turn; collect ray crossings; stop on exit or closure."""
    rot = cmath.exp(-1j * ray_angle)

    def rhs(_s, u):
        z = u[0] + 1j * u[1]
        w = direction(z)
        a = abs(w)
        if a == 0:
            raise CrossingError("direction field vanishes on the leaf", 0)
        w = sign * w / a
        return [w.real, w.imag, (w / z).imag]

    def cross(_s, u):
        return ((u[0] + 1j * u[1]) * rot).imag

    def out(_s, u):
        return math.hypot(u[0], u[1]) - r_max

    def inn(_s, u):
        return math.hypot(u[0], u[1]) - r_min

    out.terminal = True
    inn.terminal = True

    state = [seed.real, seed.imag, 0.0]
    s0 = 0.0
    found = []
    closed = False
    for _ in range(max_turns):
        start_phase = state[2]

        def turn(_s, u, p=start_phase):
            return abs(u[2] - p) - 2 * math.pi

        turn.terminal = True
        turn.direction = 1
        sol = solve_ivp(rhs, (s0, max_arc), state, method="DOP853", rtol=_RTOL, atol=_ATOL,
                        events=[cross, out, inn, turn])
        if sol.status == -1:
            raise CrossingError(f"integration failed: {sol.message}", len(found))
        for s_ev, u_ev in zip(sol.t_events[0], sol.y_events[0]):
            found.append((float(s_ev), complex(u_ev[0], u_ev[1])))
        state = list(sol.y[:, -1])
        s0 = float(sol.t[-1])
        if len(sol.t_events[1]) or len(sol.t_events[2]) or s0 >= max_arc:
            break
        z = state[0] + 1j * state[1]
        if abs(z - seed) < 1e-6 * abs(seed):
            closed = True
            break
    return found, closed, s0


def transversal_crossing_count(tf: TransversalFoliation, seed: complex, ray_angle: float,
                               r_min: float, r_max: float, max_turns: int = 200,
                               max_arc: float = 1e3) -> CrossingScan:
    """Transversal crossings of the leaf through ``seed`` with the ray at ``ray_angle``, inside the annulus."""
    seed = complex(seed)
    if not r_min <= abs(seed) <= r_max:
        raise ValueError("seed outside the annulus")
    direction = tf.direction()
    rot = cmath.exp(-1j * ray_angle)

    fwd, closed, arc_f = _leaf_segments(direction, seed, r_min, r_max, 1.0, ray_angle, max_turns, max_arc)
    bwd, arc_b = [], 0.0
    if not closed:
        bwd, _, arc_b = _leaf_segments(direction, seed, r_min, r_max, -1.0, ray_angle, max_turns, max_arc)
    events = [(0.0, seed)] if (seed * rot).imag == 0 else []
    events += fwd + [(-s, z) for s, z in bwd]

    accepted = []
    for s, z in sorted(events, key=lambda e: e[0]):
        zr = z * rot
        if zr.real <= 0 or not r_min <= abs(z) <= r_max:
            continue
        w = direction(z)
        if abs(w) == 0 or abs((w / abs(w) * rot).imag) <= TRANSVERSALITY:
            continue
        if accepted and abs(s - accepted[-1][0]) < DUPLICATE_ARC:
            continue
        if closed and accepted and abs(z - accepted[0][1]) < 1e-6 * abs(z) and s > DUPLICATE_ARC:
            continue  # same point reached again after a full turn of a closed leaf
        accepted.append((s, z))
    return CrossingScan(len(accepted), accepted, closed, arc_f, arc_b, ray_angle, (r_min, r_max))


def transversal_leaf(tf: TransversalFoliation, seed: complex, arc: float = 10.0, n: int = 2000,
                     r_min: float = 1e-6, r_max: float = 10.0) -> np.ndarray:
    """Polyline of the leaf through ``seed`` (forward arc length), for plotting."""
    direction = tf.direction()

    def rhs(_s, u):
        w = direction(u[0] + 1j * u[1])
        w = w / abs(w)
        return [w.real, w.imag]

    def out(_s, u):
        r = math.hypot(u[0], u[1])
        return min(r - r_min, r_max - r)

    out.terminal = True
    ts = np.linspace(0.0, arc, n)
    sol = solve_ivp(rhs, (0.0, arc), [seed.real, seed.imag], method="DOP853", rtol=_RTOL, atol=_ATOL,
                    t_eval=ts, events=out)
    return np.column_stack([sol.t, sol.y[0], sol.y[1]])


# -- first integrals --------------------------------------------------------------

SADDLE_NODE_F = "SaddleNodeF"
RESONANT_SMALL_F = "ResonantSmallF"
LOG_MAGNITUDE = "LogMagnitude"


@dataclass(frozen=True)
class FirstIntegral:
    kind: str
    params: dict
    evaluator: Callable
    axes: tuple  # coordinate indices that must be nonzero

    def __call__(self, *coords) -> float:
        for j in self.axes:
            if coords[j] == 0:
                raise ValueError("first integral evaluated on a coordinate axis")
        return float(self.evaluator(*coords))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": {k: str(v) for k, v in self.params.items()}}


def saddle_node_first_integral(k: int, mu) -> FirstIntegral:
    """mu log|y| - log|x| - Re(1/(k y^k)), for real mu."""
    mu = GaussianRational.coerce(mu)
    if not mu.is_real():
        raise ValueError("the real first integral needs a real weak multiplier")
    m = float(mu.re)

    def F(x, y):
        return m * math.log(abs(y)) - math.log(abs(x)) - (1 / (k * complex(y) ** k)).real

    return FirstIntegral(SADDLE_NODE_F, {"k": k, "mu": mu}, F, (0, 1))


def resonant_first_integral(q: int, k: int, mu) -> FirstIntegral:
    """mu q log|y| - Re(1/(k y^(qk))) on the section {(1, y)}, for real mu."""
    mu = GaussianRational.coerce(mu)
    if not mu.is_real():
        raise ValueError("the real first integral needs a real weak multiplier")
    m = float(mu.re)

    def f(y):
        return m * q * math.log(abs(y)) - (1 / (k * complex(y) ** (q * k))).real

    return FirstIntegral(RESONANT_SMALL_F, {"q": q, "k": k, "mu": mu}, f, (0,))


def log_magnitude_integral(factors: Sequence[tuple]) -> FirstIntegral:
    """prod |f_i|^(lambda_i) for bivariate polynomials f_i and real residues lambda_i."""
    evs = [(p.to_numeric(), float(lam)) for p, lam in factors]

    def phi(x, y):
        out = 1.0
        for f, lam in evs:
            out *= abs(complex(f(x, y))) ** lam
        return out

    return FirstIntegral(LOG_MAGNITUDE, {f"f{j}": f"{p} ^ {lam}" for j, (p, lam) in enumerate(factors)},
                         phi, ())


def first_integral_conservation(fi: FirstIntegral, leaf_samples: Sequence) -> float:
    """max |F - F0| / (1 + |F0|) along the samples."""
    samples = [tuple(s) if np.ndim(s) else (s,) for s in leaf_samples]
    f0 = fi(*samples[0])
    worst = 0.0
    for s in samples[1:]:
        worst = max(worst, abs(fi(*s) - f0) / (1 + abs(f0)))
    return worst


def integrate_leaf(form: HoloOneForm, start: tuple, headings: Sequence[float] = (0.0, math.pi / 2, math.pi),
                   arc: float = 0.05, n: int = 40, rtol: float = _RTOL, atol: float = _ATOL) -> list:
    """Points on the leaf through ``start``: complex-time flow of X = B d/dx - A d/dy.

    Complex time moves along straight segments with the given headings; the
    field is normalized by |X| so each segment has the requested arc length.
    """
    A, B = form.a.to_numeric(), form.b.to_numeric()

    def make_rhs(heading):
        e = cmath.exp(1j * heading)

        def rhs(_s, u):
            x, y = u[0] + 1j * u[1], u[2] + 1j * u[3]
            X = (complex(B(x, y)), -complex(A(x, y)))
            nrm = math.sqrt(abs(X[0]) ** 2 + abs(X[1]) ** 2)
            vx, vy = e * X[0] / nrm, e * X[1] / nrm
            return [vx.real, vx.imag, vy.real, vy.imag]

        return rhs

    x0, y0 = complex(start[0]), complex(start[1])
    state = [x0.real, x0.imag, y0.real, y0.imag]
    pts = [(x0, y0)]
    for h in headings:
        ts = np.linspace(0.0, arc, n + 1)
        sol = solve_ivp(make_rhs(h), (0.0, arc), state, method="DOP853", rtol=rtol, atol=atol, t_eval=ts)
        if not sol.success:
            raise RuntimeError(f"leaf integration failed: {sol.message}")
        for j in range(1, sol.y.shape[1]):
            pts.append((complex(sol.y[0, j], sol.y[1, j]), complex(sol.y[2, j], sol.y[3, j])))
        state = list(sol.y[:, -1])
    return pts


def integrate_section_leaf(tf: TransversalFoliation, start: complex, arc: float = 0.05, n: int = 100) -> list:
    """Points on a leaf of a section foliation (real flow of i conj(alpha) g, unit speed)."""
    poly = transversal_leaf(tf, complex(start), arc, n, r_min=1e-9, r_max=1e9)
    return [complex(a, b) for a, b in poly[:, 1:]]
