"""Holonomy germs realized as time-1 flows of v' = c v^(m+1) / (1 + mu v^m).

Saddle-node strong separatrix: c = 2 pi i, m = k, no prefactor.
Resonant separatrix {y = 0}:    c = 2 pi i p/q, m = q k, prefactor e^(-2 pi i p/q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .algebra.gaussian import GaussianRational

RTOL = 1e-10
ATOL = 1e-12


class HolonomyDomainError(ValueError):
    """Evaluation requested outside the radius of validity."""


@dataclass(frozen=True)
class HolonomyVectorField:
    c: complex
    m: int
    mu: GaussianRational
    radius: float
    label: str = ""

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("the field must vanish to order >= 2 (m >= 1)")

    @property
    def mu_complex(self) -> complex:
        return complex(self.mu)

    @property
    def pole_distance(self) -> float:
        a = abs(self.mu_complex)
        return math.inf if a == 0 else (1.0 / a) ** (1.0 / self.m)

    def __call__(self, v):
        return self.c * v ** (self.m + 1) / (1 + self.mu_complex * v ** self.m)


def default_radius(mu, m: int) -> float:
    a = abs(complex(GaussianRational.coerce(mu)))
    if a == 0:
        return 0.1
    return min(0.1, (1.0 / a) ** (1.0 / m) / 2)


def make_field(c: complex, m: int, mu, radius: float | None = None, label: str = "") -> HolonomyVectorField:
    mu = GaussianRational.coerce(mu)
    r = default_radius(mu, m) if radius is None else radius
    pole = HolonomyVectorField(c, m, mu, 1.0).pole_distance
    if r >= pole:
        raise ValueError(f"radius {r} reaches the pole of the field at distance {pole:.6g}")
    return HolonomyVectorField(c, m, mu, r, label)


def flow(vf: HolonomyVectorField, v0: complex, t: float = 1.0, rtol: float = RTOL, atol: float = ATOL,
         t_eval: Sequence[float] | None = None):
    """Time-t flow by an adaptive 8(5,3) Runge-Kutta pair on the complex state."""
    v0 = complex(v0)
    if v0 == 0:
        return 0j if t_eval is None else np.zeros(len(t_eval), dtype=complex)
    sol = solve_ivp(lambda _t, y: vf(y), (0.0, t), np.array([v0]), method="DOP853",
                    rtol=rtol, atol=atol, t_eval=t_eval)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    if t_eval is None:
        return complex(sol.y[0, -1])
    return sol.y[0]


@dataclass(frozen=True)
class HolonomyMap:
    """v -> xi * flow_1(v) with xi = e^(2 pi i * turns)."""

    field: HolonomyVectorField
    turns: Fraction = Fraction(0)
    rtol: float = RTOL
    atol: float = ATOL

    @property
    def prefactor(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.turns))

    @property
    def period(self) -> int:
        """Smallest n with xi^n = 1; the n-th iterate is tangent to the identity."""
        return self.turns.denominator

    @property
    def radius(self) -> float:
        return self.field.radius

    def _check(self, v: complex):
        if abs(v) > self.field.radius * (1 + 1e-12):
            raise HolonomyDomainError(f"|v| = {abs(v):.6g} exceeds the radius of validity {self.field.radius:.6g}")

    def __call__(self, v):
        if np.ndim(v):
            return np.array([self(z) for z in np.ravel(v)]).reshape(np.shape(v))
        v = complex(v)
        self._check(v)
        if v == 0:
            return 0j
        return self.prefactor * flow(self.field, v, 1.0, self.rtol, self.atol)

    def inverse(self, w):
        """Backward map: flow for time -1 after removing the prefactor."""
        w = complex(w)
        self._check(w)
        if w == 0:
            return 0j
        return flow(self.field, w / self.prefactor, -1.0, self.rtol, self.atol)

    def iterates(self, v0: complex, n: int, backward: bool = False):
        """[h^0(v0), ..., h^n(v0)] (or negative iterates), stopping at the validity radius.

        The field commutes with multiplication by xi, so h^j = xi^j * flow_j and the
        whole orbit comes from one integration sampled at integer times.
        Returns (points, truncated).
        """
        v0 = complex(v0)
        self._check(v0)
        if v0 == 0:
            return np.zeros(n + 1, dtype=complex), False
        sign = -1.0 if backward else 1.0
        r = self.field.radius * (1 + 1e-9)

        def leave(_t, y):
            return abs(y[0]) - r

        leave.terminal = True
        ts = sign * np.arange(n + 1, dtype=float)
        sol = solve_ivp(lambda _t, y: self.field(y), (0.0, sign * n), np.array([v0]), method="DOP853",
                        rtol=self.rtol, atol=self.atol, t_eval=ts, events=leave)
        pts = sol.y[0]
        j = np.arange(len(pts))
        xi = self.prefactor ** (-j if backward else j)
        return pts * xi, len(pts) < n + 1

    def derivative_at_zero(self, eps0: float | None = None, levels: int = 6) -> complex:
        """h'(0) by Neville extrapolation of h(eps)/eps as eps -> 0."""
        eps0 = eps0 or self.field.radius / 4
        hs = [eps0 / 2 ** j for j in range(levels)]
        vals = [self(h) / h for h in hs]
        # h(eps)/eps - xi = O(eps^m); extrapolate in eps^m
        xs = [h ** self.field.m for h in hs]
        table = list(vals)
        for level in range(1, levels):
            for i in range(levels - level):
                x0, x1 = xs[i], xs[i + level]
                table[i] = (x0 * table[i + 1] - x1 * table[i]) / (x0 - x1)
        return table[0]


def saddle_node_strong_holonomy(k: int, mu=0, radius: float | None = None) -> HolonomyMap:
    if k < 1:
        raise ValueError("k must be >= 1")
    vf = make_field(2j * math.pi, k, mu, radius, label=f"saddle-node strong holonomy k={k} mu={mu}")
    return HolonomyMap(vf)


def resonant_holonomy(p: int, q: int, k: int, mu=0, radius: float | None = None) -> HolonomyMap:
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("p, q must be coprime positive integers")
    if k < 1:
        raise ValueError("k must be >= 1")
    vf = make_field(2j * math.pi * p / q, q * k, mu, radius, label=f"resonant holonomy p={p} q={q} k={k} mu={mu}")
    return HolonomyMap(vf, turns=Fraction(-p, q) % 1)


def weak_holonomy_linear_coefficient(mu) -> complex:
    """e^(2 pi i mu)."""
    mu = GaussianRational.coerce(mu)
    if mu.is_real():
        exact = root_of_unity_exact(mu.re)
        if exact is not None:
            return complex(exact)
    return cmath.exp(2j * math.pi * complex(mu))


def root_of_unity_exact(turns: Fraction) -> GaussianRational | None:
    """e^(2 pi i turns) when it lies in Q(i) (turns a multiple of 1/4), else None."""
    t = Fraction(turns) % 1
    table = {Fraction(0): GaussianRational(1), Fraction(1, 4): GaussianRational(0, 1),
             Fraction(1, 2): GaussianRational(-1), Fraction(3, 4): GaussianRational(0, -1)}
    return table.get(t)


def conjugacy_check(p: int, q: int, k: int, mu, samples: Sequence[complex]) -> float:
    """max |h(y)^q - H_k^p(y^q)| over the samples."""
    h = resonant_holonomy(p, q, k, mu)
    hk = saddle_node_strong_holonomy(k, mu)
    worst = 0.0
    for y in samples:
        y = complex(y)
        lhs = h(y) ** q
        v = y ** q
        for _ in range(p):
            v = hk(v)
        worst = max(worst, abs(lhs - v))
    return worst


def circle_samples(radius: float, n: int = 16, phase: float = 0.0) -> list[complex]:
    return [radius * cmath.exp(1j * (phase + 2 * math.pi * j / n)) for j in range(n)]


# -- orbits -------------------------------------------------------------------

FLOWER = "Flower"
ROTATION = "Rotation"
FOCUS = "Focus"
INCONCLUSIVE = "Inconclusive"

ROTATION_DRIFT = 1e-4
FLOWER_RESIDUAL = 0.1
FLOWER_MIN_N = 20
UNDERFLOW = 1e-200  # reference orbits stop here instead of collapsing to 0


@dataclass(frozen=True)
class LinearMap:
    """v -> a v, used as a reference dynamics (rotations and spirals)."""

    multiplier: complex
    radius: float = 1.0

    def __call__(self, v):
        return self.multiplier * v

    def inverse(self, w):
        return w / self.multiplier

    def iterates(self, v0: complex, n: int, backward: bool = False):
        a = 1 / self.multiplier if backward else self.multiplier
        pts = []
        v = complex(v0)
        for _ in range(n + 1):
            if abs(v) > self.radius:
                return np.array(pts), True
            if abs(v) < UNDERFLOW:
                break
            pts.append(v)
            v = a * v
        return np.array(pts), False


@dataclass
class Orbit:
    seed: complex
    forward: np.ndarray
    backward: np.ndarray
    dynamic_class: str = INCONCLUSIVE
    truncated: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def points(self) -> np.ndarray:
        """Backward iterates (oldest first), the seed, then forward iterates."""
        return np.concatenate([self.backward[:0:-1], self.forward])

    def summary(self) -> dict:
        return {
            "seed": [self.seed.real, self.seed.imag],
            "class": self.dynamic_class,
            "forward_iterates": len(self.forward) - 1,
            "backward_iterates": len(self.backward) - 1,
            "truncated": self.truncated,
            "diagnostics": self.diagnostics,
        }


def _winding(pts: np.ndarray) -> float:
    if len(pts) < 2:
        return 0.0
    steps = np.angle(pts[1:] / pts[:-1])
    return float(np.sum(steps))


def _rotation_test(pts: np.ndarray):
    """Relative modulus drift over the first full revolution, or None if no revolution."""
    if len(pts) < 3:
        return None
    steps = np.abs(np.angle(pts[1:] / pts[:-1]))
    cum = np.cumsum(steps)
    idx = np.searchsorted(cum, 2 * math.pi)
    if idx >= len(cum):
        return None
    mods = np.abs(pts[: idx + 2])
    return float(np.max(np.abs(mods - mods[0])) / mods[0])


def _flower_test(pts: np.ndarray, m: int):
    """Residual of a linear drift of v^(-m), relative to the drift, for n >= FLOWER_MIN_N."""
    n = len(pts) - 1
    if n < FLOWER_MIN_N or np.any(pts == 0):
        return None
    w = pts ** (-m)
    ns = np.arange(n + 1)
    d = (w[-1] - w[0]) / n
    if abs(d) == 0:
        return None
    res = np.abs(w - w[0] - ns * d)
    sel = ns >= FLOWER_MIN_N
    rel = float(np.max(res[sel] / (ns[sel] * abs(d))))
    mods = np.abs(pts)
    tail = mods[n // 2:]
    monotone = bool(np.all(np.diff(tail) < 0))
    return rel, monotone, d


def orbit_classify(h, seed: complex, max_iters: int = 200) -> Orbit:
    """Forward and backward orbit of a germ, with its dynamic class.

    Flower: along the direction where the orbit shrinks, v_n^(-m) drifts linearly
    (for maps with a root-of-unity prefactor, every period-th iterate is used).
    Rotation: modulus stays within a thin annulus over one revolution.
    Focus: strictly monotone modulus with winding of at least two turns.
    """
    seed = complex(seed)
    fwd, tf = h.iterates(seed, max_iters)
    bwd, tb = h.iterates(seed, max_iters, backward=True)
    orbit = Orbit(seed, fwd, bwd, truncated=bool(tf or tb))
    diag = orbit.diagnostics
    diag["forward_truncated"] = bool(tf)
    diag["backward_truncated"] = bool(tb)

    for name, pts in (("forward", fwd), ("backward", bwd)):
        drift = _rotation_test(pts)
        if drift is not None:
            diag[f"{name}_modulus_drift"] = drift
            if drift < ROTATION_DRIFT:
                orbit.dynamic_class = ROTATION
                diag["winding"] = _winding(pts)
                return orbit

    if isinstance(h, HolonomyMap):
        period = h.period
        m = h.field.m
        for name, pts in (("forward", fwd), ("backward", bwd)):
            sub = pts[::period]
            t = _flower_test(sub, m)
            if t is None:
                continue
            rel, monotone, d = t
            diag[f"{name}_flower_residual"] = rel
            if rel < FLOWER_RESIDUAL and monotone:
                orbit.dynamic_class = FLOWER
                diag["attracting_in"] = name
                diag["drift"] = [float(d.real), float(d.imag)]
                return orbit

    for name, pts in (("forward", fwd), ("backward", bwd)):
        if len(pts) < 3:
            continue
        mods = np.abs(pts)
        dm = np.diff(mods)
        wind = abs(_winding(pts))
        if (np.all(dm < 0) or np.all(dm > 0)) and wind >= 4 * math.pi:
            orbit.dynamic_class = FOCUS
            diag["winding"] = wind
            diag["focus_direction"] = name
            return orbit
    return orbit


def petal_directions(h: HolonomyMap, seeds: Sequence[complex], n: int = 2000, gap: float = 0.3) -> dict:
    """Cluster the limiting directions of long forward and backward orbits.

    A flower with k attracting and k repelling petals yields k clusters each way.
    """
    def clusters(angles):
        if not angles:
            return []
        a = np.sort(np.mod(angles, 2 * math.pi))
        gaps = np.diff(np.concatenate([a, [a[0] + 2 * math.pi]]))
        cuts = np.where(gaps > gap)[0]
        if len(cuts) == 0:
            return [float(np.mean(a))]
        groups = []
        start = (cuts[-1] + 1) % len(a)
        cur = [a[start]]
        for j in range(1, len(a)):
            idx = (start + j) % len(a)
            if gaps[(idx - 1) % len(a)] > gap:
                groups.append(cur)
                cur = []
            cur.append(a[idx])
        groups.append(cur)
        return [float(np.angle(np.mean(np.exp(1j * np.array(g))))) for g in groups]

    out = {}
    for name, back in (("attracting", False), ("repelling", True)):
        angles = []
        for s in seeds:
            pts, truncated = h.iterates(s, n, backward=back)
            if truncated:
                continue
            angles.append(float(np.angle(pts[-1])))
        out[name] = clusters(angles)
    out["petals"] = len(out["attracting"]) + len(out["repelling"])
    return out
