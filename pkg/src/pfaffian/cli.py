"""pfaff: command-line front end.

    pfaff analyze "y*dx - i*x*dy"            reduction, classes, verdict (JSON)
    pfaff analyze --log-input factors.json   same, for a logarithmic model
    pfaff holonomy --kind saddle-node --k 1  holonomy germ summary (JSON)
    pfaff trace holonomy-orbit --k 1 --seed 0.1 --n 200 -o orbit.csv
    pfaff check tests/fixtures/identities.json

Exit codes for analyze: 0 Compatible, 2 Incompatible, 3 Inconclusive, 1 error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import __version__
from .algebra.forms import HoloOneForm, exterior_derivative, realify
from .algebra.gaussian import GaussianRational
from .algebra.poly import Poly
from .blowup import BlowupError, ReductionDepthError, pullback_chart1, seidenberg_reduce
from .classify import ELLIPTIC_NEG, ELLIPTIC_POS, HYPERBOLIC, RESONANT, SADDLE_NODE, classify_singularity
from .holonomy import (
    ATOL,
    RTOL,
    HolonomyDomainError,
    LinearMap,
    circle_samples,
    conjugacy_check,
    orbit_classify,
    resonant_holonomy,
    saddle_node_strong_holonomy,
    weak_holonomy_linear_coefficient,
)
from .logforms import (
    LogFormError,
    build_logarithmic,
    closedness_check,
    induced_holomorphic_form,
    magnitude_first_integral,
    parse_log_factors,
)
from .parser import ParseError, parse_oneform, parse_poly, parse_scalar
from .rolle import (
    COMPATIBLE,
    INCOMPATIBLE,
    INCONCLUSIVE,
    VerdictError,
    first_integral_conservation,
    integrate_leaf,
    levi_integrability_check,
    resonant_first_integral,
    rolle_verdict,
    saddle_node_first_integral,
    transversal_linear,
    transversal_leaf,
)

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCOMPATIBLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_BY_OUTCOME = {COMPATIBLE: EXIT_OK, INCOMPATIBLE: EXIT_INCOMPATIBLE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(ValueError):
    pass


# -- configuration: flags > PFAFF_* environment > defaults ---------------------------

@dataclass(frozen=True)
class Option:
    name: str
    kind: type
    default: object


OPTIONS = (
    Option("max_depth", int, 20),
    Option("tol", float, 1e-6),
    Option("radius", float, None),
    Option("evidence", bool, False),
)


def _env_value(opt: Option, environ) -> object:
    raw = environ.get("PFAFF_" + opt.name.upper())
    if raw is None or raw == "":
        return None
    if opt.kind is bool:
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"PFAFF_{opt.name.upper()}: expected a boolean, got {raw!r}")
    try:
        return opt.kind(raw)
    except ValueError as e:
        raise UsageError(f"PFAFF_{opt.name.upper()}: {e}") from None


def resolve_config(args: argparse.Namespace, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    cfg = {}
    for opt in OPTIONS:
        val = getattr(args, opt.name, None)
        if val is None:
            val = _env_value(opt, environ)
        if val is None:
            val = opt.default
        cfg[opt.name] = val
    if cfg["max_depth"] < 0:
        raise UsageError("--max-depth must be non-negative")
    if cfg["tol"] <= 0:
        raise UsageError("--tol must be positive")
    if cfg["radius"] is not None and cfg["radius"] <= 0:
        raise UsageError("--radius must be positive")
    return cfg


# -- output helpers -------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def _emit(obj, path: str | None):
    text = _dump(obj)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cnum(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def parse_complex(text: str) -> complex:
    """Numeric seed: "0.1", "0.3+0.2i", "1e-3j" or any exact scalar such as "1/10+i"."""
    t = text.strip().replace(" ", "")
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        return complex(parse_scalar(t))


def _error_report(exc: BaseException) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        err["line"], err["column"] = exc.line, exc.column
    return {"schema_version": SCHEMA_VERSION, "tool": _tool(), "error": err}


def _json_arg(src: str):
    """A JSON value given inline or as a path to a file."""
    return json.loads(Path(src).read_text()) if Path(src).is_file() else json.loads(src)


def _tool() -> dict:
    return {"name": "pfaffian", "version": __version__}


def write_csv(path: str | None, header: list[str], rows) -> int:
    buf = io.StringIO() if not path else None
    fh = open(path, "w", newline="") if path else buf
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        n = 0
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else "%.17g" % v for v in row])
            n += 1
    finally:
        if path:
            fh.close()
    if buf is not None:
        sys.stdout.write(buf.getvalue())
    return n


# -- analyze ------------------------------------------------------------------------

def _leaf_evidence(node, cfg: dict) -> list[dict]:
    """Numerical evidence for one simple leaf; every entry records its tolerance and seeds."""
    c = node.cls
    out = []
    tol = cfg["tol"]
    base = {"node": node.id, "rtol": RTOL, "atol": ATOL}
    if c.tag in (HYPERBOLIC, ELLIPTIC_POS, ELLIPTIC_NEG) and c.multiplier is not None:
        lam = complex(c.multiplier.approx)
        mult = cmath.exp(2j * math.pi * lam)
        seed = 0.05
        orb = orbit_classify(LinearMap(mult), seed, max_iters=200)
        out.append({**base, "kind": "linear-holonomy-orbit", "multiplier": _cnum(mult), "seed": _cnum(seed),
                    "max_iters": 200, "class": orb.dynamic_class})
    nf = c.normal_form
    if c.tag == SADDLE_NODE and nf is not None:
        k, mu = nf.k, GaussianRational.coerce(nf.mu)
        h = saddle_node_strong_holonomy(k, mu, cfg["radius"])
        seed = h.radius / 2
        orb = orbit_classify(h, seed, max_iters=200)
        out.append({**base, "kind": "strong-holonomy-orbit", "k": k, "mu": str(mu), "seed": _cnum(seed),
                    "radius": h.radius, "max_iters": 200, "class": orb.dynamic_class})
        out.append({**base, "kind": "weak-holonomy-linear-coefficient", "mu": str(mu),
                    "value": _cnum(weak_holonomy_linear_coefficient(mu))})
        if mu.is_real():
            fi = saddle_node_first_integral(k, mu)
            eta = saddle_node_normal_form(k, mu)
            start = (0.3 + 0.1j, 0.2 + 0.05j)
            pts = integrate_leaf(eta, start, arc=0.05, n=40)
            drift = first_integral_conservation(fi, pts)
            out.append({**base, "kind": "first-integral-drift", "integral": fi.kind, "start": [_cnum(s) for s in start],
                        "arc": 0.05, "samples": len(pts), "drift": drift, "tolerance": tol, "passed": drift < tol})
    if c.tag == RESONANT and nf is not None and nf.kind == "resonant":
        p, q, k, mu = nf.p, nf.q, nf.k, GaussianRational.coerce(nf.mu)
        h = resonant_holonomy(p, q, k, mu, cfg["radius"])
        seed = h.radius / 2
        orb = orbit_classify(h, seed, max_iters=200)
        out.append({**base, "kind": "resonant-holonomy-orbit", "p": p, "q": q, "k": k, "mu": str(mu),
                    "seed": _cnum(seed), "radius": h.radius, "max_iters": 200, "class": orb.dynamic_class})
        r = min(0.03, h.radius / 2)
        res = conjugacy_check(p, q, k, mu, circle_samples(r, 16))
        out.append({**base, "kind": "conjugacy-residual", "samples": 16, "sample_radius": r, "residual": res,
                    "tolerance": 1e-7, "passed": res < 1e-7})
        if mu.is_real():
            fi = resonant_first_integral(q, k, mu)
            pts = circle_samples(r, 16, phase=0.1)
            drift = max(abs(fi(h(y)) - fi(y)) / (1 + abs(fi(y))) for y in pts)
            out.append({**base, "kind": "holonomy-invariance", "integral": fi.kind, "samples": 16,
                        "sample_radius": r, "drift": drift, "tolerance": tol, "passed": drift < tol})
    return out


_X, _Y = Poly.variable(0, 2), Poly.variable(1, 2)


def saddle_node_normal_form(k: int, mu) -> HoloOneForm:
    """x (1 + mu y^k) dy - y^(k+1) dx."""
    return HoloOneForm(-(_Y ** (k + 1)), _X * (1 + _Y ** k * mu))


def _log_evidence(tau, eta: HoloOneForm, cfg: dict) -> list[dict]:
    out = [{"kind": "closedness", "closed": closedness_check(tau), "exact": True}]
    fi = magnitude_first_integral(tau)
    if fi is None:
        out.append({"kind": "magnitude-first-integral", "available": False, "detail": "nonreal residue"})
        return out
    start = (0.37 + 0.11j, 0.23 - 0.07j)
    pts = integrate_leaf(eta, start, arc=0.05, n=40)
    drift = first_integral_conservation(fi, pts)
    out.append({"kind": "magnitude-first-integral", "available": True, "drift": drift, "start": [_cnum(s) for s in start],
                "arc": 0.05, "rtol": RTOL, "atol": ATOL, "tolerance": cfg["tol"], "passed": drift < cfg["tol"]})
    return out


def analyze(source: str | None, cfg: dict, log_factors=None) -> tuple[dict, int]:
    """Run the pipeline; returns (report, exit code)."""
    tau = None
    if log_factors is not None:
        tau = build_logarithmic(log_factors)
        eta = induced_holomorphic_form(tau)
        inp = {"mode": "log", "factors": [[str(f), str(lam)] for f, lam in log_factors], "induced_form": str(eta)}
    else:
        eta = parse_oneform(source)
        if not isinstance(eta, HoloOneForm):
            raise ParseError("analyze needs a holomorphic 1-form in dx, dy", 1, 1)
        inp = {"mode": "form", "source": source, "parsed": str(eta)}
    tree = seidenberg_reduce(eta, max_depth=cfg["max_depth"])
    verdict = rolle_verdict(tree)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": _tool(),
        "config": {k: cfg[k] for k in sorted(cfg)},
        "input": inp,
        "reduction": tree.to_dict(),
        "leaves": [{"node": n.id, "label": n.cls.label, "tag": n.cls.tag} for n in tree.leaves()],
        "verdict": verdict.to_dict(),
    }
    if cfg["evidence"]:
        ev = []
        for n in tree.leaves():
            ev.extend(_leaf_evidence(n, cfg))
        if tau is not None:
            ev.extend(_log_evidence(tau, eta, cfg))
        report["evidence"] = {"kind": "numerical evidence, not proof", "entries": ev}
    return report, EXIT_BY_OUTCOME[verdict.outcome]


def cmd_analyze(args) -> int:
    cfg = resolve_config(args)
    if (args.form is None) == (args.log_input is None):
        raise UsageError("give either a form or --log-input")
    factors = None
    if args.log_input is not None:
        factors = parse_log_factors(_json_arg(args.log_input))
    report, code = analyze(args.form, cfg, factors)
    _emit(report, args.json)
    return code


# -- holonomy -------------------------------------------------------------------------

def _make_holonomy(kind: str, k, mu, p, q, radius):
    if k is None or k < 1:
        raise UsageError("--k must be a positive integer")
    if kind == "saddle-node":
        return saddle_node_strong_holonomy(k, mu, radius)
    if kind == "resonant":
        if p is None or q is None:
            raise UsageError("resonant holonomy needs --p and --q")
        return resonant_holonomy(p, q, k, mu, radius)
    raise UsageError(f"unknown holonomy kind {kind!r}")


def cmd_holonomy(args) -> int:
    cfg = resolve_config(args)
    mu = parse_scalar(args.mu)
    out = {"schema_version": SCHEMA_VERSION, "tool": _tool(), "config": cfg, "kind": args.kind, "mu": str(mu)}
    if args.kind == "weak":
        out["linear_coefficient"] = _cnum(weak_holonomy_linear_coefficient(mu))
        _emit(out, args.json)
        return EXIT_OK
    h = _make_holonomy(args.kind, args.k, mu, args.p, args.q, cfg["radius"])
    seed = parse_complex(args.seed) if args.seed else h.radius / 2
    orb = orbit_classify(h, seed, max_iters=args.n)
    out.update({
        "k": args.k, "p": args.p, "q": args.q,
        "radius": h.radius,
        "prefactor": _cnum(h.prefactor),
        "derivative_at_zero": _cnum(h.derivative_at_zero()),
        "orbit": orb.summary(),
        "rtol": h.rtol, "atol": h.atol,
    })
    _emit(out, args.json)
    return EXIT_OK


# -- trace ----------------------------------------------------------------------------

def trace_holonomy_orbit(args, cfg):
    mu = parse_scalar(args.mu)
    kind = "resonant" if args.p is not None or args.q is not None else "saddle-node"
    h = _make_holonomy(kind, args.k, mu, args.p, args.q, cfg["radius"])
    seed = parse_complex(args.seed)
    if abs(seed) > h.radius:
        raise UsageError(f"seed outside the radius of validity {h.radius:g}")
    n = args.n or 200
    pts, _ = h.iterates(seed, n - 1)
    return ["n", "re", "im", "modulus"], ([j, z.real, z.imag, abs(z)] for j, z in enumerate(pts))


def trace_transversal_leaf(args, cfg):
    alpha = parse_scalar(args.alpha)
    if not alpha:
        raise UsageError("--alpha must be nonzero")
    tf = transversal_linear(alpha)
    seed = parse_complex(args.seed)
    if seed == 0:
        raise UsageError("seed must be nonzero")
    n = args.n or 2000
    poly = transversal_leaf(tf, seed, arc=args.arc or 10.0, n=n)
    return ["s", "re", "im"], (list(r) for r in poly)


def level_set_polyline(factors, c: float, y0: float = 1.0, arc: float = 5.0, n: int = 200) -> np.ndarray:
    """Level curve {prod |f_i|^lambda_i = c} on the real slice x, y > 0, by arc length.

    The start point solves phi(x, y0) = c in x; the curve follows the unit
    tangent (-G_y, G_x) of G = log phi - log c.
    """
    lams = []
    terms = []
    for f, lam in factors:
        lam = complex(lam)
        if abs(lam.imag) > 0:
            raise UsageError("level sets need real residues")
        lams.append(lam.real)
        terms.append((f.to_numeric(), f.diff(0).to_numeric(), f.diff(1).to_numeric()))
    logc = math.log(c)

    def G(x, y):
        return sum(l * math.log(abs(complex(f(x, y)))) for l, (f, _, _) in zip(lams, terms)) - logc

    def grad(x, y):
        gx = gy = 0.0
        for l, (f, fx, fy) in zip(lams, terms):
            v = complex(f(x, y))
            gx += l * (complex(fx(x, y)) / v).real
            gy += l * (complex(fy(x, y)) / v).real
        return gx, gy

    lo, hi = 1e-8, 1e8
    g_lo, g_hi = G(lo, y0), G(hi, y0)
    if g_lo * g_hi > 0:
        raise UsageError(f"no level point on the line y = {y0:g}")
    x0 = math.exp(brentq(lambda t: G(math.exp(t), y0), math.log(lo), math.log(hi), xtol=1e-14, rtol=1e-15))

    def rhs(_s, u):
        gx, gy = grad(u[0], u[1])
        nrm = math.hypot(gx, gy)
        return [-gy / nrm, gx / nrm]

    def leave(_s, u):
        return min(u[0], u[1]) - 1e-9

    leave.terminal = True
    ts = np.linspace(0.0, arc, n)
    sol = solve_ivp(rhs, (0.0, arc), [x0, y0], method="DOP853", rtol=RTOL, atol=ATOL, t_eval=ts, events=leave)
    phi = np.exp(np.array([G(a, b) for a, b in zip(sol.y[0], sol.y[1])]) + logc)
    return np.column_stack([sol.t, sol.y[0], sol.y[1], phi])


def trace_level_set(args, cfg):
    if not args.factors:
        raise UsageError("level-set needs --factors")
    factors = parse_log_factors(_json_arg(args.factors))
    c = float(Fraction(args.c)) if args.c else 1.0
    if c <= 0:
        raise UsageError("--c must be positive")
    y0 = float(parse_complex(args.seed).real) if args.seed else 1.0
    poly = level_set_polyline(factors, c, y0=y0, arc=args.arc or 5.0, n=args.n or 200)
    return ["s", "x", "y", "phi"], (list(r) for r in poly)


TRACE_KINDS = {
    "holonomy-orbit": trace_holonomy_orbit,
    "transversal-leaf": trace_transversal_leaf,
    "level-set": trace_level_set,
}


def cmd_trace(args) -> int:
    cfg = resolve_config(args)
    if args.kind not in TRACE_KINDS:
        raise UsageError(f"unknown trace kind {args.kind!r}")
    header, rows = TRACE_KINDS[args.kind](args, cfg)
    write_csv(args.output, header, rows)
    return EXIT_OK


# -- check: symbolic identity suite --------------------------------------------------

def _as_real(f):
    return f.to_real() if isinstance(f, HoloOneForm) else f


def _check_case(case: dict):
    """Returns (passed, detail)."""
    kind = case["kind"]
    expect = case.get("expect", True)
    if kind == "closed":
        f = _as_real(parse_oneform(case["form"]))
        got = exterior_derivative(f).is_zero()
        return got == expect, f"closed={got}"
    if kind == "d-squared":
        f = _as_real(parse_oneform(case["form"]))
        dd = exterior_derivative(exterior_derivative(f))
        return dd.is_zero(), f"d(d(form)) = {dd}" if dd else "d(d(form)) = 0"
    if kind == "equal":
        a, b = _as_real(parse_oneform(case["lhs"])), _as_real(parse_oneform(case["rhs"]))
        same = (a - b).is_zero()
        return same == expect, f"equal={same}"
    if kind == "levi":
        # a holomorphic input stands for omega = Re(eta)
        f = parse_oneform(case["form"])
        omega = realify(f)[0] if isinstance(f, HoloOneForm) else f
        w1, w2 = levi_integrability_check(omega)
        flat = w1.is_zero() and w2.is_zero()
        return flat == expect, f"levi_flat={flat}"
    if kind == "blowup-identity":
        k, mu = int(case["k"]), parse_scalar(str(case["mu"]))
        pulled = pullback_chart1(saddle_node_normal_form(k, mu))
        uv_k = (_X * _Y) ** k
        want = HoloOneForm(_X * _Y * (1 + uv_k * (mu - 1)), _X * _X * (1 + uv_k * mu))
        ok = pulled == want
        return ok == expect, f"pullback = {pulled}"
    if kind == "log-closed":
        got = closedness_check(build_logarithmic(parse_log_factors(case["factors"])))
        return got == expect, f"closed={got}"
    if kind == "classify":
        label = classify_singularity(parse_oneform(case["form"])).label
        return label == expect, f"label={label}"
    if kind == "verdict":
        outcome = rolle_verdict(seidenberg_reduce(parse_oneform(case["form"]))).outcome
        return outcome == expect, f"verdict={outcome}"
    if kind == "poly-identity":
        same = parse_poly(case["lhs"]) == parse_poly(case["rhs"])
        return same == expect, f"equal={same}"
    raise UsageError(f"unknown check kind {kind!r}")


def run_checks(cases: list[dict]) -> list[dict]:
    results = []
    for j, case in enumerate(cases):
        name = case.get("name", f"case-{j}")
        try:
            ok, detail = _check_case(case)
        except (ParseError, LogFormError, BlowupError, ValueError) as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append({"name": name, "kind": case.get("kind"), "passed": bool(ok), "detail": detail})
    return results


def cmd_check(args) -> int:
    data = json.loads(Path(args.fixture).read_text())
    cases = data["cases"] if isinstance(data, dict) else data
    results = run_checks(cases)
    failed = sum(not r["passed"] for r in results)
    report = {"schema_version": SCHEMA_VERSION, "tool": _tool(), "fixture": str(args.fixture),
              "total": len(results), "failed": failed, "results": results}
    if args.json:
        _emit(report, args.json)
    for r in results:
        sys.stderr.write(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}\n")
    return EXIT_OK if failed == 0 else EXIT_INCOMPATIBLE


# -- argument parsing -------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--max-depth", type=int, default=None, help="blow-up depth cap (PFAFF_MAX_DEPTH, default 20)")
    p.add_argument("--tol", type=float, default=None, help="evidence tolerance (PFAFF_TOL, default 1e-6)")
    p.add_argument("--radius", type=float, default=None, help="holonomy radius of validity (PFAFF_RADIUS)")
    p.add_argument("--json", metavar="OUT", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--evidence", action="store_const", const=True, default=None,
                   help="attach numerical evidence scans (PFAFF_EVIDENCE)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pfaff", description="Singular holomorphic foliations in C^2: "
                                 "reduction, classification and Rolle compatibility.")
    ap.add_argument("--version", action="version", version=f"pfaff {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="reduce, classify and decide Rolle compatibility")
    a.add_argument("form", nargs="?", help='holomorphic 1-form, e.g. "y*dx - i*x*dy"')
    a.add_argument("--log-input", metavar="FACTORS_JSON", default=None,
                   help='logarithmic model: JSON list of [factor, residue] pairs, inline or a file')
    _add_common(a)
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("holonomy", help="holonomy germ summary")
    h.add_argument("--kind", choices=("saddle-node", "resonant", "weak"), default="saddle-node")
    h.add_argument("--k", type=int, default=1)
    h.add_argument("--p", type=int, default=None)
    h.add_argument("--q", type=int, default=None)
    h.add_argument("--mu", default="0")
    h.add_argument("--seed", default=None)
    h.add_argument("--n", type=int, default=200, help="orbit length")
    _add_common(h)
    h.set_defaults(func=cmd_holonomy)

    t = sub.add_parser("trace", help="write trajectory CSV")
    t.add_argument("kind", help="holonomy-orbit | transversal-leaf | level-set")
    t.add_argument("--k", type=int, default=1)
    t.add_argument("--p", type=int, default=None)
    t.add_argument("--q", type=int, default=None)
    t.add_argument("--mu", default="0")
    t.add_argument("--alpha", default="1")
    t.add_argument("--factors", default=None, help="JSON string or file of [factor, residue] pairs")
    t.add_argument("--c", default=None, help="level value (level-set)")
    t.add_argument("--seed", default="0.1")
    t.add_argument("--n", type=int, default=None, help="rows")
    t.add_argument("--arc", type=float, default=None, help="arc length (leaf and level-set traces)")
    t.add_argument("-o", "--output", default=None, help="CSV path (stdout if omitted)")
    _add_common(t)
    t.set_defaults(func=cmd_trace)

    c = sub.add_parser("check", help="run the symbolic identity suite of a fixture file")
    c.add_argument("fixture")
    c.add_argument("--json", default=None)
    c.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, LogFormError, BlowupError, ReductionDepthError, VerdictError,
            HolonomyDomainError, ValueError, OSError, json.JSONDecodeError) as e:
        sys.stderr.write(_dump(_error_report(e)))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
