"""Text input for polynomials and 1-forms, and the matching pretty-printer.

Grammar (precedence high to low: ``^``, ``*``/``/``, unary minus, binary ``+``/``-``)::

    sum     := unary (("+" | "-") unary)*
    unary   := "-" unary | "+" unary | product
    product := power (("*" | "/") power)*
    power   := atom ("^" INTEGER)?
    atom    := INTEGER | "i" | x | y | z1 | z2 | dx | dy | dz1 | dz2
             | "conj(" sum ")" | "d(" sum ")" | "(" sum ")"

Each product term must carry exactly one differential.  Division is only by
nonzero constants.  ``conj`` marks the input as real-analytic.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .algebra.forms import HoloOneForm, RealPForm, exterior_derivative
from .algebra.gaussian import GaussianRational, I
from .algebra.poly import Poly

_VARS = {"x": 0, "z1": 0, "y": 2, "z2": 2}
_DIFFS = {"dx": 0, "dz1": 0, "dy": 2, "dz2": 2}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^(),]))")


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[start]!r}", *_line_col(src, start))
        if m.group(1):
            toks.append(_Tok("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(_Tok("op", op, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


def _line_col(src: str, pos: int):
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.conj_used = False
        self.in_diff = 0

    # -- helpers --------------------------------------------------------
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, *_line_col(self.src, tok.pos))

    def expect(self, text: str):
        t = self.peek()
        if t.kind != "op" or t.text != text:
            self.error(f"expected {text!r}" + (f", found {t.text!r}" if t.text else " before end of input"))
        return self.take()

    # -- grammar --------------------------------------------------------
    def parse(self) -> RealPForm:
        if self.peek().kind == "end":
            self.error("empty input")
        v = self.sum()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return v

    def sum(self) -> RealPForm:
        left = self.unary()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take()
            right = self.unary()
            if right.degree != left.degree:
                self.error("every term must carry exactly one differential", op)
            left = left + right if op.text == "+" else left - right
        return left

    def unary(self) -> RealPForm:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.product()

    def product(self) -> RealPForm:
        left = self.power()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            nxt = self.peek()
            right = self.unary() if nxt.kind == "op" and nxt.text in "+-" else self.power()
            if op.text == "/":
                if right.degree != 0 or not right.coeff(()).is_constant() or not right.coeff(()):
                    self.error("division is only allowed by nonzero constants", op)
                left = left / right.coeff(()).constant_term()
                continue
            if left.degree + right.degree > 1:
                self.error("a product term may contain only one differential", op)
            if left.degree == 0:
                left = RealPForm(right.degree, {k: c * left.coeff(()) for k, c in right.terms.items()})
            else:
                left = RealPForm(left.degree, {k: c * right.coeff(()) for k, c in left.terms.items()})
        return left

    def power(self) -> RealPForm:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            op = self.take()
            t = self.peek()
            if t.kind != "num":
                self.error("exponents must be nonnegative integer literals", t)
            self.take()
            if base.degree != 0:
                self.error("cannot raise a differential to a power", op)
            return RealPForm.function(base.coeff(()) ** int(t.text))
        return base

    def atom(self) -> RealPForm:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return RealPForm.function(Poly.constant(int(t.text), 4))
        if t.kind == "op" and t.text == "(":
            self.take()
            v = self.sum()
            self.expect(")")
            return v
        if t.kind == "name":
            self.take()
            name = t.text
            if name == "i":
                return RealPForm.function(Poly.constant(I, 4))
            if name in _VARS:
                return RealPForm.function(Poly.variable(_VARS[name], 4))
            if name in _DIFFS:
                if self.in_diff:
                    self.error("differential inside a differential", t)
                return RealPForm.frame(_DIFFS[name])
            if name == "conj":
                self.expect("(")
                v = self.sum()
                self.expect(")")
                self.conj_used = True
                return v.conjugate()
            if name == "d":
                self.expect("(")
                self.in_diff += 1
                v = self.sum()
                self.in_diff -= 1
                self.expect(")")
                if v.degree != 0:
                    self.error("differential inside a differential", t)
                return exterior_derivative(v)
            self.error(f"unknown identifier {name!r}", t)
        if t.kind == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected {t.text!r}", t)


def _holo(p4: Poly) -> Poly | None:
    """Restrict a 4-variable polynomial to (x, y) if it has no conjugate variables."""
    out = {}
    for e, c in p4.terms.items():
        if e[1] or e[3]:
            return None
        out[(e[0], e[2])] = c
    return Poly(out, nvars=2)


def parse_oneform(src: str, real: bool = False):
    """Parse a 1-form.  Holomorphic input gives a HoloOneForm unless ``real`` is set."""
    p = _Parser(src)
    v = p.parse()
    if v.degree != 1:
        raise ParseError("expected a 1-form (no differential found)", 1, 1)
    if not real and not p.conj_used:
        if all(k in ((0,), (2,)) for k in v.terms):
            a, b = _holo(v.coeff((0,))), _holo(v.coeff((2,)))
            if a is not None and b is not None:
                return HoloOneForm(a, b)
    return v


def parse_poly(src: str, real: bool = False) -> Poly:
    """Parse a polynomial; bivariate (x, y) unless conj occurs or ``real`` is set."""
    p = _Parser(src)
    v = p.parse()
    if v.degree != 0:
        raise ParseError("expected a polynomial, found a differential", 1, 1)
    c = v.coeff(())
    if not real and not p.conj_used:
        h = _holo(c)
        if h is not None:
            return h
    return c


def parse_scalar(src: str) -> GaussianRational:
    c = parse_poly(src)
    if not c.is_constant():
        raise ParseError("expected a constant", 1, 1)
    return GaussianRational.coerce(c.constant_term())


# -- pretty printing ------------------------------------------------------

_DEFAULT_NAMES = {
    1: ("t",),
    2: ("x", "y"),
    4: ("x", "conj(x)", "y", "conj(y)"),
}
_FRAME_NAMES = ("dx", "d(conj(x))", "dy", "d(conj(y))")


def _coeff_str(c) -> tuple[str, bool]:
    """(text without leading sign, negative?) for a coefficient."""
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return str(abs(c.re)), c.re < 0
        if c.re == 0:
            body = "i" if abs(c.im) == 1 else f"{abs(c.im)}*i"
            return body, c.im < 0
        if c.re < 0:
            return f"({-c})", True
        return f"({c})", False
    return str(c), False


def _monomial(e, names) -> str:
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _terms_str(p: Poly, names, suffix: str = "") -> list[tuple[str, bool]]:
    out = []
    for e, c in p.sorted_terms():
        mono = _monomial(e, names)
        cs, neg = _coeff_str(c)
        factors = [f for f in (mono, suffix) if f]
        if cs == "1" and factors:
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        out.append((body, neg))
    return out


def _join(items: list[tuple[str, bool]]) -> str:
    if not items:
        return "0"
    s = ""
    for k, (body, neg) in enumerate(items):
        if k == 0:
            s = f"-{body}" if neg else body
        else:
            s += f" - {body}" if neg else f" + {body}"
    return s


def format_poly(p: Poly, names=None) -> str:
    names = names or _DEFAULT_NAMES.get(p.nvars) or tuple(f"v{j}" for j in range(p.nvars))
    return _join(_terms_str(p, names))


def _frame_str(idx) -> str:
    return "^".join(_FRAME_NAMES[j] for j in idx)


def _coeff_times(c: Poly, frame: str, names) -> list[tuple[str, bool]]:
    if not c:
        return []
    if len(c.terms) == 1:
        return _terms_str(c, names, frame)
    inner = format_poly(c, names)
    return [(f"({inner})*{frame}" if frame else inner, False)]


def format_form(f) -> str:
    """Canonical text for HoloOneForm / RealPForm; 1-forms re-parse exactly."""
    if isinstance(f, HoloOneForm):
        items = _coeff_times(f.a, "dx", _DEFAULT_NAMES[2]) + _coeff_times(f.b, "dy", _DEFAULT_NAMES[2])
        return _join(items) if items else "0*dx"
    items = []
    for idx in sorted(f.terms):
        items += _coeff_times(f.terms[idx], _frame_str(idx), _DEFAULT_NAMES[4])
    if not items and f.degree:
        return "0*" + _frame_str(tuple(range(f.degree)))
    return _join(items)
