"""Canonical text form for polynomials and rational functions.

One line, one object.  A rational function with a nontrivial denominator
prints as ``(numerator)/(denominator)`` where the numerator is split into
sign, content, monomial, and a parenthesized primitive part, and the
denominator is a ``*``-joined product of powered factors:

    (-2*s*x^2*(s^2*x^2+s*x-s+1))/((1-s*x)^4*(1-x)^2)

Variables always appear in the order t, s, x, y.  Sum terms are sorted by
graded lexicographic order, descending inside numerators and ascending
inside denominator factors (so factors read 1-x, 1-s*x, 1+x+x^2).  The
parser accepts the same grammar, and more: any +,-,*,/,^ expression over
integers and the four variable names evaluates to a RatFunc.
"""

from __future__ import annotations

import re

from .intpoly import IntPoly, VAR_ORDER
from .ratfunc import RatFunc, _sign_canon, _split_monomial


def _term_key(item):
    e, _ = item
    return (sum(e), e)


def _term_text(vars: tuple, e: tuple, c: int, first: bool) -> str:
    mono = "*".join(
        v if k == 1 else f"{v}^{k}" for v, k in zip(vars, e) if k
    )
    mag = abs(c)
    if mono and mag == 1:
        body = mono
    elif mono:
        body = f"{mag}*{mono}"
    else:
        body = str(mag)
    if first:
        return f"-{body}" if c < 0 else body
    return f"-{body}" if c < 0 else f"+{body}"


def poly_text(p: IntPoly, style: str = "poly") -> str:
    """Render a polynomial; style 'poly' sorts descending, 'factor' ascending."""
    if p.is_zero:
        return "0"
    terms = sorted(p.terms(), key=_term_key, reverse=(style == "poly"))
    out = []
    for i, (e, c) in enumerate(terms):
        out.append(_term_text(p.vars, e, c, i == 0))
    return "".join(out)


def _num_text(p: IntPoly) -> str:
    mono, core = _split_monomial(p)
    c = core.content()
    core = core.div_int(c)
    sign, core = _sign_canon(core)
    parts = []
    if c != 1 or (not mono and core == 1):
        parts.append(str(c))
    for v in VAR_ORDER:
        k = mono.get(v)
        if k:
            parts.append(v if k == 1 else f"{v}^{k}")
    if core != 1:
        text = poly_text(core)
        parts.append(text if not parts and sign > 0 else f"({text})")
    body = "*".join(parts)
    return f"-{body}" if sign < 0 else body


def rat_text(f: RatFunc) -> str:
    """The canonical one-line form of a rational function."""
    if f.is_zero:
        return "0"
    if not f.factors and f.den_const == 1:
        return poly_text(f.num)
    dparts = []
    if f.den_const != 1:
        dparts.append(str(f.den_const))
    for poly, e in f.factors:
        base = f"({poly_text(poly, style='factor')})"
        dparts.append(base if e == 1 else f"{base}^{e}")
    return f"({_num_text(f.num)})/({'*'.join(dparts)})"


# ----------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([tsxy])|([()^*/+-]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ValueError(f"cannot tokenize {text[pos:]!r}")
                break
            pos = m.end()
            if m.group(1):
                self.tokens.append(("int", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("var", m.group(2)))
            else:
                self.tokens.append(("op", m.group(3)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, found {val!r}")

    def parse(self) -> RatFunc:
        out = self.sum_()
        if self.peek()[0] != "end":
            raise ValueError(f"trailing input at token {self.i}")
        return out

    def sum_(self) -> RatFunc:
        acc = self.product()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.product()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def product(self) -> RatFunc:
        acc = self.signed()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.signed()
                acc = acc * rhs if val == "*" else acc / rhs
            else:
                return acc

    def signed(self) -> RatFunc:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.signed()
            return inner if val == "+" else -inner
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            neg = False
            if k2 == "op" and v2 == "-":
                neg = True
                k2, v2 = self.take()
            if k2 != "int":
                raise ValueError("exponent must be an integer")
            return base ** (-v2 if neg else v2)
        return base

    def atom(self) -> RatFunc:
        kind, val = self.take()
        if kind == "int":
            return RatFunc(val)
        if kind == "var":
            return RatFunc(IntPoly.variable(val))
        if kind == "op" and val == "(":
            inner = self.sum_()
            self.expect(")")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def parse_rat(text: str) -> RatFunc:
    """Parse the canonical grammar (or any +,-,*,/,^ expression) to a RatFunc."""
    return _Parser(text).parse()


def parse_poly(text: str) -> IntPoly:
    """Parse a polynomial; raises if the expression has a denominator."""
    return parse_rat(text).as_poly()
