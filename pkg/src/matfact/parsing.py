"""Polynomial text syntax.

Grammar (whitespace is ignored between tokens)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor (["*"] factor)*
    factor := "-" factor | atom ["^" INT]
    atom   := INT ["/" INT] | NAME | "(" expr ")"

``*`` is optional: ``2x y^2`` is ``2*x*y^2``. ``INT/INT`` is a rational
literal; over GF(p) it is reduced modulo p.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PolySyntaxError
from .poly import Poly, Ring

_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        col = pos + 1
        if m := _INT.match(text, pos):
            tokens.append(("INT", m.group(), col))
            pos = m.end()
        elif m := _NAME.match(text, pos):
            tokens.append(("NAME", m.group(), col))
            pos = m.end()
        elif ch in "+-*^()/":
            tokens.append((ch, ch, col))
            pos += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", col)
    tokens.append(("END", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("INT", "NAME", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "INT":
                raise PolySyntaxError("expected integer exponent after '^'", tok[2])
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok[0] == "INT":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.take("INT")
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2])
                value = value / int(den[1])
            return self.ring.const(value)
        if tok[0] == "NAME":
            self.take()
            if tok[1] not in self.ring.variables:
                raise PolySyntaxError(f"unknown variable {tok[1]!r}", tok[2])
            return self.ring.var(tok[1])
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if tok[0] == "END" else repr(tok[1])
        raise PolySyntaxError(f"unexpected {what}", tok[2])


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ``text`` into a polynomial of ``ring``; raises :class:`PolySyntaxError`."""
    if not text.strip():
        raise PolySyntaxError("empty polynomial", 1)
    p = _Parser(text, ring)
    result = p.expr()
    tok = p.peek()
    if tok[0] != "END":
        raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return result
