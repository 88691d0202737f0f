"""Recursive-descent parser for polynomial text.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*        # '/' only by constants
    power  := atom ['^' INT]                  # '**' is accepted for '^'
    atom   := NUMBER | 'sqrt' '(' expr ')' | VAR | '(' expr ')'

``sqrt`` takes a constant argument.  Square roots that are not already in
the active tower extend it by a new radicand.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from ..errors import PolySyntaxError, UnknownVariable
from .field import TowerContext, inverse
from .poly import HomoPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], context: TowerContext):
        self.text = text
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.context = context
        self.tokens = _tokenize(text)
        self.i = 0

    # polynomials are dicts {exponents: coefficient} while parsing
    def _const(self, c):
        return {(0,) * self.nvars: c} if c != 0 else {}

    def _is_const(self, p):
        return all(sum(e) == 0 for e in p)

    def _const_value(self, p):
        return p.get((0,) * self.nvars, Fraction(0))

    @staticmethod
    def _add(p, q, sign=1):
        out = dict(p)
        for e, c in q.items():
            s = out.get(e, Fraction(0)) + (c if sign > 0 else -c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return out

    @staticmethod
    def _mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return {e: c for e, c in out.items() if c != 0}

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.advance()
        if kind != "op" or val != value:
            raise PolySyntaxError(f"expected {value!r}", self.text, pos)

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {val!r}", self.text, pos)
        return p

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.advance()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = {e: -c for e, c in p.items()}
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                p = self._add(p, self.term(), 1 if val == "+" else -1)
            else:
                return p

    def term(self):
        p = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                p = self._mul(p, self.power())
            elif kind == "op" and val == "/":
                self.advance()
                q = self.power()
                if not self._is_const(q):
                    raise PolySyntaxError("division by a non-constant", self.text, pos)
                c = self._const_value(q)
                if c == 0:
                    raise PolySyntaxError("division by zero", self.text, pos)
                inv = inverse(c)
                p = {e: v * inv for e, v in p.items()}
            else:
                return p

    def power(self):
        p = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            kind, n, npos = self.advance()
            if kind != "num":
                raise PolySyntaxError("expected an integer exponent", self.text, npos)
            out = self._const(Fraction(1))
            for _ in range(n):
                out = self._mul(out, p)
            return out
        return p

    def atom(self):
        kind, val, pos = self.advance()
        if kind == "num":
            return self._const(Fraction(val))
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "id":
            if val == "sqrt":
                self.expect("(")
                arg_pos = self.peek()[2]
                arg = self.expr()
                self.expect(")")
                if not self._is_const(arg):
                    raise PolySyntaxError("sqrt of a non-constant", self.text, arg_pos)
                return self._const(self.context.sqrt(self._const_value(arg)))
            if val not in self.variables:
                raise UnknownVariable(
                    f"unknown variable {val!r} at position {pos}; expected one of {self.variables}"
                )
            exps = tuple(1 if v == val else 0 for v in self.variables)
            return {exps: Fraction(1)}
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", self.text, pos)
        raise PolySyntaxError(f"unexpected token {val!r}", self.text, pos)


def parse_poly(text: str, variables: Sequence[str], context: TowerContext | None = None) -> HomoPoly:
    """Parse ``text`` into a homogeneous polynomial in ``variables``."""
    ctx = context or TowerContext()
    terms = _Parser(text, variables, ctx).parse()
    return HomoPoly(variables, terms)


def parse_scalar(text: str, context: TowerContext | None = None):
    """Parse a constant expression such as ``"sqrt(2)/2"``."""
    ctx = context or TowerContext()
    parser = _Parser(text, (), ctx)
    p = parser.parse()
    return p.get((), Fraction(0))
