"""Recursive-descent parser for rational expressions.

Grammar::

    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-"? factor
    factor := base ("^" integer)?
    base   := variable | "g" | integer | "(" expr ")"

The parser is independent of the value domain: a domain object supplies
leaves (integers, the field generator, named variables), and the values it
returns must support ``+ - * / **`` and unary minus.
"""

from __future__ import annotations

import re

from .errors import DivisionByZeroPolynomial, ParseError
from .finite_field import FFElem, FiniteField
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(src: str):
    """List of ``(kind, text, position)``; kinds are ``int``, ``name``, ``op``, ``end``."""
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(src, pos)
        if not m:
            break
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), src)
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class Parser:
    def __init__(self, src: str, domain):
        self.src = src
        self.domain = domain
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def _fail(self, message, pos=None):
        raise ParseError(message, self.tok[2] if pos is None else pos, self.src)

    def _accept(self, op):
        kind, text, _ = self.tok
        if kind == "op" and text == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.tok[0] == "end":
            self._fail("empty expression")
        value = self.expr()
        if self.tok[0] != "end":
            self._fail(f"unexpected {self.tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self._accept("+"):
                value = value + self.term()
            elif self._accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self._accept("*"):
                value = value * self.unary()
            elif self.tok[:2] == ("op", "/"):
                pos = self.tok[2]
                self.i += 1
                divisor = self.unary()
                if self.domain.is_zero(divisor):
                    raise DivisionByZeroPolynomial("division by zero", pos, self.src)
                value = value / divisor
            else:
                return value

    def unary(self):
        if self._accept("-"):
            return -self.factor()
        return self.factor()

    def factor(self):
        value = self.base()
        if self._accept("^"):
            sign = -1 if self._accept("-") else 1
            kind, text, pos = self.tok
            if kind != "int":
                self._fail("expected integer exponent")
            self.i += 1
            k = sign * int(text)
            if k < 0 and self.domain.is_zero(value):
                raise DivisionByZeroPolynomial("negative power of zero", pos, self.src)
            value = value**k
        return value

    def base(self):
        kind, text, pos = self.tok
        if kind == "int":
            self.i += 1
            return self.domain.integer(int(text))
        if kind == "name":
            self.i += 1
            value = self.domain.name(text)
            if value is None:
                self._fail(f"unknown identifier {text!r}", pos)
            return value
        if self._accept("("):
            value = self.expr()
            if not self._accept(")"):
                self._fail("expected ')'")
            return value
        if kind == "end":
            self._fail("unexpected end of input")
        self._fail(f"unexpected {text!r}")


class RatFuncDomain:
    """Leaves for F_q(var): integers reduce into the prime field, ``g`` is the generator."""

    def __init__(self, field: FiniteField, var="t"):
        self.field = field
        self.var = var

    def integer(self, k):
        from .ratfunc import RatFunc

        return RatFunc.const(self.field, k)

    def name(self, text):
        from .ratfunc import RatFunc

        if text == self.var:
            return RatFunc.t(self.field)
        if text == "g" and self.field.e > 1:
            return RatFunc(Poly(self.field, [self.field.generator]))
        return None

    @staticmethod
    def is_zero(value):
        return value.is_zero()


class ConstantDomain:
    """Field constants only, as :class:`FFElem` values."""

    def __init__(self, field: FiniteField):
        self.field = field

    def integer(self, k):
        return self.field(k)

    def name(self, text):
        if text == "g" and self.field.e > 1:
            return self.field.gen()
        return None

    @staticmethod
    def is_zero(value):
        return value.is_zero()


def parse(src: str, field: FiniteField, var="t"):
    """Parse ``src`` as an element of F_q(var), returned in canonical form."""
    return Parser(src, RatFuncDomain(field, var)).parse()


def parse_constant(src: str, field: FiniteField) -> FFElem:
    return Parser(src, ConstantDomain(field)).parse()


def split_top_level(text: str, sep: str):
    """Split on ``sep`` outside parentheses, keeping the start offset of each piece."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return pieces
