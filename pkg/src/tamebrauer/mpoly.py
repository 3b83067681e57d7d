"""Sparse multivariate polynomials and fractions over F_q, for certificate checks.

Only what the certificate verifier needs: ring arithmetic, substitution of
variables by fractions, valuations along one variable, and reduction modulo
one variable into a univariate :class:`RatFunc`.
"""

from __future__ import annotations

from .errors import NotAUnit, ParseError, ZeroFunction
from .finite_field import FiniteField
from .parser import Parser
from .poly import Poly
from .ratfunc import RatFunc


class MPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: FiniteField, vars, terms=None):
        self.field = field
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, field, vars, c):
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, field, vars, name):
        vars = tuple(vars)
        return cls(field, vars, {tuple(1 if v == name else 0 for v in vars): 1})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return MPoly(F, self.vars, out)

    def __neg__(self):
        F = self.field
        return MPoly(F, self.vars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return MPoly(F, self.vars, out)

    def __pow__(self, k):
        result = MPoly.const(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def min_degree(self, name):
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def shift_down(self, name, k):
        """Divide by name^k (all exponents of ``name`` must be at least k)."""
        i = self.vars.index(name)
        return MPoly(self.field, self.vars, {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in self.terms.items()})

    def set_zero(self, name):
        i = self.vars.index(name)
        return MPoly(self.field, self.vars, {e: c for e, c in self.terms.items() if e[i] == 0})

    def to_poly(self, name) -> Poly:
        """Univariate polynomial in ``name``; every other variable must be absent."""
        i = self.vars.index(name)
        coeffs = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial still involves variables other than {name}")
            coeffs[e[i]] = c
        top = max(coeffs, default=-1)
        return Poly(self.field, [coeffs.get(k, 0) for k in range(top + 1)])

    def evaluate(self, values):
        """Substitute ``values[name]`` (fractions in a common target ring) for every variable."""
        F = self.field
        acc = None
        for e, c in sorted(self.terms.items()):
            term = None
            for name, k in zip(self.vars, e):
                if k:
                    p = values[name] ** k
                    term = p if term is None else term * p
            cst = values["__one__"].scale(c)
            term = cst if term is None else term * cst
            acc = term if acc is None else acc + term
        return acc if acc is not None else values["__one__"].scale(0)

    def format(self):
        F = self.field
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = F.format_raw(c)
            parts.append(mono if (mono and c == 1) else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(parts)


class MRat:
    """A fraction of two :class:`MPoly`; equality is by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.const(num.field, num.vars, 1)
        if den.is_zero():
            raise ZeroFunction("zero denominator")
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return isinstance(other, MRat) and self.num * other.den == other.num * self.den

    def __add__(self, other):
        return MRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return MRat(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return MRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroFunction("division by zero")
        return MRat(self.num * other.den, self.den * other.num)

    def __pow__(self, k):
        if k < 0:
            if self.is_zero():
                raise ZeroFunction("negative power of zero")
            return MRat(self.den**-k, self.num**-k)
        return MRat(self.num**k, self.den**k)

    def scale(self, c):
        F = self.field
        return MRat(MPoly(F, self.vars, {e: F.mul(c, v) for e, v in self.num.terms.items()}), self.den)

    def valuation(self, name) -> int:
        """Order of vanishing along ``name`` = 0, other variables treated as constants."""
        if self.is_zero():
            raise ZeroFunction("valuation of zero")
        return self.num.min_degree(name) - self.den.min_degree(name)

    def residue(self, name) -> MRat:
        """Image modulo ``name`` of a unit along ``name``."""
        if self.valuation(name) != 0:
            raise NotAUnit(f"not a unit along {name}")
        num = self.num.shift_down(name, self.num.min_degree(name)).set_zero(name)
        den = self.den.shift_down(name, self.den.min_degree(name)).set_zero(name)
        return MRat(num, den)

    def substitute(self, values: dict, target_vars) -> MRat:
        """Replace each variable by a fraction over ``target_vars`` (missing names map to themselves)."""
        F = self.field
        target_vars = tuple(target_vars)
        vals = {}
        for v in self.vars:
            vals[v] = values[v] if v in values else MRat(MPoly.var(F, target_vars, v))
        vals["__one__"] = MRat(MPoly.const(F, target_vars, 1))
        return self.num.evaluate(vals) / self.den.evaluate(vals)

    def to_ratfunc(self, name) -> RatFunc:
        return RatFunc(self.num.to_poly(name), self.den.to_poly(name))

    def format(self):
        n, d = self.num.format(), self.den.format()
        if d == "1":
            return n
        wrap = lambda p, text: f"({text})" if len(p.terms) > 1 or "*" in text else text
        return f"{wrap(self.num, n)}/{wrap(self.den, d)}"

    def __str__(self):
        return self.format()


class MRatDomain:
    def __init__(self, field: FiniteField, vars):
        self.field = field
        self.vars = tuple(vars)

    def integer(self, k):
        return MRat(MPoly.const(self.field, self.vars, self.field.from_int(k)))

    def name(self, text):
        if text in self.vars:
            return MRat(MPoly.var(self.field, self.vars, text))
        if text == "g" and self.field.e > 1:
            return MRat(MPoly.const(self.field, self.vars, self.field.generator))
        return None

    @staticmethod
    def is_zero(value):
        return value.is_zero()


def parse_mrat(src: str, field: FiniteField, vars) -> MRat:
    try:
        return Parser(src, MRatDomain(field, vars)).parse()
    except ZeroFunction as exc:
        raise ParseError(str(exc), 0, src) from None
