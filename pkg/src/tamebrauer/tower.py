"""Index computations over F_q((t1)) and F_q((t1))((t2)).

Elements are monomials c * t1^a * t2^b with c in F_q.  The engine peels the
outermost parameter: a class A = sum (u pi^i, w pi^j) splits as
A' + (gamma, pi) with A' = sum (u, w) unramified and
gamma = prod (-1)^(ij) u^j w^(-i).  If gamma has order d modulo n-th powers,
the index of A is d times the index of A' over the residue tower extended by
a root of gamma, and the recursion continues there.

The residue tower after such an extension is again a monomial tower: the
constants grow from F_{q^f} to F_{q^{f d/e}} and the inner parameter is
replaced by a root s with t1 = (const) * s^e, where e is the ramification of
the root extension.  The constant factor only ever meets other constants and
so drops out; the substitution is t1 -> s^e.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import divisors, lcm
from .errors import ParseError, PreconditionViolated, RootsOfUnityMissing, ZeroElement
from .finite_field import FFElem, FiniteField, parse_field
from .parser import ConstantDomain, Parser, split_top_level
from .rng import LCG64


@dataclass(frozen=True)
class TowerField:
    base: FiniteField
    params: tuple = ("t1", "t2")

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) > 2:
            raise ValueError("towers deeper than two parameters are not supported")
        if len(set(self.params)) != len(self.params):
            raise ValueError("parameter names must be distinct")

    @property
    def depth(self):
        return len(self.params)

    def __str__(self):
        inner = "".join(f"(({p}))" for p in self.params)
        return f"{self.base}{inner}"


@dataclass(frozen=True)
class MonomialElem:
    c: FFElem
    exps: tuple

    def __post_init__(self):
        if self.c.is_zero():
            raise ZeroElement("monomial coefficient must be nonzero")
        object.__setattr__(self, "exps", tuple(self.exps))

    def __mul__(self, other):
        if not isinstance(other, MonomialElem):
            return NotImplemented
        return MonomialElem(self.c * other.c, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other):
        return self * other ** -1

    def __pow__(self, k):
        return MonomialElem(self.c**k, tuple(a * k for a in self.exps))

    def __neg__(self):
        return MonomialElem(-self.c, self.exps)

    def __add__(self, other):
        raise TypeError("sums of monomials are not monomials")

    __sub__ = __add__

    def drop_last(self):
        return MonomialElem(self.c, self.exps[:-1])

    def format(self, params):
        parts = [] if (self.c.value == 1 and any(self.exps)) else [str(self.c)]
        for name, k in zip(params, self.exps):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)


@dataclass(frozen=True)
class TowerClass:
    tower: TowerField
    n: int
    symbols: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        if (self.tower.base.q - 1) % self.n:
            raise RootsOfUnityMissing(f"{self.n} does not divide {self.tower.base.q - 1}")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        m = self.tower.depth
        for a, b in self.symbols:
            if len(a.exps) != m or len(b.exps) != m:
                raise ValueError("monomial exponent vector does not match the tower depth")

    def __mul__(self, other):
        return TowerClass(self.tower, self.n, self.symbols + other.symbols)

    def opposite(self):
        return TowerClass(self.tower, self.n, tuple((b, a) for a, b in self.symbols))

    def format(self):
        P = self.tower.params
        head = [str(self.n), f"base={self.tower.base}", "params=" + ",".join(P)]
        return "; ".join(head + [f"({a.format(P)}, {b.format(P)})" for a, b in self.symbols])

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class TowerNormalForm:
    """A = (a1, t1) + (a2, t2) + r (t1, t2), up to split unit-unit symbols."""

    a1: FFElem
    a2: FFElem | None
    r: int | None


@dataclass(frozen=True)
class PeelStep:
    param: str
    residue: str
    d: int
    f_before: int
    f_after: int
    e: int


@dataclass(frozen=True)
class TowerIndexReport:
    index: int
    trace: tuple


# -- constant power classes ------------------------------------------------------


def constant_class_order(c: FFElem, n: int, f: int = 1) -> int:
    """Order of c (in F_q) in F_{q^f}* / (F_{q^f}*)^n, for n | q - 1."""
    F = c.field
    k = F.raw_dlog(c.value)
    Q = F.q**f
    for j in divisors(n):
        if (k * j * ((Q - 1) // n)) % (F.q - 1) == 0:
            return j
    raise AssertionError("unreachable")


def monomial_class_order(g: MonomialElem, n: int, f: int = 1) -> int:
    """Order of a monomial modulo n-th powers in F_{q^f}((t1))...; exponents count fully."""
    return lcm(constant_class_order(g.c, n, f), *(n // gcd(n, k) for k in g.exps))


# -- residue and peeling ---------------------------------------------------------------


def _residue_monomial(symbols, base):
    """gamma for the outermost parameter, as a monomial over the residue tower."""
    m = len(symbols[0][0].exps) if symbols else 0
    gamma = MonomialElem(base.one(), (0,) * (m - 1))
    for a, b in symbols:
        i, j = a.exps[-1], b.exps[-1]
        term = a.drop_last() ** j / b.drop_last() ** i
        if (i * j) % 2:
            term = -term
        gamma = gamma * term
    return gamma


def tower_residue(A: TowerClass, f: int = 1):
    """Residue at the outermost parameter: ``(gamma, d)``."""
    if A.tower.depth == 0:
        raise PreconditionViolated("a finite field has no parameter to take residues at")
    gamma = _residue_monomial(A.symbols, A.tower.base)
    return gamma, monomial_class_order(gamma, A.n, f)


def _peel(symbols, base, params, n, f, trace):
    depth = len(params)
    if depth == 0 or not symbols:
        return 1
    gamma = _residue_monomial(symbols, base)
    d = monomial_class_order(gamma, n, f)
    rest = [(a.drop_last(), b.drop_last()) for a, b in symbols]
    inner = params[:-1]
    return d * _extend_and_recurse(rest, base, inner, n, f, gamma, d, params[-1], trace)


def _extend_and_recurse(rest, base, params, n, f, gamma, d, name, trace):
    """Index of the unramified part ``rest`` over its residue tower extended by gamma^(1/n)."""
    if not params:
        trace.append(PeelStep(name, gamma.format(params), d, f, f * d, 1))
        return 1
    e = n // gcd(n, gamma.exps[-1])
    f2 = f * (d // e)
    trace.append(PeelStep(name, gamma.format(params), d, f, f2, e))
    if e > 1:
        rest = [(_stretch(a, e), _stretch(b, e)) for a, b in rest]
    return _peel(rest, base, params, n, f2, trace)


def _stretch(mono, e):
    return MonomialElem(mono.c, mono.exps[:-1] + (mono.exps[-1] * e,))


def tower_index_report(A: TowerClass) -> TowerIndexReport:
    trace = []
    index = _peel(list(A.symbols), A.tower.base, A.tower.params, A.n, 1, trace)
    return TowerIndexReport(index, tuple(trace))


def tower_index(A: TowerClass) -> int:
    return tower_index_report(A).index


def complete_index(A: TowerClass) -> int:
    if A.tower.depth != 1:
        raise PreconditionViolated("complete_index needs a single parameter")
    return tower_index(A)


def index_with_cyclic_twist(A_unram: TowerClass, gamma: MonomialElem) -> int:
    """index(A_unram tensor E) * [E : K] for E = K(gamma^(1/n)) unramified at the outer parameter.

    ``gamma`` lives on the residue tower (one parameter fewer than A_unram).
    """
    tower = A_unram.tower
    if tower.depth == 0:
        raise PreconditionViolated("twisting needs a parameter")
    res, d_res = tower_residue(A_unram)
    if d_res != 1:
        raise PreconditionViolated(f"class is ramified at {tower.params[-1]} (residue {res.format(tower.params[:-1])})")
    if len(gamma.exps) != tower.depth - 1:
        raise ValueError("twist radicand must live on the residue tower")
    n = A_unram.n
    d = monomial_class_order(gamma, n)
    rest = [(a.drop_last(), b.drop_last()) for a, b in A_unram.symbols]
    trace = []
    return d * _extend_and_recurse(rest, tower.base, tower.params[:-1], n, 1, gamma, d, tower.params[-1], trace)


# -- normal forms ----------------------------------------------------------------------


def canonicalize(A: TowerClass) -> TowerNormalForm:
    """Expand every symbol bilinearly; unit-unit symbols are split and dropped."""
    F = A.tower.base
    m = A.tower.depth
    a1, a2, r = F.one(), F.one(), 0
    minus = F(-1)
    for x, y in A.symbols:
        c, cp = x.c, y.c
        if m >= 1:
            a, ap = x.exps[0], y.exps[0]
            a1 = a1 * c**ap / cp**a * minus ** (a * ap)
        if m == 2:
            b, bp = x.exps[1], y.exps[1]
            a2 = a2 * c**bp / cp**b * minus ** (b * bp)
            r += a * bp - b * ap
    if m == 0:
        return TowerNormalForm(F.one(), None, None)
    if m == 1:
        return TowerNormalForm(a1, None, None)
    return TowerNormalForm(a1, a2, r % A.n)


def normal_form_class(A: TowerClass) -> TowerClass:
    """The canonical form rebuilt as a class on the same tower."""
    nf = canonicalize(A)
    F = A.tower.base
    m = A.tower.depth
    one = F.one()
    if m == 0:
        return TowerClass(A.tower, A.n, ())
    unit = (0,) * m
    t1 = tuple(1 if i == 0 else 0 for i in range(m))
    syms = [(MonomialElem(nf.a1, unit), MonomialElem(one, t1))]
    if m == 2:
        syms.append((MonomialElem(nf.a2, unit), MonomialElem(one, (0, 1))))
        syms.append((MonomialElem(one, t1) ** nf.r, MonomialElem(one, (0, 1))))
    return TowerClass(A.tower, A.n, tuple(syms))


# -- text form -----------------------------------------------------------------------------


class MonomialDomain(ConstantDomain):
    def __init__(self, field, params):
        super().__init__(field)
        self.params = params

    def integer(self, k):
        return MonomialElem(self.field(k), (0,) * len(self.params)) if k % self.field.p else self.field.zero()

    def name(self, text):
        if text in self.params:
            exps = tuple(1 if p == text else 0 for p in self.params)
            return MonomialElem(self.field.one(), exps)
        g = super().name(text)
        if g is not None:
            return MonomialElem(g, (0,) * len(self.params))
        return None

    @staticmethod
    def is_zero(value):
        return isinstance(value, FFElem)


def parse_monomial(src: str, tower: TowerField) -> MonomialElem:
    try:
        value = Parser(src, MonomialDomain(tower.base, tower.params)).parse()
    except (TypeError, ZeroElement, AttributeError):
        raise ParseError(f"{src.strip()!r} is not a nonzero monomial", 0, src) from None
    if not isinstance(value, MonomialElem):
        raise ParseError(f"{src.strip()!r} is not a nonzero monomial", 0, src)
    return value


def parse_tower_class(text: str) -> TowerClass:
    """``"n; base=GF(q); params=t1,t2; (a, b); ..."``."""
    pieces = split_top_level(text, ";")
    try:
        n = int(pieces[0][0].strip())
    except ValueError:
        raise ParseError("expected the modulus n first", pieces[0][1], text) from None
    base, params, symbol_pieces = None, ("t1", "t2"), []
    for piece, offset in pieces[1:]:
        body = piece.strip()
        if body.startswith("base="):
            base = parse_field(body[5:])
        elif body.startswith("params="):
            names = tuple(p.strip() for p in body[7:].split(",") if p.strip())
            params = names
        elif body:
            symbol_pieces.append((body, offset + piece.index(body[0])))
    if base is None:
        raise ParseError("missing base=GF(q)", len(text), text)
    tower = TowerField(base, params)
    symbols = []
    for body, pos in symbol_pieces:
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError("expected a parenthesised pair (a, b)", pos, text)
        parts = split_top_level(body[1:-1], ",")
        if len(parts) != 2:
            raise ParseError("expected exactly two entries in a symbol", pos, text)
        pair = []
        for src, off in parts:
            try:
                pair.append(parse_monomial(src, tower))
            except ParseError as exc:
                raise ParseError(str(exc).split(" at position")[0], pos + 1 + off, text) from None
        symbols.append(tuple(pair))
    return TowerClass(tower, n, tuple(symbols))


def random_tower_class(base: FiniteField, n: int, rng: LCG64, depth=2, max_symbols=3, max_exp=3) -> TowerClass:
    def mono():
        c = FFElem(base, rng.randint(1, base.q - 1))
        return MonomialElem(c, tuple(rng.randint(-max_exp, max_exp) for _ in range(depth)))

    params = ("t1", "t2")[:depth]
    count = rng.randint(1, max_symbols)
    return TowerClass(TowerField(base, params), n, tuple((mono(), mono()) for _ in range(count)))
