"""Symbol algebras over F_q(t): tame residues, local invariants, indices.

The residue of (a, b)_n at a place v is the tame symbol

    (-1)^(v(a) v(b)) * a^v(b) / b^v(a)   evaluated in kappa(v),

a class in kappa(v)*/kappa(v)*^n.  Since mu_n lies in F_q, the Frobenius of
kappa(v) acts on a root of c by the root of unity c^((Q-1)/n), which equals
N(c)^((q-1)/n) for the norm N down to F_q.  Writing that as zeta^i with
zeta = g^((q-1)/n) gives the local invariant i = dlog_g N(c) mod n.  Weil
reciprocity (the product of the norms of all tame symbols is 1) makes the
invariants of any class sum to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith import additive_order, lcm, prime_power
from .errors import NotPrimePower, ParseError, RootsOfUnityMissing, ZeroFunction
from .finite_field import FiniteField
from .parser import parse, split_top_level
from .poly import Poly
from .ratfunc import Place, RatFunc, ResidueElem, residue_at, support, unit_part, valuation
from .rng import LCG64


@dataclass(frozen=True)
class SymbolAlg:
    a: RatFunc
    b: RatFunc
    n: int

    def __post_init__(self):
        if self.a.is_zero() or self.b.is_zero():
            raise ZeroFunction("symbol entries must be nonzero")
        _check_roots(self.a.field, self.n)

    @property
    def field(self):
        return self.a.field

    def opposite(self):
        return SymbolAlg(self.b, self.a, self.n)

    def format(self, var="t"):
        return f"({self.a.format(var)}, {self.b.format(var)})"


@dataclass(frozen=True)
class BrauerClassGlobal:
    field: FiniteField
    n: int
    symbols: tuple = ()

    def __post_init__(self):
        _check_roots(self.field, self.n)
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if s.n != self.n or s.field != self.field:
                raise ValueError("all symbols must share the field and modulus")

    @classmethod
    def from_pairs(cls, field, n, pairs):
        return cls(field, n, tuple(SymbolAlg(a, b, n) for a, b in pairs))

    def __mul__(self, other):
        return BrauerClassGlobal(self.field, self.n, self.symbols + other.symbols)

    def opposite(self):
        return BrauerClassGlobal(self.field, self.n, tuple(s.opposite() for s in self.symbols))

    def format(self, var="t"):
        return "; ".join([str(self.n)] + [s.format(var) for s in self.symbols])

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class LocalDatum:
    place: Place
    residue: ResidueElem
    invariant: int
    index: int = dc_field(compare=False)


def _check_roots(field, n):
    if n < 1:
        raise ValueError("modulus must be positive")
    if (field.q - 1) % n:
        raise RootsOfUnityMissing(f"{n} does not divide {field.q - 1}: no primitive {n}-th root of unity in {field}")


# -- residues --------------------------------------------------------------------


def residue_symbol(s: SymbolAlg, v: Place, signed=True) -> ResidueElem:
    """Tame symbol of (a, b) at v; ``signed=False`` drops the (-1)^(v(a)v(b)) factor."""
    alpha, beta = valuation(s.a, v), valuation(s.b, v)
    u = residue_at(unit_part(s.a, v), v)
    w = residue_at(unit_part(s.b, v), v)
    value = u**beta / w**alpha
    if signed and alpha * beta % 2:
        value = value * residue_at(RatFunc.const(s.field, -1), v)
    return value


def combined_residue(A: BrauerClassGlobal, v: Place, signed=True) -> ResidueElem:
    value = v.residue_field().one()
    for s in A.symbols:
        value = value * residue_symbol(s, v, signed)
    return value


def places_of(A: BrauerClassGlobal):
    """Every place where some symbol entry has a zero or pole, plus Infinity."""
    funcs = [f for s in A.symbols for f in (s.a, s.b)]
    if not funcs:
        return [Place.infinity(A.field)]
    return support(*funcs)


def invariant_of_residue(c: ResidueElem, n: int) -> int:
    F = c.field.base
    return F.raw_dlog(c.norm().value) % n


def local_invariant(A: BrauerClassGlobal, v: Place, signed=True) -> int:
    return invariant_of_residue(combined_residue(A, v, signed), A.n)


def local_index(A: BrauerClassGlobal, v: Place) -> int:
    return additive_order(local_invariant(A, v), A.n)


def local_index_direct(A: BrauerClassGlobal, v: Place) -> int:
    """Local index from the order of the residue class, without discrete logs."""
    return combined_residue(A, v).power_class_order(A.n)


def local_data(A: BrauerClassGlobal, signed=True):
    out = []
    for v in places_of(A):
        c = combined_residue(A, v, signed)
        inv = invariant_of_residue(c, A.n)
        out.append(LocalDatum(v, c, inv, additive_order(inv, A.n)))
    return out


def ramification_divisor(A: BrauerClassGlobal, signed=True):
    return [(d.place, d.residue) for d in local_data(A, signed) if d.invariant]


def global_index(A: BrauerClassGlobal) -> int:
    return lcm(*(d.index for d in local_data(A)))


def global_index_direct(A: BrauerClassGlobal) -> int:
    return lcm(*(local_index_direct(A, v) for v in places_of(A)))


def reciprocity_check(A: BrauerClassGlobal, signed=True, degree_weighted=False) -> bool:
    """Whether the local invariants sum to zero in Z/n.

    ``degree_weighted`` multiplies each invariant by the degree of its place
    first; that variant is wrong for this normalisation (the norm map already
    accounts for the residue degree) and exists only for comparison.
    """
    total = 0
    for d in local_data(A, signed):
        total += d.invariant * (d.place.degree if degree_weighted else 1)
    return total % A.n == 0


def hasse_witness(A: BrauerClassGlobal) -> Place:
    """First place, in canonical order, whose local index equals the global index."""
    if prime_power(A.n) is None and A.n != 1:
        raise NotPrimePower(f"{A.n} is not a prime power")
    data = local_data(A)
    target = lcm(*(d.index for d in data))
    if target == 1:
        return Place.infinity(A.field)
    for d in data:
        if d.index == target:
            return d.place
    raise AssertionError("no place attains the global index")


# -- text form and random classes --------------------------------------------------


def parse_class(text: str, field: FiniteField, var="t") -> BrauerClassGlobal:
    """``"n; (a1, b1); (a2, b2); ..."`` with entries in the rational-function grammar."""
    pieces = split_top_level(text, ";")
    head, head_pos = pieces[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise ParseError("expected the modulus n before the first ';'", head_pos, text) from None
    pairs = []
    for piece, offset in pieces[1:]:
        body = piece.strip()
        if not body:
            continue
        lead = offset + piece.index(body[0])
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError("expected a parenthesised pair (a, b)", lead, text)
        parts = split_top_level(body[1:-1], ",")
        if len(parts) != 2:
            raise ParseError("expected exactly two entries in a symbol", lead, text)
        entries = []
        for src, off in parts:
            try:
                entries.append(parse(src, field, var))
            except ParseError as exc:
                pos = None if exc.position is None else lead + 1 + off + exc.position
                raise type(exc)(str(exc).split(" at position")[0], pos, text) from None
        pairs.append(tuple(entries))
    return BrauerClassGlobal.from_pairs(field, n, pairs)


def random_ratfunc(field: FiniteField, rng: LCG64, max_degree=3) -> RatFunc:
    while True:
        num = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(1, max_degree + 1))])
        den = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(1, max_degree + 1))])
        if num and den:
            return RatFunc(num, den)


def random_class(field: FiniteField, n: int, rng: LCG64, max_symbols=3, max_degree=3) -> BrauerClassGlobal:
    count = rng.randint(1, max_symbols)
    pairs = [(random_ratfunc(field, rng, max_degree), random_ratfunc(field, rng, max_degree)) for _ in range(count)]
    return BrauerClassGlobal.from_pairs(field, n, pairs)
