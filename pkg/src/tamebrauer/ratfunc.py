"""Rational functions over F_q, places of the projective line, valuations.

A :class:`RatFunc` is kept in lowest terms with a monic denominator, so equal
functions have identical ``(num, den)`` pairs.
"""

from __future__ import annotations

from math import gcd

from .arith import divisors, lcm
from .errors import NotAUnit, NotIrreducible, RootsOfUnityMissing, ZeroFunction, ZeroPolynomial
from .finite_field import FFElem, FiniteField, power_class_order
from .poly import VAR, Poly, factor, inverse_mod, is_irreducible, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        F = num.field
        if den is None:
            den = Poly.const(F, 1)
        if not den:
            raise ZeroPolynomial("denominator is the zero polynomial")
        if not num:
            num, den = Poly(F), Poly.const(F, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c))

    @classmethod
    def t(cls, field):
        return cls(Poly.x(field))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, (int, FFElem)):
            other = RatFunc.const(self.field, other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroFunction("zero has no inverse")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def compose(self, g: RatFunc) -> RatFunc:
        """Substitute ``g`` for the variable."""
        return _horner(self.num, g) / _horner(self.den, g)

    def format(self, var=VAR):
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        d = self.den.format(var)
        if sum(1 for c in self.num.coeffs if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs if c) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()} over {self.field})"


def _horner(p: Poly, g: RatFunc) -> RatFunc:
    F = p.field
    acc = RatFunc(Poly(F))
    for c in reversed(p.coeffs):
        acc = acc * g + RatFunc(Poly(F, [c]))
    return acc


# -- places -------------------------------------------------------------------


class Place:
    """A closed point of the projective line: ``Place(f)`` or ``Place.infinity(F)``."""

    __slots__ = ("field", "poly")

    def __init__(self, poly: Poly | None, field: FiniteField | None = None, check=True):
        if poly is not None:
            field = poly.field
            if check and (not poly.is_monic() or not is_irreducible(poly)):
                raise NotIrreducible(f"{poly} is not a monic irreducible polynomial")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("Place is immutable")

    @classmethod
    def infinity(cls, field):
        return cls(None, field)

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1,)
        return (0,) + self.poly.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.field == other.field and self.poly == other.poly

    def __hash__(self):
        return hash((self.field, self.poly))

    def format(self, var=VAR):
        return "inf" if self.poly is None else f"({self.poly.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Place{self.format()}"

    def residue_field(self) -> ResidueField:
        F = self.field
        return ResidueField(F, Poly.x(F) if self.poly is None else self.poly)


def support(*funcs: RatFunc):
    """Sorted finite places at which some function has a zero or pole, then Infinity."""
    places = set()
    field = None
    for f in funcs:
        field = f.field
        for p in (f.num, f.den):
            if p.degree > 0:
                for g, _ in factor(p)[1]:
                    places.add(Place(g, check=False))
    if field is None:
        return []
    return sorted(places, key=Place.sort_key) + [Place.infinity(field)]


def valuation(f: RatFunc, v: Place) -> int:
    if not f.num:
        raise ZeroFunction("valuation of zero")
    if v.is_infinity:
        return f.den.degree - f.num.degree
    return f.num.multiplicity(v.poly) - f.den.multiplicity(v.poly)


def uniformizer(v: Place) -> RatFunc:
    F = v.field
    if v.is_infinity:
        return RatFunc(Poly.const(F, 1), Poly.x(F))
    return RatFunc(v.poly)


# -- residue fields -------------------------------------------------------------


class ResidueField:
    """F_q[t]/(f) for a monic irreducible f; elements are reduced polynomials."""

    __slots__ = ("base", "modulus")

    def __init__(self, base: FiniteField, modulus: Poly):
        self.base = base
        self.modulus = modulus

    @property
    def degree(self):
        return self.modulus.degree

    @property
    def order(self):
        return self.base.q**self.degree

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.base == other.base and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.base, self.modulus))

    def __call__(self, poly: Poly) -> ResidueElem:
        return ResidueElem(self, poly % self.modulus)

    def one(self):
        return self(Poly.const(self.base, 1))

    def __str__(self):
        q = self.base.q
        return f"GF({q})" if self.degree == 1 else f"GF({q})[t]/({self.modulus})"


class ResidueElem:
    __slots__ = ("field", "poly")

    def __init__(self, field: ResidueField, poly: Poly):
        self.field = field
        self.poly = poly

    def is_zero(self):
        return not self.poly

    def __eq__(self, other):
        return isinstance(other, ResidueElem) and self.field == other.field and self.poly == other.poly

    def __hash__(self):
        return hash((self.field, self.poly))

    def __mul__(self, other):
        return ResidueElem(self.field, (self.poly * other.poly) % self.field.modulus)

    def inverse(self):
        if not self.poly:
            raise ZeroFunction("zero residue has no inverse")
        return ResidueElem(self.field, inverse_mod(self.poly, self.field.modulus))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return ResidueElem(self.field, self.poly.pow_mod(k, self.field.modulus))

    def is_one(self):
        return self.poly.coeffs == (1,)

    def norm(self) -> FFElem:
        """Norm down to F_q, computed as x^((Q-1)/(q-1))."""
        K = self.field
        q = K.base.q
        n = self ** ((K.order - 1) // (q - 1))
        assert n.poly.degree <= 0
        return FFElem(K.base, n.poly.coeffs[0] if n.poly else 0)

    def power_class_order(self, n: int) -> int:
        """Order of the class in kappa*/kappa*^n, by direct exponentiation."""
        Q = self.field.order
        d = gcd(n, Q - 1)
        for j in divisors(d):
            if (self ** (j * (Q - 1) // d)).is_one():
                return j
        raise AssertionError("unreachable: the full exponent kills every unit")

    def format(self, var=VAR):
        if self.field.degree == 1:
            return self.field.base.format_raw(self.poly.coeffs[0] if self.poly else 0)
        return f"[{self.poly.format(var)}]"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ResidueElem({self} in {self.field})"


def residue_at(f: RatFunc, v: Place) -> ResidueElem:
    """Image of a v-unit in the residue field of v."""
    if not f.num:
        raise NotAUnit("zero is not a unit")
    if valuation(f, v) != 0:
        raise NotAUnit(f"{f} is not a unit at {v}")
    kappa = v.residue_field()
    F = f.field
    if v.is_infinity:
        # In 1/t coordinates both numerator and denominator have the same degree.
        return kappa(Poly(F, [F.div(f.num.lc, f.den.lc)]))
    return kappa(f.num) / kappa(f.den)


def unit_part(f: RatFunc, v: Place) -> RatFunc:
    """f / pi^v(f) for the standard uniformizer of v."""
    return f / uniformizer(v) ** valuation(f, v)


def class_order_global(f: RatFunc, n: int) -> int:
    """Order of the class of f in F_q(t)*/(F_q(t)*)^n.

    F_q(t)* is F_q* times the free abelian group on monic irreducibles, so the
    order is the lcm of the orders of the components.
    """
    if not f.num:
        raise ZeroFunction("zero has no power class")
    F = f.field
    if (F.q - 1) % n:
        raise RootsOfUnityMissing(f"{n} does not divide {F.q - 1}")
    orders = [power_class_order(F, FFElem(F, f.num.lc), n)]
    for p in (f.num, f.den):
        if p.degree > 0:
            for _, m in factor(p)[1]:
                orders.append(n // gcd(n, m))
    return lcm(*orders)
