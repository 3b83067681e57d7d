"""Arithmetic in small finite fields GF(p^e).

Elements are encoded as integers ``c0 + c1*p + ... + c_{e-1}*p^(e-1)`` where
``c_i`` are the coefficients of the residue modulo the field's defining
polynomial.  This encoding orders elements lexicographically by coefficient
vector read from the top degree down, which is the order used to pick the
canonical modulus and generator.

Fields are cached per ``(p, e)`` so every caller sees the same modulus,
generator and discrete-log tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from .arith import additive_order, is_prime, prime_factors
from .errors import (
    BoundExceeded,
    DegreeZero,
    NotPrime,
    RootsOfUnityMissing,
    ZeroElement,
)

DEFAULT_BOUND = 2**20
TABLE_BOUND = 2**16


# -- dense polynomial helpers over the prime field (coefficient lists, low first)


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        if coef:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - coef * mi) % p
        a.pop()
        _trim(a)
    return _trim(a)


def _is_irreducible_trial(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg <= 1:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _pmod(m, divisor, p):
                return False
    return True


def _monic_in_lex_order(p, e):
    # Coefficients (c_{e-1}, ..., c_0) in lexicographic order.
    for head in product(range(p), repeat=e):
        yield list(reversed(head)) + [1]


@dataclass(frozen=True, eq=False)
class FiniteField:
    """The field GF(p^e) with a fixed modulus and multiplicative generator.

    Construct through :func:`ff_make`; direct construction skips the cache.
    """

    p: int
    e: int
    modulus: tuple
    generator: int

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.e)
        object.__setattr__(self, "_exp", None)
        object.__setattr__(self, "_log", None)
        object.__setattr__(self, "_bsgs", None)
        if self.q <= TABLE_BOUND:
            self._build_tables()

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))

    def __repr__(self):
        return f"FiniteField({self})"

    def __str__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    @property
    def is_prime_field(self):
        return self.e == 1

    # -- raw arithmetic on integer encodings ----------------------------------

    def _vec(self, a):
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _enc(self, vec):
        v = 0
        for c in reversed(vec):
            v = v * self.p + c
        return v

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        p = self.p
        out, scale = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * scale
            scale *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_poly(self, a, b):
        p = self.p
        va, vb = self._vec(a), self._vec(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._enc(_pmod(prod, self.modulus, p) + [])

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_poly(a, b)

    def pow(self, a, k):
        if self.e == 1:
            if a == 0:
                if k < 0:
                    raise ZeroElement("zero has no inverse")
                return 1 if k == 0 else 0
            return pow(a, k % (self.p - 1), self.p)
        if a == 0:
            if k < 0:
                raise ZeroElement("zero has no inverse")
            return 1 if k == 0 else 0
        k %= self.q - 1
        if self._log is not None:
            return self._exp[self._log[a] * k % (self.q - 1)]
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroElement("zero has no inverse")
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        """Image of an integer under Z -> GF(p) -> GF(q)."""
        return n % self.p

    # -- discrete logarithms --------------------------------------------------

    def _build_tables(self):
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        x = 1
        for k in range(self.q - 1):
            exp[k] = x
            log[x] = k
            x = self._mul_poly(x, self.generator) if self.e > 1 else x * self.generator % self.p
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    def raw_dlog(self, a):
        if a == 0:
            raise ZeroElement("discrete log of zero")
        if self._log is not None:
            return self._log[a]
        return self._bsgs_dlog(a)

    def _bsgs_dlog(self, a):
        order = self.q - 1
        m = isqrt(order) + 1
        if self._bsgs is None:
            baby = {}
            x = 1
            for j in range(m):
                baby.setdefault(x, j)
                x = self.mul(x, self.generator)
            object.__setattr__(self, "_bsgs", (baby, self.pow(self.generator, -m)))
        baby, giant = self._bsgs
        y = a
        for i in range(m + 1):
            j = baby.get(y)
            if j is not None:
                return (i * m + j) % order
            y = self.mul(y, giant)
        raise AssertionError("generator does not generate the unit group")

    # -- user facing elements -------------------------------------------------

    def __call__(self, value):
        if isinstance(value, FFElem):
            if value.field != self:
                raise ValueError(f"element of {value.field} is not in {self}")
            return value
        return FFElem(self, self.from_int(int(value)))

    def elem(self, coeffs):
        """Element with the given coefficient vector (low degree first)."""
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.e:
            raise ValueError("coefficient vector longer than the extension degree")
        return FFElem(self, self._enc(coeffs))

    def gen(self):
        return FFElem(self, self.generator)

    def zero(self):
        return FFElem(self, 0)

    def one(self):
        return FFElem(self, 1)

    def elements(self):
        return [FFElem(self, v) for v in range(self.q)]

    def units(self):
        return [FFElem(self, v) for v in range(1, self.q)]

    def format_raw(self, v):
        """Serialized form: integer literal for prime fields, ``g^k`` otherwise."""
        if self.e == 1 or v == 0:
            return str(v)
        k = self.raw_dlog(v)
        return "1" if k == 0 else ("g" if k == 1 else f"g^{k}")


class FFElem:
    """An element of a :class:`FiniteField`; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FFElem is immutable")

    @property
    def coeffs(self):
        return tuple(self.field._vec(self.value))

    def _other(self, other):
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElem(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __pow__(self, k):
        return FFElem(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.value))

    def __int__(self):
        if self.field.e != 1:
            raise TypeError("only prime field elements convert to int")
        return self.value

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"FFElem({self}, {self.field})"


@lru_cache(maxsize=None)
def ff_make(p, e=1, bound=DEFAULT_BOUND):
    """Canonical GF(p^e): smallest irreducible monic modulus, smallest generator."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeZero("extension degree must be at least 1")
    q = p**e
    if q > bound:
        raise BoundExceeded(f"field size {q} exceeds bound {bound}")
    if e == 1:
        modulus = (0, 1)
    else:
        modulus = next(tuple(m) for m in _monic_in_lex_order(p, e) if _is_irreducible_trial(m, p))
    # Generator search runs before tables exist, so it uses the slow product.
    probe = FiniteField.__new__(FiniteField)
    object.__setattr__(probe, "p", p)
    object.__setattr__(probe, "e", e)
    object.__setattr__(probe, "modulus", modulus)
    object.__setattr__(probe, "generator", 1)
    object.__setattr__(probe, "q", q)
    object.__setattr__(probe, "_log", None)
    object.__setattr__(probe, "_exp", None)
    order = q - 1
    cofactors = [order // r for r in prime_factors(order)] if order > 1 else []
    generator = None
    for g in range(1, q):
        if all(probe.pow(g, c) != 1 for c in cofactors):
            generator = g
            break
    assert generator is not None
    field = FiniteField(p, e, modulus, generator)
    return field


def parse_field(text):
    """Parse ``GF(q)``, ``GF(p^e)`` or a bare ``q``."""
    from .errors import ParseError
    from .arith import prime_power

    s = text.strip().replace(" ", "")
    if s.upper().startswith("GF(") and s.endswith(")"):
        s = s[3:-1]
    try:
        if "^" in s:
            p, e = (int(x) for x in s.split("^", 1))
        else:
            pp = prime_power(int(s))
            if pp is None:
                raise NotPrime(f"{s} is not a prime power")
            p, e = pp
    except ValueError:
        raise ParseError(f"cannot read field specification {text!r}", 0) from None
    return ff_make(p, e)


def field_from_order(q):
    from .arith import prime_power

    pp = prime_power(q)
    if pp is None:
        raise NotPrime(f"{q} is not a prime power")
    return ff_make(*pp)


# -- field-level operations ---------------------------------------------------


def dlog(k: FiniteField, x: FFElem) -> int:
    """Exponent ``j`` in ``[0, q-2]`` with ``g^j == x``."""
    return k.raw_dlog(k(x).value)


def power_class_order(k: FiniteField, a: FFElem, n: int) -> int:
    """Order of the class of ``a`` in k*/k*^n.

    k* is cyclic of order q-1, so k*/k*^n is cyclic of order d = gcd(n, q-1)
    and the class of g^j has order d / gcd(d, j).
    """
    a = k(a)
    if a.is_zero():
        raise ZeroElement("zero has no power class")
    d = gcd(n, k.q - 1)
    return d // gcd(d, dlog(k, a))


def root_degree(k: FiniteField, a: FFElem, n: int) -> int:
    """Degree of k(a^(1/n)) over k; needs the n-th roots of unity in k."""
    if (k.q - 1) % n:
        raise RootsOfUnityMissing(f"{n} does not divide {k.q - 1}")
    return power_class_order(k, a, n)


@dataclass(frozen=True)
class CyclicCharacter:
    """A class in H^1(k, Z/n) for finite k, encoded by its value on Frobenius."""

    base: FiniteField
    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def degree(self):
        return additive_order(self.value, self.modulus)

    @property
    def is_trivial(self):
        return self.value == 0


def character_power(chi: CyclicCharacter, m: int) -> CyclicCharacter:
    if m < 1:
        raise ValueError("multiplier must be at least 1")
    return CyclicCharacter(chi.base, chi.modulus, chi.value * m)
