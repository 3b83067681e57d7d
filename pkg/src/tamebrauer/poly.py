"""Univariate polynomials over a :class:`FiniteField`, with factorisation.

Coefficients are stored as raw field encodings, lowest degree first, with no
trailing zeros; the zero polynomial has an empty tuple.
"""

from __future__ import annotations

from itertools import product

from .errors import ZeroElement, ZeroPolynomial
from .finite_field import FFElem, FiniteField
from .rng import LCG64

VAR = "t"


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def const(cls, field, c):
        if isinstance(c, FFElem):
            c = c.value
        elif isinstance(c, int):
            c = field.from_int(c)
        return cls(field, [c])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def from_ints(cls, field, ints):
        """Coefficients given as integers (reduced into the prime field)."""
        return cls(field, [field.from_int(i) for i in ints])

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self):
        return self.lc == 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        """Degree first, then coefficients read from the top degree down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if F.e == 1:
            p = F.p
            for i, y in enumerate(b):
                out[i] = (out[i] + y) % p
        else:
            for i, y in enumerate(b):
                out[i] = F.add(out[i], y)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            other = Poly.const(F, other)
        elif isinstance(other, FFElem):
            other = Poly.const(F, other.value)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        if F.e == 1:
            p = F.p
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, [c % p for c in out])
        mul, add = F.mul, F.add
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(self.field, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        F = self.field
        if not other.coeffs:
            raise ZeroPolynomial("division by the zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(F, ()), self
        inv_lead = F.inv(other.lc)
        q = [0] * (len(r) - db)
        b = other.coeffs
        prime = F.e == 1
        p = F.p
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            c = c * inv_lead % p if prime else F.mul(c, inv_lead)
            q[i - db] = c
            shift = i - db
            if prime:
                for j, y in enumerate(b):
                    r[shift + j] = (r[shift + j] - c * y) % p
            else:
                for j, y in enumerate(b):
                    if y:
                        r[shift + j] = F.sub(r[shift + j], F.mul(c, y))
        return Poly(F, q), Poly(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a raw field encoding or an :class:`FFElem`."""
        F = self.field
        raw = x.value if isinstance(x, FFElem) else x
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, raw), c)
        return FFElem(F, acc) if isinstance(x, FFElem) else acc

    def pow_mod(self, k, m):
        result = Poly.const(self.field, 1) % m
        base = self % m
        while k:
            if k & 1:
                result = (result * base) % m
            base = (base * base) % m
            k >>= 1
        return result

    def multiplicity(self, f):
        """Largest k with f^k dividing self (self nonzero)."""
        if not self.coeffs:
            raise ZeroPolynomial("multiplicity in the zero polynomial")
        k, g = 0, self
        while True:
            q, r = divmod(g, f)
            if r:
                return k
            k, g = k + 1, q

    # -- printing -------------------------------------------------------------

    def format(self, var=VAR):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.format_raw(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()} over {self.field})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(F, 1), Poly(F)
    t0, t1 = Poly(F), Poly.const(F, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise ZeroElement("polynomial is not invertible modulo the given modulus")
    return s % m


# -- factorisation ---------------------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    # f is a polynomial in t^p; take coefficient-wise p-th roots (Frobenius inverse).
    F = f.field
    root_exp = F.q // F.p
    return Poly(F, [F.pow(c, root_exp) for c in f.coeffs[:: F.p]])


def squarefree_decomposition(f: Poly):
    """Monic squarefree ``g_i`` with f = lc * prod g_i^i, as ``[(g_i, i)]``."""
    F = f.field
    one = Poly.const(F, 1)
    f = f.monic()
    out = []

    def rec(f, mult):
        if f.degree < 1:
            return
        d = f.derivative()
        if not d:
            rec(_pth_root(f), mult * F.p)
            return
        c = poly_gcd(f, d)
        w = f // c
        i = 1
        while w != one:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                out.append((z, i * mult))
            i += 1
            w, c = y, c // y
        if c != one:
            rec(_pth_root(c), mult * F.p)

    rec(f, 1)
    merged = {}
    for g, m in out:
        merged.setdefault(m, Poly.const(F, 1))
        merged[m] = merged[m] * g
    return sorted(((g.monic(), m) for m, g in merged.items()), key=lambda gm: gm[1])


def distinct_degree(f: Poly):
    """Split a monic squarefree f into ``[(product of degree-d factors, d)]``."""
    F = f.field
    out = []
    x = Poly.x(F)
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(F.q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(F, deg, rng):
    # Not forced monic: a fixed leading coefficient can make the trace map blind.
    return Poly(F, [rng.randrange(F.q) for _ in range(deg)])


def equal_degree(f: Poly, d: int, rng=None):
    """Split a monic squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    F = f.field
    if f.degree == d:
        return [f]
    rng = rng or LCG64(0x5EED)
    while True:
        a = _random_poly(F, f.degree, rng)
        if a.degree < 1:
            continue
        if F.p == 2:
            # Absolute trace map to GF(2), iterated over q^d.
            b, acc = a, a
            for _ in range(F.e * d - 1):
                b = (b * b) % f
                acc = acc + b
        else:
            acc = a.pow_mod((F.q**d - 1) // 2, f) - Poly.const(F, 1)
        g = poly_gcd(f, acc)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor(f: Poly):
    """Factor a nonzero polynomial.

    Returns ``(unit, [(monic irreducible, multiplicity), ...])`` with factors
    sorted by degree then coefficients, so ``unit * prod g^m == f``.
    """
    if not f.coeffs:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    F = f.field
    unit = FFElem(F, f.lc)
    if f.degree < 1:
        return unit, []
    rng = LCG64(0x5EED)
    found = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                found.append((irr, m))
    found.sort(key=lambda gm: gm[0].sort_key())
    return unit, found


def factor_trial(f: Poly):
    """Reference factorisation by trial division; only for small inputs."""
    if not f.coeffs:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    F = f.field
    unit = FFElem(F, f.lc)
    g = f.monic()
    out = []
    d = 1
    while g.degree >= 2 * d:
        for tail in product(range(F.q), repeat=d):
            cand = Poly(F, list(tail) + [1])
            k = 0
            while g.degree >= d:
                q, r = divmod(g, cand)
                if r:
                    break
                g, k = q, k + 1
            if k:
                out.append((cand, k))
        d += 1
    if g.degree > 0:
        out.append((g, 1))
    merged = {}
    for h, k in out:
        merged[h] = merged.get(h, 0) + k
    return unit, sorted(merged.items(), key=lambda hk: hk[0].sort_key())


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    _, fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1
