"""Finite abelian groups by invariant factors, and the abelian fast path."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

from ..arith import factorint, prime_factors, prime_power
from ..errors import BoundExceeded, NotPrimePower
from .cayley import CayleyGroup

CAYLEY_BOUND = 512


def invariant_factors_from_cyclic(orders):
    """Invariant factors d1 | d2 | ... of a product of cyclic groups of the given orders."""
    by_prime = {}
    for m in orders:
        for p, k in dict(factorint(int(m))).items():
            by_prime.setdefault(p, []).append(p**k)
    r = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * r
    for p, powers in by_prime.items():
        powers.sort()
        for i, pk in enumerate(powers):
            factors[r - len(powers) + i] *= pk
    return [d for d in factors if d > 1]


@dataclass(frozen=True)
class AbelianGroup:
    invariant_factors: tuple = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        if any(x < 2 for x in d):
            raise ValueError("invariant factors must be at least 2")
        if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
            raise ValueError(f"{list(d)} is not a divisibility chain")
        object.__setattr__(self, "invariant_factors", d)

    @classmethod
    def from_cyclic(cls, orders):
        return cls(tuple(invariant_factors_from_cyclic(orders)))

    @property
    def order(self):
        return prod(self.invariant_factors)

    def primes(self):
        return prime_factors(self.order) if self.order > 1 else []

    def sylow(self, p) -> AbelianGroup:
        parts = []
        for d in self.invariant_factors:
            k = dict(factorint(d)).get(p, 0)
            if k:
                parts.append(p**k)
        return AbelianGroup(tuple(parts))

    def primary_parts(self, p):
        """Sorted prime-power orders of the p-primary cyclic factors."""
        return list(self.sylow(p).invariant_factors)

    def to_cayley(self, bound=CAYLEY_BOUND) -> CayleyGroup:
        """Multiplication table on mixed-radix tuples, identity first."""
        N = self.order
        if N > bound:
            raise BoundExceeded(f"abelian group of order {N} exceeds Cayley bound {bound}")
        d = self.invariant_factors
        elems = list(product(*(range(x) for x in d))) if d else [()]
        index = {e: i for i, e in enumerate(elems)}
        E = np.array(elems, dtype=np.int64).reshape(len(elems), len(d))
        mods = np.array(d, dtype=np.int64)
        table = np.zeros((N, N), dtype=np.int32)
        for i in range(N):
            sums = (E[i] + E) % mods if d else E
            table[i] = [index[tuple(row)] for row in sums.tolist()]
        return CayleyGroup(table, name=self.format(), check=False)

    def format(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)

    def __str__(self):
        return self.format()


def abelian_rank(A: AbelianGroup) -> int:
    return len(A.invariant_factors)


def abelian_invariants(G: CayleyGroup) -> AbelianGroup:
    """Invariant factors of an abelian Cayley group, read off from element order counts."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    orders = G.element_orders
    cyclic = []
    for p, k in (dict(factorint(G.order)).items() if G.order > 1 else []):
        # logs[j] = log_p of the number of elements killed by p^j.
        logs = []
        for j in range(k + 1):
            c, e = int(np.count_nonzero((p**j) % orders == 0)), 0
            while c > 1:
                c //= p
                e += 1
            logs.append(e)
        # logs[j] - logs[j-1] counts the cyclic p-factors of order at least p^j.
        at_least = [logs[j] - logs[j - 1] for j in range(1, k + 1)] + [0]
        for j in range(1, k + 1):
            cyclic += [p**j] * (at_least[j - 1] - at_least[j])
    return AbelianGroup.from_cyclic(cyclic)


@dataclass(frozen=True)
class AbelianSeries:
    """P >= P1 >= P2 for an abelian p-group, each term up to isomorphism."""

    P: AbelianGroup
    P1: AbelianGroup
    P2: AbelianGroup

    def quotient_top(self) -> AbelianGroup:
        """P/P1 for the split series used here."""
        rest = list(self.P1.invariant_factors)
        out = []
        for d in self.P.invariant_factors:
            if d in rest:
                rest.remove(d)
            else:
                out.append(d)
        return AbelianGroup.from_cyclic(out)

    def middle(self) -> AbelianGroup:
        rest = list(self.P1.invariant_factors)
        for d in self.P2.invariant_factors:
            rest.remove(d)
        return AbelianGroup.from_cyclic(rest)


def abelian_obstruction_series(P: AbelianGroup):
    """Split series for an abelian p-group, or None when none can exist.

    Any group admitting such a series needs at most 1 + 1 + 2 generators, so
    rank 5 or more rules a series out; for rank at most 4 the series peels one
    cyclic factor into P/P1 and one into P2, leaving rank at most 2 in the middle.
    """
    if P.order > 1 and prime_power(P.order) is None:
        raise NotPrimePower(f"{P.order} is not a prime power")
    d = list(P.invariant_factors)
    r = len(d)
    if r >= 5:
        return None
    if r <= 2:
        return AbelianSeries(P, P, AbelianGroup())
    if r == 3:
        return AbelianSeries(P, AbelianGroup(tuple(d[1:])), AbelianGroup())
    return AbelianSeries(P, AbelianGroup(tuple(d[1:])), AbelianGroup((d[1],)))
