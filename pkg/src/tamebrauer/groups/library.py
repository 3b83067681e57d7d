"""Small-group fixtures built from explicit multiplication rules."""

from __future__ import annotations

from itertools import permutations, product
from math import gcd

import numpy as np

from .abelian import AbelianGroup
from .cayley import CayleyGroup


def from_rule(elements, mul, identity, name=None) -> CayleyGroup:
    """Cayley table of a finite set closed under ``mul``; the identity becomes index 0."""
    elements = list(elements)
    elements.remove(identity)
    elements.insert(0, identity)
    index = {e: i for i, e in enumerate(elements)}
    N = len(elements)
    table = np.empty((N, N), dtype=np.int32)
    for i, a in enumerate(elements):
        table[i] = [index[mul(a, b)] for b in elements]
    return CayleyGroup(table, name=name)


def generated(gens, mul, identity, name=None) -> CayleyGroup:
    """Group generated by ``gens`` under ``mul``, by breadth-first closure."""
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return from_rule(sorted(seen), mul, identity, name)


def cyclic(n) -> CayleyGroup:
    return from_rule(range(n), lambda a, b: (a + b) % n, 0, f"Z/{n}")


def abelian(orders) -> CayleyGroup:
    return AbelianGroup.from_cyclic(orders).to_cayley()


def direct_product(G: CayleyGroup, H: CayleyGroup) -> CayleyGroup:
    m = H.order
    T = G.table[:, None, :, None] * m + H.table[None, :, None, :]
    table = T.reshape(G.order * m, G.order * m)
    return CayleyGroup(table, name=f"{G.name}x{H.name}", check=False)


def semidirect(m, k, r, name=None) -> CayleyGroup:
    """Z/m x| Z/k where the generator of Z/k acts by multiplication by r."""
    if pow(r, k, m) != 1 % m or gcd(r, m) != 1:
        raise ValueError("r must be a unit of order dividing k modulo m")
    powers = [pow(r, b, m) for b in range(k)]

    def mul(x, y):
        return ((x[0] + powers[x[1]] * y[0]) % m, (x[1] + y[1]) % k)

    return from_rule(product(range(m), range(k)), mul, (0, 0), name or f"Z/{m}:Z/{k}[{r}]")


def dihedral(n) -> CayleyGroup:
    """Symmetries of the n-gon, order 2n."""
    return semidirect(n, 2, n - 1 if n > 2 else 1, f"D{2 * n}")


def dicyclic(m) -> CayleyGroup:
    """Order 4m: <a, x | a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1>; m = 2 is Q8."""
    n = 2 * m

    def mul(u, v):
        (i1, j1), (i2, j2) = u, v
        if j1 == 0:
            return ((i1 + i2) % n, j2)
        if j2 == 0:
            return ((i1 - i2) % n, 1)
        return ((i1 - i2 + m) % n, 0)

    return from_rule(product(range(n), range(2)), mul, (0, 0), f"Dic{4 * m}")


def _perm_mul(a, b):
    # Apply b first, then a.
    return tuple(a[i] for i in b)


def symmetric(n) -> CayleyGroup:
    return from_rule(permutations(range(n)), _perm_mul, tuple(range(n)), f"S{n}")


def _sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= -1 if length % 2 == 0 else 1
    return s


def alternating(n) -> CayleyGroup:
    return from_rule([p for p in permutations(range(n)) if _sign(p) == 1], _perm_mul, tuple(range(n)), f"A{n}")


def sl2(p) -> CayleyGroup:
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    mats = [m for m in product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    return from_rule(mats, mul, (1, 0, 0, 1), f"SL(2,{p})")


def heisenberg(p) -> CayleyGroup:
    """Upper unitriangular 3x3 matrices over F_p."""

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return from_rule(product(range(p), repeat=3), mul, (0, 0, 0), f"Heis({p})")


def abelian_partitions(n):
    """All abelian groups of order n as lists of prime-power cyclic orders."""
    from ..arith import factorint

    def partitions(k, largest=None):
        largest = largest or k
        if k == 0:
            yield []
            return
        for first in range(min(k, largest), 0, -1):
            for rest in partitions(k - first, first):
                yield [first] + rest

    per_prime = [[[p**e for e in part] for part in partitions(k)] for p, k in factorint(n)] if n > 1 else []
    return [sum(combo, []) for combo in product(*per_prime)] if per_prime else [[]]


def nonabelian_fixtures(max_order=64):
    out = []

    def add(G):
        if G.order <= max_order:
            out.append(G)

    for n in range(3, max_order // 2 + 1):
        add(dihedral(n))
    for m in range(2, max_order // 4 + 1):
        add(dicyclic(m))
    for m in range(3, max_order + 1):
        for k in range(2, max_order // m + 1):
            units = sorted({pow(r, 1, m) for r in range(2, m) if gcd(r, m) == 1 and pow(r, k, m) == 1})
            # One action per distinct unit r != 1, -1 (the dihedral case is covered above).
            for r in units:
                if k == 2 and r == m - 1:
                    continue
                add(semidirect(m, k, r))
    if max_order >= 6:
        add(symmetric(3))
    for G in (alternating(4), sl2(3), symmetric(4), heisenberg(3)):
        add(G)
    small = [dihedral(4), dicyclic(2)]
    for A in small:
        for B in (cyclic(2), cyclic(4), abelian([2, 2]), cyclic(8), dihedral(4), dicyclic(2)):
            add(direct_product(A, B))
    add(direct_product(direct_product(dihedral(4), cyclic(2)), cyclic(2)))
    add(direct_product(direct_product(dicyclic(2), cyclic(2)), cyclic(2)))
    add(direct_product(symmetric(3), symmetric(3)))
    add(direct_product(alternating(4), cyclic(2)))
    add(direct_product(alternating(4), cyclic(3)))
    add(direct_product(heisenberg(3), cyclic(2)))
    add(direct_product(dihedral(3), cyclic(4)))
    return out


def abelian_fixtures(max_order=64):
    return [abelian(orders) if orders else cyclic(1) for n in range(1, max_order + 1) for orders in abelian_partitions(n)]


def all_fixtures(max_order=64):
    return abelian_fixtures(max_order) + nonabelian_fixtures(max_order)
