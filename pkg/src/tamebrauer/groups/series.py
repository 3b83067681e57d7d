"""Search for filtrations P >= P1 >= P2 with P/P1, P2 cyclic and P1/P2 metacyclic."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..arith import prime_power
from ..errors import NotPrimePower
from .abelian import AbelianGroup, abelian_obstruction_series
from .cayley import CayleyGroup, Subgroup, is_metacyclic, min_generators, subgroups


@dataclass(frozen=True)
class NormalSeries:
    P: Subgroup
    P1: Subgroup
    P2: Subgroup

    def violations(self):
        """Broken invariants, each checked from the definitions (full conjugation)."""
        G = self.P.parent
        out = []
        if not (self.P2 <= self.P1 <= self.P):
            out.append("not nested")
            return out
        if not _normal_full(G, self.P1, self.P):
            out.append("P1 not normal in P")
        if not _normal_full(G, self.P2, self.P1):
            out.append("P2 not normal in P1")
        if not out:
            if not G.restrict(self.P).quotient(_relabel(self.P, self.P1)).is_cyclic():
                out.append("P/P1 not cyclic")
            if not self.P2.is_cyclic():
                out.append("P2 not cyclic")
            middle = G.restrict(self.P1).quotient(_relabel(self.P1, self.P2))
            if not is_metacyclic(middle):
                out.append("P1/P2 not metacyclic")
        return out

    def is_valid(self):
        return not self.violations()

    def describe(self):
        return {"P": self.P.order, "P1": self.P1.order, "P2": self.P2.order}


def _normal_full(G, H, K):
    for k in K.elements:
        for h in H.elements:
            if G.conjugate(h, k) not in H:
                return False
    return True


def _relabel(outer: Subgroup, inner: Subgroup) -> Subgroup:
    """``inner`` as a subgroup of ``outer.as_group()``."""
    pos = np.searchsorted(np.array(outer.elements), np.array(inner.elements))
    K = outer.parent.restrict(outer)
    mask = 0
    for i in pos.tolist():
        mask |= 1 << i
    return Subgroup(K, mask)


def series_key(s: NormalSeries):
    return (s.P2.order, s.P.order // s.P1.order, s.P2.elements, s.P1.elements)


def obstruction_series(P, bound=512):
    """A witnessing series for a p-group, or None.

    Cayley groups are searched over normal subgroups P1 with cyclic quotient
    and cyclic subgroups P2 normal in P1; the series with the smallest P2,
    then the smallest index [P:P1], is returned.  Abelian groups given by
    invariant factors take the rank criterion instead.
    """
    if isinstance(P, AbelianGroup):
        return abelian_obstruction_series(P)
    G: CayleyGroup = P
    if G.order > 1 and prime_power(G.order) is None:
        raise NotPrimePower(f"{G.order} is not a prime power")
    whole, trivial = G.whole(), G.trivial()
    if G.is_cyclic():
        return NormalSeries(whole, whole, trivial)
    # d(P) <= d(P/P1) + d(P2) + d(P1/P2) <= 4 for any such series.
    if min_generators(G) >= 5:
        return None
    best = None
    for P1 in subgroups(G, bound):
        if not P1.is_normal_in() or not G.quotient(P1).is_cyclic():
            continue
        K = G.restrict(P1)
        elems = np.array(P1.elements)
        for mask, g in G.cyclic_subgroups:
            if mask & ~P1.mask:
                continue
            P2 = Subgroup(G, mask)
            if best is not None and series_key(NormalSeries(whole, P1, P2)) >= series_key(best):
                continue
            if not P2.is_normal_in(P1):
                continue
            inner = Subgroup(K, sum(1 << int(i) for i in np.searchsorted(elems, np.array(P2.elements))))
            if is_metacyclic(K.quotient(inner)):
                best = NormalSeries(whole, P1, P2)
    return best
