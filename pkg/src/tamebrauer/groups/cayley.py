"""Finite groups given by multiplication tables.

Elements are indices ``0..N-1`` with the identity at 0.  Subgroups are kept
as Python integer bitmasks internally, which makes them cheap to hash and
compare when enumerating lattices.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..arith import factorint
from ..errors import BoundExceeded

SUBGROUP_BOUND = 512


def _mask(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << int(x)
    return m


def _members(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class CayleyGroup:
    def __init__(self, table, name=None, check=True):
        T = np.asarray(table, dtype=np.int32)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValueError("multiplication table must be square")
        self.table = T
        self.order = T.shape[0]
        self.name = name
        if check:
            self._verify()

    def _verify(self):
        T, N = self.table, self.order
        ar = np.arange(N)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise ValueError("index 0 must be the identity")
        srt = np.sort(T, axis=1)
        if not (srt == ar).all() or not (np.sort(T, axis=0) == ar[:, None]).all():
            raise ValueError("rows and columns must be permutations")
        for a in range(N):
            # (a*b)*c == a*(b*c) for all b, c at once.
            if not np.array_equal(T[T[a]], T[a][T]):
                raise ValueError(f"table is not associative (first failure at element {a})")

    def __repr__(self):
        return f"CayleyGroup({self.name or self.order})"

    def mul(self, a, b):
        return int(self.table[a, b])

    @cached_property
    def inverse(self):
        return np.argmin(self.table, axis=1).astype(np.int32)

    @cached_property
    def element_orders(self):
        N = self.order
        ar = np.arange(N)
        orders = np.zeros(N, dtype=np.int64)
        cur = ar.copy()
        for k in range(1, N + 1):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, ar]
        return orders

    def power(self, a, k):
        k %= int(self.element_orders[a])
        x = 0
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def conjugate(self, h, g):
        """g h g^-1."""
        return int(self.table[self.table[g, h], self.inverse[g]])

    # -- subgroups --------------------------------------------------------------

    def closure_mask(self, gens, start=1) -> int:
        """Bitmask of the subgroup generated by ``gens`` together with the subgroup ``start``."""
        T = self.table
        have = np.zeros(self.order, dtype=bool)
        for x in _members(start):
            have[x] = True
        have[0] = True
        gens = [int(g) for g in gens]
        if not gens:
            return _mask(np.flatnonzero(have))
        frontier = np.flatnonzero(have)
        gen_arr = np.array(gens)
        all_gens = np.concatenate([gen_arr, frontier]) if start != 1 else gen_arr
        while frontier.size:
            prods = np.unique(T[np.ix_(frontier, all_gens)])
            new = prods[~have[prods]]
            have[new] = True
            frontier = new
        return _mask(np.flatnonzero(have))

    def subgroup(self, gens) -> Subgroup:
        return Subgroup(self, self.closure_mask(gens))

    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1)

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily by index."""
        gens, mask, full = [], 1, (1 << self.order) - 1
        while mask != full:
            # Prefer an element of largest order outside the current subgroup.
            outside = [x for x in range(self.order) if not (mask >> x) & 1]
            g = max(outside, key=lambda x: (int(self.element_orders[x]), -x))
            gens.append(g)
            mask = self.closure_mask(gens)
        return tuple(gens)

    @cached_property
    def cyclic_subgroups(self):
        """Distinct cyclic subgroups as ``(mask, generator)`` sorted by order then mask."""
        seen = {}
        for g in range(self.order):
            m = self.closure_mask([g])
            seen.setdefault(m, g)
        return sorted(seen.items(), key=lambda mg: (bin(mg[0]).count("1"), mg[0]))

    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    def is_cyclic(self):
        return bool((self.element_orders == self.order).any())

    def is_normal_mask(self, mask, gens=None) -> bool:
        """Normality tested by conjugating generators of the subgroup by generators of G."""
        if gens is None:
            gens = Subgroup(self, mask).generators
        for g in self.generators:
            for h in gens:
                if not (mask >> self.conjugate(h, g)) & 1:
                    return False
        return True

    def quotient(self, H: Subgroup) -> CayleyGroup:
        """G/H for normal H, with the coset of the identity at index 0."""
        N = self.order
        coset_of = np.full(N, -1, dtype=np.int64)
        reps = []
        members = np.array(H.elements)
        for x in range(N):
            if coset_of[x] < 0:
                coset_of[self.table[x, members]] = len(reps)
                reps.append(x)
        reps = np.array(reps)
        table = coset_of[self.table[np.ix_(reps, reps)]]
        return CayleyGroup(table, name=f"{self.name or self.order}/{H.order}", check=False)

    def restrict(self, H: Subgroup) -> CayleyGroup:
        """H as a group in its own right, elements relabelled in increasing order."""
        elems = np.array(H.elements)
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[elems] = np.arange(len(elems))
        return CayleyGroup(pos[self.table[np.ix_(elems, elems)]], check=False)


class Subgroup:
    __slots__ = ("parent", "mask", "__dict__")

    def __init__(self, parent: CayleyGroup, mask: int):
        self.parent = parent
        self.mask = mask

    @cached_property
    def elements(self):
        return tuple(_members(self.mask))

    @property
    def order(self):
        return bin(self.mask).count("1")

    def __contains__(self, x):
        return bool((self.mask >> x) & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    @cached_property
    def generators(self):
        gens, mask = [], 1
        G = self.parent
        for x in sorted(self.elements, key=lambda x: (-int(G.element_orders[x]), x)):
            if not (mask >> x) & 1:
                gens.append(x)
                mask = G.closure_mask(gens)
                if mask == self.mask:
                    break
        return tuple(gens)

    def is_normal_in(self, other: Subgroup | None = None) -> bool:
        """Normal in the whole parent, or in ``other`` when given (requires self <= other)."""
        G = self.parent
        if other is None:
            return G.is_normal_mask(self.mask, self.generators)
        for g in other.generators:
            for h in self.generators:
                if not (self.mask >> G.conjugate(h, g)) & 1:
                    return False
        return True

    def is_cyclic(self):
        G = self.parent
        n = self.order
        return any(int(G.element_orders[x]) == n for x in self.elements)

    def as_group(self) -> CayleyGroup:
        return self.parent.restrict(self)


def _members_array(G, mask):
    bits = np.frombuffer(mask.to_bytes((G.order + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(bits, bitorder="little")[: G.order])


def is_solvable(G: CayleyGroup) -> bool:
    H = G.whole()
    while H.order > 1:
        K = H.as_group()
        T, inv = K.table, K.inverse
        A = T[T, np.broadcast_to(inv[:, None], T.shape)]
        comms = np.unique(T[A, np.broadcast_to(inv[None, :], T.shape)])
        D = K.closure_mask(comms.tolist())
        if D == (1 << K.order) - 1:
            return False
        H = Subgroup(K, D)
    return True


def _cyclic_extensions(G, H_mask):
    """Subgroups <H, g> for g in the normalizer of H, one per coset of H."""
    T, inv = G.table, G.inverse
    elems = _members_array(G, H_mask)
    gens = Subgroup(G, H_mask).generators
    inside = np.zeros(G.order, dtype=bool)
    inside[elems] = True
    ok = np.ones(G.order, dtype=bool)
    ar = np.arange(G.order)
    for h in gens:
        ok &= inside[T[T[ar, h], inv]]
    ok &= ~inside
    out = set()
    seen = inside.copy()
    for g in np.flatnonzero(ok):
        if seen[g]:
            continue
        # H is normal in <H, g>, so the join is the union of the cosets H g^i.
        acc = inside.copy()
        cur = g
        while not inside[cur]:
            acc[T[elems, cur]] = True
            cur = T[cur, g]
        seen[T[elems, g]] = True
        out.add(int.from_bytes(np.packbits(acc, bitorder="little").tobytes(), "little"))
    return out


def subgroups(G: CayleyGroup, bound=SUBGROUP_BOUND):
    """Every subgroup of G.

    Solvable groups are handled by cyclic extension: each subgroup K > 1 has
    a normal subgroup H of prime index, so K = <H, g> with g normalizing H.
    Other groups fall back to joining subgroups with cyclic subgroups until
    nothing new appears.
    """
    if G.order > bound:
        raise BoundExceeded(f"group order {G.order} exceeds subgroup enumeration bound {bound}")
    solvable = is_solvable(G)
    cyclic = G.cyclic_subgroups
    found = {1} | ({m for m, _ in cyclic} if not solvable else set())
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            if solvable:
                joins = _cyclic_extensions(G, H)
            else:
                joins = {G.closure_mask([g], start=H) for C, g in cyclic if C & ~H}
            for J in joins:
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (bin(m).count("1"), m))]


def normal_subgroups(G: CayleyGroup, bound=SUBGROUP_BOUND):
    return [H for H in subgroups(G, bound) if H.is_normal_in()]


def is_metacyclic(G: CayleyGroup) -> bool:
    """True iff some normal cyclic subgroup has a cyclic quotient."""
    if G.is_cyclic():
        return True
    for mask, g in G.cyclic_subgroups:
        if mask == 1 or not G.is_normal_mask(mask, (g,)):
            continue
        if G.quotient(Subgroup(G, mask)).is_cyclic():
            return True
    return False


def normalizer(G: CayleyGroup, H: Subgroup) -> Subgroup:
    gens = H.generators
    members = [g for g in range(G.order) if all((H.mask >> G.conjugate(h, g)) & 1 for h in gens)]
    return Subgroup(G, _mask(members))


def sylow(G: CayleyGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one factor p at a time inside normalizers."""
    target = p ** dict(factorint(G.order)).get(p, 0)
    H = G.trivial()
    while H.order < target:
        N = normalizer(G, H)
        step = None
        for g in N.elements:
            if g in H:
                continue
            if G.power(g, p) in H:
                step = g
                break
        if step is None:
            raise AssertionError("p divides [N(H):H] for a non-Sylow p-subgroup")
        H = Subgroup(G, G.closure_mask([step], start=H.mask))
    return H


def min_generators(G: CayleyGroup) -> int:
    """Minimal number of generators of a p-group, as the rank of P/Frattini."""
    N = G.order
    if N == 1:
        return 0
    f = factorint(N)
    if len(f) > 1:
        raise ValueError("min_generators is implemented for p-groups only")
    ((p, _),) = f
    # The Frattini subgroup of a p-group is generated by p-th powers and commutators.
    T, inv = G.table, G.inverse
    powers = {G.power(x, p) for x in range(N)}
    A = T[T, np.broadcast_to(inv[:, None], T.shape)]
    comms = np.unique(T[A, np.broadcast_to(inv[None, :], T.shape)])
    phi = bin(G.closure_mask(sorted(powers | set(comms.tolist())))).count("1")
    r, k = N // phi, 0
    while r > 1:
        r //= p
        k += 1
    return k
