from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_power_class_order
from tamebrauer.errors import NotAUnit, NotIrreducible, RootsOfUnityMissing, ZeroFunction
from tamebrauer.finite_field import ff_make, field_from_order
from tamebrauer.parser import parse
from tamebrauer.poly import Poly
from tamebrauer.ratfunc import (
    Place,
    RatFunc,
    class_order_global,
    residue_at,
    support,
    uniformizer,
    unit_part,
    valuation,
)


def place(src, F):
    return Place(parse(src, F).num)


def test_valuation_examples():
    F = ff_make(3)
    f = parse("t^2/(t-1)", F)
    assert valuation(f, place("t", F)) == 2
    assert valuation(f, Place.infinity(F)) == -1
    assert valuation(f, place("t-1", F)) == -1
    with pytest.raises(ZeroFunction):
        valuation(RatFunc(Poly(F)), place("t", F))


def test_residue_examples():
    F = ff_make(3)
    assert residue_at(parse("t-1", F), place("t", F)).norm().value == 2
    assert residue_at(parse("(t+1)/t", F), Place.infinity(F)).norm().value == 1
    with pytest.raises(NotAUnit):
        residue_at(parse("t", F), place("t", F))


def test_residue_at_degree_two_place():
    F = ff_make(3)
    v = place("t^2+1", F)
    r = residue_at(parse("t", F), v)
    # t is a square root of -1 in F_9, so t^4 = 1 and t^2 = -1
    assert r**2 == r.field(Poly.from_ints(F, [-1])) and (r**4).is_one()
    assert str(r) == "[t]"
    assert r.field.order == 9


def test_class_order_examples():
    F5 = ff_make(5)
    assert class_order_global(parse("t+1", F5), 4) == 4
    assert class_order_global(parse("t^2", F5), 2) == 1
    assert class_order_global(parse("2*t", F5), 4) == 4
    for m in (2, 3, 6):
        assert class_order_global(parse("t+1", ff_make(7)), m) == m
    with pytest.raises(RootsOfUnityMissing):
        class_order_global(parse("t", F5), 3)
    with pytest.raises(ZeroFunction):
        class_order_global(RatFunc(Poly(F5)), 2)


def test_places():
    F = ff_make(5)
    with pytest.raises(NotIrreducible):
        place("t^2-1", F)
    with pytest.raises(NotIrreducible):
        Place(Poly.from_ints(F, [2, 2]))
    assert [str(v) for v in support(parse("t^2/(t^2+2)", F))] == ["(t)", "(t^2 + 2)", "inf"]
    assert valuation(uniformizer(Place.infinity(F)), Place.infinity(F)) == 1


def ratfuncs(q, max_len=6):
    F = field_from_order(q)
    poly = st.lists(st.integers(0, q - 1), min_size=1, max_size=max_len).map(lambda c: Poly(F, c)).filter(bool)
    return st.tuples(poly, poly).map(lambda nd: RatFunc(*nd))


QS = [2, 3, 4, 5, 7, 9]


@settings(max_examples=1000)
@given(st.sampled_from(QS), st.data())
def test_degree_formula(q, data):
    f = data.draw(ratfuncs(q))
    assert sum(valuation(f, v) * v.degree for v in support(f)) == 0


@settings(max_examples=200)
@given(st.sampled_from(QS), st.data())
def test_valuation_axioms(q, data):
    f, g = data.draw(ratfuncs(q)), data.draw(ratfuncs(q))
    for v in support(f, g, parse("t", f.field)):
        vf, vg = valuation(f, v), valuation(g, v)
        assert valuation(f * g, v) == vf + vg
        s = f + g
        if s:
            if vf != vg:
                assert valuation(s, v) == min(vf, vg)
            else:
                assert valuation(s, v) >= vf


@settings(max_examples=200)
@given(st.sampled_from(QS), st.data())
def test_residue_is_multiplicative_and_matches_evaluation(q, data):
    F = field_from_order(q)
    f, g = data.draw(ratfuncs(q)), data.draw(ratfuncs(q))
    a = data.draw(st.integers(0, q - 1))
    v = Place(Poly(F, [F.neg(a), 1]))
    for h in (f, g):
        u = unit_part(h, v)
        assert valuation(u, v) == 0
    uf, ug = unit_part(f, v), unit_part(g, v)
    assert residue_at(uf * ug, v) == residue_at(uf, v) * residue_at(ug, v)
    # at a degree one place the residue is evaluation at the root
    assert residue_at(uf, v).norm().value == F.div(uf.num(a), uf.den(a))


def _is_nth_power_poly(p: Poly, n):
    """Monic p equals h^n for some monic h, by enumerating candidates."""
    if p.degree % n:
        return False
    d = p.degree // n
    F = p.field
    return any(Poly(F, list(tail) + [1]) ** n == p for tail in product(range(F.q), repeat=d))


def _brute_class_order(f: RatFunc, n):
    F = f.field
    k = 1
    while True:
        h = f**k
        lc = h.num.lc
        if (
            brute_power_class_order(F, lc, n) == 1
            and _is_nth_power_poly(h.num.monic(), n)
            and _is_nth_power_poly(h.den, n)
        ):
            return k
        k += 1


@settings(max_examples=60)
@given(st.sampled_from([(3, 2), (5, 2), (5, 4), (7, 3), (7, 2), (4, 3)]), st.data())
def test_class_order_against_root_extraction(qn, data):
    q, n = qn
    f = data.draw(ratfuncs(q, 3))
    got = class_order_global(f, n)
    assert n % got == 0
    assert got == _brute_class_order(f, n)


@settings(max_examples=100)
@given(st.sampled_from([(5, 4), (7, 6), (9, 8), (13, 4)]), st.data())
def test_class_order_of_nth_power_times_constant(qn, data):
    q, n = qn
    F = field_from_order(q)
    g = data.draw(ratfuncs(q, 3))
    c = data.draw(st.integers(1, q - 1))
    f = g**n * RatFunc(Poly(F, [F.pow(c, n)]))
    assert class_order_global(f, n) == 1
    f2 = g**n * RatFunc(Poly(F, [c]))
    assert class_order_global(f2, n) == brute_power_class_order(F, c, n)
