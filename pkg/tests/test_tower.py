from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_power_class_order, tower_closed_form
from tamebrauer.arith import divisors, lcm
from tamebrauer.errors import ParseError, PreconditionViolated, RootsOfUnityMissing
from tamebrauer.finite_field import ff_make, field_from_order
from tamebrauer.rng import LCG64
from tamebrauer.tower import (
    MonomialElem,
    TowerClass,
    TowerField,
    canonicalize,
    complete_index,
    index_with_cyclic_twist,
    normal_form_class,
    parse_tower_class,
    random_tower_class,
    tower_index,
    tower_index_report,
    tower_residue,
)

F5 = ff_make(5)


def tc(text):
    return parse_tower_class(text)


def mono(F, c, *exps):
    return MonomialElem(F(c), exps)


def test_canonicalize_examples():
    nf = canonicalize(tc("4; base=GF(5); params=t1,t2; (3*t1, t1)"))
    assert nf.a1 == F5(-3) and nf.a2 == F5(1) and nf.r == 0
    assert canonicalize(tc("4; base=GF(5); params=t1,t2")) == canonicalize(tc("4; base=GF(5); params=t1,t2; (2, 3)"))
    nf = canonicalize(tc("4; base=GF(5); params=t1,t2; (t1, t2)"))
    assert (nf.a1, nf.a2, nf.r) == (F5(1), F5(1), 1)


def test_residue_examples():
    gamma, d = tower_residue(tc("4; base=GF(5); params=t; (2, t)"))
    assert gamma.c == F5(2) and d == 4
    gamma, d = tower_residue(tc("4; base=GF(5); params=t1,t2; (t1, t2)"))
    assert gamma.exps == (1,) and gamma.c == F5(1) and d == 4
    gamma, d = tower_residue(tc("4; base=GF(5); params=t1,t2; (2, t1)"))
    assert d == 1


def test_complete_index_examples():
    assert complete_index(tc("4; base=GF(5); params=t; (2, t)")) == 4
    assert complete_index(tc("4; base=GF(5); params=t; (4, t)")) == 2
    assert complete_index(tc("4; base=GF(5); params=t; (1, t)")) == 1
    with pytest.raises(PreconditionViolated):
        complete_index(tc("4; base=GF(5); params=t1,t2; (2, t1)"))


def test_cyclic_twist_examples():
    trivial = tc("4; base=GF(5); params=t1,t2")
    assert index_with_cyclic_twist(trivial, mono(F5, 1, 1)) == 4
    A = tc("4; base=GF(5); params=t1,t2; (2, t1)")
    # 2 becomes a 4th power in F_625, so only the twist degree remains
    assert pow(2, (5**4 - 1) // 4, 5) == 1
    assert index_with_cyclic_twist(A, mono(F5, 2, 0)) == 4
    with pytest.raises(PreconditionViolated):
        index_with_cyclic_twist(tc("4; base=GF(5); params=t1,t2; (2, t2)"), mono(F5, 2, 0))


def test_tower_index_examples():
    assert tower_index(tc("4; base=GF(5); params=t1,t2; (t1, t2)")) == 4
    A = tc("4; base=GF(5); params=t1,t2; (2, t1); (2, t2)")
    assert tower_index(A) == 4
    steps = tower_index_report(A).trace
    assert [(s.param, s.d, s.f_after) for s in steps] == [("t2", 4, 4), ("t1", 1, 4)]
    assert tower_index(tc("4; base=GF(5); params=t1,t2")) == 1
    # F_5 example: (2, t1) + (3, t2) has residue orders 4 and 4 that do not cancel
    assert tower_index(tc("4; base=GF(5); params=t1,t2; (2, t1); (3, t2)")) == 4


def test_parse_errors():
    with pytest.raises(ParseError):
        tc("4; params=t1,t2; (t1, t2)")
    with pytest.raises(ParseError):
        tc("4; base=GF(5); params=t1,t2; (t1 + t2, t2)")
    with pytest.raises(ParseError):
        tc("4; base=GF(5); params=t1,t2; (0, t2)")
    with pytest.raises(RootsOfUnityMissing):
        tc("3; base=GF(5); params=t1,t2; (t1, t2)")


def test_format_round_trip():
    A = tc("6; base=GF(7); params=t1,t2; (3*t1^2, t2^-1); (t1*t2, 5)")
    assert tc(str(A)) == A


QS = [3, 4, 5, 7, 8, 9, 11, 13]


@pytest.mark.parametrize("q", [3, 5, 7, 9, 13])
def test_closed_forms_exhaustive(q):
    F = field_from_order(q)
    for n in divisors(q - 1):
        for a in F.elements()[1:]:
            A = TowerClass(TowerField(F, ("t",)), n, ((MonomialElem(a, (0,)), MonomialElem(F.one(), (1,))),))
            assert tower_index(A) == brute_power_class_order(F, a.value, n)
        B = TowerClass(TowerField(F), n, ((mono(F, 1, 1, 0), mono(F, 1, 0, 1)),))
        assert tower_index(B) == n


@pytest.mark.parametrize("q", [3, 4, 5, 7, 9, 13])
def test_normal_forms_exhaustive(q):
    """Every (a1, a2, r) against lcm of brute-force orders, with no library normal form involved."""
    F = field_from_order(q)
    T = TowerField(F)
    for n in divisors(q - 1):
        for a1 in range(1, q):
            for a2 in range(1, q):
                for r in range(n):
                    A = TowerClass(T, n, ((MonomialElem(F.elements()[a1], (0, 0)), mono(F, 1, 1, 0)),
                                          (MonomialElem(F.elements()[a2], (0, 0)), mono(F, 1, 0, 1)),
                                          (mono(F, 1, r, 0), mono(F, 1, 0, 1))))
                    expected = lcm(
                        brute_power_class_order(F, a1, n), brute_power_class_order(F, a2, n), n // gcd(n, r)
                    )
                    assert tower_index(A) == expected


def draw_tower(data, depth=2):
    q = data.draw(st.sampled_from(QS))
    n = data.draw(st.sampled_from([d for d in divisors(q - 1) if d <= 12]))
    seed = data.draw(st.integers(0, 2**32))
    return random_tower_class(field_from_order(q), n, LCG64(seed), depth=depth)


@settings(max_examples=500)
@given(st.data())
def test_canonical_form_preserves_index(data):
    A = draw_tower(data)
    k = tower_index(A)
    assert k == tower_index(normal_form_class(A))
    assert k == tower_closed_form(A)
    assert A.n % k == 0


@settings(max_examples=200)
@given(st.data())
def test_opposite_cancels(data):
    A = draw_tower(data)
    assert tower_index(A * A.opposite()) == 1
    assert tower_index(A.opposite()) == tower_index(A)


def _swap(A):
    T = TowerField(A.tower.base, A.tower.params[::-1])
    flip = lambda m: MonomialElem(m.c, m.exps[::-1])
    return TowerClass(T, A.n, tuple((flip(a), flip(b)) for a, b in A.symbols))


@settings(max_examples=200)
@given(st.data())
def test_peeling_order_independence(data):
    A = draw_tower(data)
    # peel t1 first by making it the outer parameter
    assert tower_index(_swap(A)) == tower_index(A)


@settings(max_examples=200)
@given(st.data())
def test_depth_one_matches_residue_order(data):
    A = draw_tower(data, depth=1)
    gamma, d = tower_residue(A)
    assert complete_index(A) == d
    assert d == lcm(brute_power_class_order(A.tower.base, gamma.c.value, A.n))
