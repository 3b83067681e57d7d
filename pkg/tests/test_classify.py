import pytest
from hypothesis import given, strategies as st

from oracles import TableGroup, brute_has_series
from tamebrauer.arith import prime_power
from tamebrauer.errors import HypothesisError
from tamebrauer.groups import AbelianGroup, FieldModel, classify, obstruction_series, sylow
from tamebrauer.groups import library as L
from tamebrauer.groups.library import abelian_partitions

A = AbelianGroup.from_cyclic


@pytest.mark.parametrize("ell,p", [(3, 2), (5, 2), (7, 3)])
def test_elementary_rank_five_not_admissible(ell, p):
    v = classify(A([ell] * 5), FieldModel(p, "finite", 1, True))
    assert v.kind == "NotAdmissible" and v.prime == ell


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_elementary_rank_at_most_four_has_series(ell):
    for k in range(1, 5):
        assert obstruction_series(A([ell] * k)) is not None
    if ell <= 3:
        s = obstruction_series(L.abelian([ell] * 4))
        assert s.is_valid()


def test_admissible_example():
    G = A([3, 3, 12, 12])
    v = classify(G, FieldModel(5, "finite", 1296, True))
    assert v.kind == "Admissible"
    assert {(r.prime, r.rank) for r in v.sylows} == {(2, 2), (3, 4)}


def test_unknown_without_roots_of_unity():
    v = classify(A([3] * 4), FieldModel(2, "finite", 1, True))
    assert v.kind == "Unknown"
    assert any(r.startswith("roots-of-unity") for r in v.reasons)
    # the necessity test passes, so the verdict is not NotAdmissible
    assert obstruction_series(A([3] * 4)) is not None


def test_coprimality():
    v = classify(A([6]), FieldModel(3, "finite", 6, True))
    assert v.kind == "Unknown" and v.reasons[0].startswith("coprimality")
    assert classify(A([6]), FieldModel(5, "finite", 6, True)).kind == "Admissible"
    assert classify(A([6]), FieldModel(0, "finite", 6, True)).kind == "Admissible"


def test_necessity_needs_finite_residue_and_two_dim_local():
    G = A([2] * 5)
    for model in (FieldModel(3, "local", 32, True), FieldModel(3, "global", 32, True), FieldModel(3, "finite", 32, False)):
        v = classify(G, model)
        assert v.kind == "Unknown"
        assert any(r.startswith("no-series") for r in v.reasons)


def test_nonabelian_groups():
    # Q8 has a series (it is metacyclic) but is not a quotient of Z^4
    v = classify(L.dicyclic(2), FieldModel(3, "finite", 8, True))
    assert v.kind == "Unknown" and any(r.startswith("sylow-nonabelian") for r in v.reasons)
    assert classify(L.symmetric(3), FieldModel(5, "finite", 6, True)).kind == "Admissible"
    # (Z/2)^5 x S3: Sylow 2-subgroup of rank 5 has no series
    G = L.direct_product(L.abelian([2] * 5), L.symmetric(3))
    v = classify(G, FieldModel(5, "finite", 192, True))
    assert v.kind == "NotAdmissible" and v.prime == 2


def test_field_model_validation():
    with pytest.raises(HypothesisError):
        FieldModel(2, "adelic")
    with pytest.raises(HypothesisError):
        FieldModel(-1)


def _abelian_p_groups(bound):
    for n in range(2, bound + 1):
        if prime_power(n) is not None:
            for orders in abelian_partitions(n):
                yield A(orders)


def test_consistency_on_abelian_p_groups():
    """Admissible never coexists with a Sylow subgroup lacking a series."""
    models = [FieldModel(0, "finite", mu, True) for mu in (1, 2**8 * 3**5 * 5**3 * 7**2)]
    for G in _abelian_p_groups(3**5):
        has = obstruction_series(G) is not None
        for model in models:
            v = classify(G, model)
            if v.kind == "Admissible":
                assert has
            if not has:
                assert v.kind == "NotAdmissible"
        if G.order <= 81:
            assert has == brute_has_series(TableGroup(G.to_cayley().table.tolist()))


def test_consistency_on_fixtures():
    model = FieldModel(0, "finite", 2**6 * 3**3 * 5**2 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37 * 41 * 43 * 47 * 53 * 59 * 61, True)
    for G in L.all_fixtures(64):
        v = classify(G, model)
        if v.kind == "Admissible":
            for r in v.sylows:
                assert r.abelian and r.rank <= 4 and r.has_series
        if v.kind == "NotAdmissible":
            P = sylow(G, v.prime).as_group()
            assert not brute_has_series(TableGroup(P.table.tolist()))


@given(st.lists(st.sampled_from([2, 3, 4, 5, 8, 9, 25, 7]), min_size=1, max_size=6))
def test_abelian_verdict_follows_sylow_ranks(orders):
    G = A(orders)
    v = classify(G, FieldModel(0, "finite", G.order, True))
    ranks = {p: len(G.sylow(p).invariant_factors) for p in G.primes()}
    if max(ranks.values()) <= 4:
        assert v.kind == "Admissible"
    else:
        assert v.kind == "NotAdmissible" and ranks[v.prime] >= 5
