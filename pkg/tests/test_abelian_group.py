import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyrsts.abelian_group import (
    AbelianGroup,
    GroupError,
    Subgroup,
    abelian_groups,
    cyclic_subgroup,
    embedding_onto,
    involutions,
    isomorphism_to,
    parse_element,
    prime_powers,
    sigma,
    whole,
)

factor_lists = st.lists(st.integers(2, 9), min_size=0, max_size=3)


@st.composite
def group_and_elements(draw, k=3):
    G = AbelianGroup(tuple(draw(factor_lists)))
    elems = [tuple(draw(st.integers(0, n - 1)) for n in G.factors) for _ in range(k)]
    return G, elems


@given(group_and_elements())
def test_group_axioms(ge):
    G, (a, b, c) = ge
    assert G.add(a, b) == G.add(b, a)
    assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))
    assert G.add(a, G.zero) == a
    assert G.add(a, G.neg(a)) == G.zero
    assert G.sub(a, b) == G.add(a, G.neg(b))


@given(group_and_elements(k=1))
def test_element_order_is_minimal(ge):
    G, (a,) = ge
    n = G.element_order(a)
    assert G.mul(n, a) == G.zero
    assert all(G.mul(k, a) != G.zero for k in range(1, n))


@given(st.lists(st.integers(2, 12), max_size=3))
def test_index_roundtrip_is_lex_order(factors):
    G = AbelianGroup(tuple(factors))
    elems = list(G.elements())
    assert elems == sorted(product(*(range(n) for n in factors)))
    assert [G.index(x) for x in elems] == list(range(G.order))
    assert [G.element(i) for i in range(G.order)] == elems


def _count_partitions(k):
    # p(k) by the usual recurrence over the largest part
    ways = [1] + [0] * k
    for part in range(1, k + 1):
        for s in range(part, k + 1):
            ways[s] += ways[s - part]
    return ways[k]


def _exponent(p, q):
    e = 0
    while q > 1:
        q //= p
        e += 1
    return e


@pytest.mark.parametrize("n", [1, 2, 8, 12, 16, 36, 64, 72, 100, 144, 210])
def test_abelian_group_count(n):
    groups = abelian_groups(n)
    assert len(groups) == math.prod(_count_partitions(_exponent(p, q)) for p, q in prime_powers(n))
    assert all(G.order == n for G in groups)
    # pairwise non-isomorphic
    decomps = [tuple(sorted(G.primary_decomposition())) for G in groups]
    assert len(set(decomps)) == len(decomps)
    if n > 1:
        assert groups[0].factors == (n,)


def test_abelian_groups_72():
    assert [G.factors for G in abelian_groups(72)] == [(72,), (2, 36), (3, 24), (6, 12), (2, 2, 18), (2, 6, 6)]


def test_involutions_counts():
    for factors, n in [((8,), 1), ((2, 2, 2), 7), ((2, 4), 3), ((9,), 0), ((2, 6, 6), 7)]:
        inv = involutions(AbelianGroup(factors))
        assert len(inv) == n and inv == sorted(inv)


def test_sigma_of_elementary_abelian():
    G = AbelianGroup((2, 2, 2))
    s = sigma(whole(G))
    assert len(s) == 7 and all(m.order == 2 for m in s)
    H = AbelianGroup((3, 3))
    assert len(sigma(whole(H))) == 4


def test_subgroup_generation_and_validation():
    G = AbelianGroup((4, 6))
    S = Subgroup.generated_by(G, [(2, 0), (0, 3)])
    assert S.order == 4 and S.is_elementary_abelian()
    S.validate()
    with pytest.raises(GroupError):
        Subgroup(G, frozenset([G.zero, (1, 0)])).validate()
    assert cyclic_subgroup(G, (1, 1)).order == 12


@pytest.mark.parametrize("a,b", [((6,), (2, 3)), ((2, 12), (4, 6)), ((12, 18), (6, 36)), ((2, 2, 9), (2, 18))])
def test_isomorphism_between_presentations(a, b):
    A, B = AbelianGroup(a), AbelianGroup(b)
    iso = isomorphism_to(A, B)
    assert iso is not None and iso.is_injective()
    for x, y in product(list(A.elements())[:10], repeat=2):
        assert iso(A.add(x, y)) == B.add(iso(x), iso(y))


def test_non_isomorphic():
    assert isomorphism_to(AbelianGroup((4,)), AbelianGroup((2, 2))) is None
    assert isomorphism_to(AbelianGroup((8,)), AbelianGroup((2, 4))) is None


@settings(max_examples=30)
@given(st.sampled_from([(2, 4, 3), (6, 6), (2, 2, 2, 3), (4, 12)]), st.data())
def test_embedding_onto_subgroup(factors, data):
    G = AbelianGroup(factors)
    gens = [data.draw(st.sampled_from(list(G.elements()))) for _ in range(2)]
    S = Subgroup.generated_by(G, gens)
    A = AbelianGroup(tuple(sorted(_invariant_factors(S))))
    emb = embedding_onto(A, S)
    assert emb.is_injective()
    assert emb.image().elements == S.elements


def _invariant_factors(S):
    # invariant factors of S read off from element orders by brute force
    for cand in abelian_groups(S.order):
        counts = {}
        for x in cand.elements():
            counts[cand.element_order(x)] = counts.get(cand.element_order(x), 0) + 1
        mine = {}
        for x in S.elements:
            o = S.parent.element_order(x)
            mine[o] = mine.get(o, 0) + 1
        if counts == mine:
            return cand.factors
    raise AssertionError("no matching abelian group")


def test_parse_and_describe():
    G = AbelianGroup.parse("2,2,2,12")
    assert G.factors == (2, 2, 2, 12) and G.order == 96
    assert G.describe() == "Z_2^3 x Z_12"
    assert parse_element(G, "(1,0,1,5)") == (1, 0, 1, 5)
    with pytest.raises(GroupError):
        AbelianGroup.parse("2,x")
    with pytest.raises(GroupError):
        AbelianGroup((1, 3))
    assert AbelianGroup.parse("").order == 1
