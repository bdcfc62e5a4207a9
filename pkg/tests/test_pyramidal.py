import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyrsts.abelian_group import AbelianGroup, trivial_subgroup
from pyrsts.constructions import df_xy
from pyrsts.diff_family import DifferenceFamily
from pyrsts.pyramidal import (
    BASE_ORBIT,
    FIXED_LINE,
    SHORT_ORBIT_2,
    SHORT_ORBIT_3,
    DevelopError,
    InadmissibleError,
    TripleSystem,
    admissible,
    admissible_pairs,
    build,
    cayley_table,
    construct,
    decompose,
    develop,
    verify_pyramidal,
)


def is_sts(blocks, v) -> bool:
    pairs = [tuple(sorted(p)) for b in blocks for p in combinations(b, 2)]
    return len(pairs) == len(set(pairs)) == v * (v - 1) // 2


@pytest.mark.parametrize(
    "f,v,ok,cond",
    [(7, 15, True, "a"), (7, 79, True, "c"), (15, 63, True, "b"), (31, 63, True, "a"), (7, 27, False, None),
     (5, 100, False, None), (15, 15, False, None), (7, 16, False, None), (0, 7, True, "f=0"), (1, 9, True, "f=1"),
     (1, 19, True, "f=1"), (1, 7, False, None), (3, 7, True, "f=3"), (3, 19, True, "f=3"), (3, 9, False, None)],
)
def test_admissible(f, v, ok, cond):
    a = admissible(f, v)
    assert bool(a) is ok and a.condition == cond
    assert a.reason


def test_admissible_pairs_sorted_and_filtered():
    pairs = admissible_pairs(100, 7)
    assert pairs == [(7, 15), (7, 39), (7, 63), (7, 79), (7, 87)]


@pytest.mark.parametrize(
    "f,v,m,l,d,case",
    [(7, 79, 3, 0, 9, "B-odd"), (7, 39, 3, 2, 1, "A"), (15, 31, 4, 0, 1, "A"), (15, 63, 4, 0, 3, "B-even"),
     (15, 111, 4, 1, 3, "B-even")],
)
def test_decompose(f, v, m, l, d, case):
    c = decompose(f, v)
    assert (c.m, c.l, c.d, c.case) == (m, l, d, case)
    assert v - f == 2 ** (m + l) * d


def test_decompose_inadmissible():
    with pytest.raises(InadmissibleError):
        decompose(7, 27)


def test_cayley_table():
    G = AbelianGroup((2, 3))
    t = cayley_table(G)
    for i in range(6):
        for j in range(6):
            assert G.element(int(t[i, j])) == G.add(G.element(i), G.element(j))


def test_develop_fano():
    Z7 = AbelianGroup((7,))
    df = DifferenceFamily(Z7, (trivial_subgroup(Z7),), (((0,), (1,), (3,)),))
    s = develop(df)
    assert s.v == 7 and s.f == 0 and len(s.blocks) == 7
    assert is_sts(s.blocks.tolist(), 7)
    assert verify_pyramidal(s)


def test_develop_sts15_orbit_accounting():
    s = develop(df_xy(2, 1))
    assert (s.v, s.f, len(s.blocks)) == (15, 3, 35)
    prov = {k: s.provenance.count(k) for k in (BASE_ORBIT, SHORT_ORBIT_2, SHORT_ORBIT_3, FIXED_LINE)}
    assert prov == {BASE_ORBIT: 12, SHORT_ORBIT_2: 18, SHORT_ORBIT_3: 4, FIXED_LINE: 1}
    rep = verify_pyramidal(s)
    assert rep, rep.summary()
    assert rep.certificate.spread_type.e == 1


def test_develop_rejects_invalid_family():
    Z7 = AbelianGroup((7,))
    with pytest.raises(DevelopError):
        develop(DifferenceFamily(Z7, (trivial_subgroup(Z7),), (((0,), (1,), (2,)),)))


def test_verifier_catches_missing_block():
    s = construct(7, 15)[0]
    broken = TripleSystem(s.v, s.f, s.group, s.blocks[1:], [])
    rep = verify_pyramidal(broken)
    assert not rep and rep.uncovered


def test_verifier_catches_broken_symmetry():
    # relabel two group points: still an STS, no longer invariant under G
    s = construct(7, 15)[0]
    b = s.blocks.copy()
    swap = {0: 1, 1: 0}
    b = np.vectorize(lambda p: swap.get(p, p))(b)
    rep = verify_pyramidal(TripleSystem(s.v, s.f, s.group, np.sort(b, axis=1), []))
    assert is_sts(b.tolist(), s.v)
    assert not rep and rep.bad_translations


def test_json_roundtrip():
    s, cert = construct(7, 39)
    data = json.loads(json.dumps(s.to_json()))
    assert set(data) == {"v", "f", "group", "blocks"}
    back = TripleSystem.from_json(data)
    assert np.array_equal(back.sorted().blocks, s.sorted().blocks)
    assert verify_pyramidal(back)
    assert data["blocks"][0][0].startswith("G(")


@pytest.mark.parametrize(
    "data",
    [{"v": 7}, {"v": 7, "f": 0, "group": [7], "blocks": [["G(0)", "G(1)"]]},
     {"v": 7, "f": 0, "group": [7], "blocks": [["G(0)", "G(1)", "G(9)"]]},
     {"v": 7, "f": 0, "group": [7], "blocks": [["G(0)", "G(1)", "X"]]}],
)
def test_from_json_errors(data):
    with pytest.raises(DevelopError):
        TripleSystem.from_json(data)


SMALL = [p for p in admissible_pairs(100) if p[0] in (0, 1, 3, 7, 15)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL))
def test_small_instances_build(pair):
    f, v = pair
    c = build(f, v)
    assert c.certificate.v == v and c.certificate.f == f
    assert all(c.certificate.flags.values())
    assert is_sts(c.system.blocks.tolist(), v)
    fixed = [b for b in c.system.blocks.tolist() if min(b) >= c.system.group.order]
    assert len(fixed) == f * (f - 1) // 6


def test_construct_refuses_inadmissible():
    with pytest.raises(InadmissibleError):
        construct(7, 27)
