import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyrsts.abelian_group import AbelianGroup, Subgroup, cyclic_subgroup, involutions, trivial_subgroup
from pyrsts.constructions import solve_relative_df
from pyrsts.diff_family import (
    DFError,
    DifferenceFamily,
    SpreadType,
    brute_force_check,
    delta,
    spread_type,
    verify_relative_df,
)

Z7 = AbelianGroup((7,))
Z13 = AbelianGroup((13,))


def involution_spread(G):
    return tuple(cyclic_subgroup(G, x) for x in involutions(G))


def test_delta_is_signed_differences():
    G = AbelianGroup((13,))
    assert sorted(delta(G, [(0,), (1,), (4,)])) == [(1,), (3,), (4,), (9,), (10,), (12,)]


def test_fano_plane_family():
    df = DifferenceFamily(Z7, (trivial_subgroup(Z7),), (((0,), (1,), (3,)),))
    rep = verify_relative_df(df)
    assert rep and rep.expected_blocks == 1
    assert brute_force_check(df)


def test_sts13_family():
    df = DifferenceFamily(Z13, (trivial_subgroup(Z13),), (((0,), (1,), (4,)), ((0,), (2,), (7,))))
    assert verify_relative_df(df) and brute_force_check(df)


def test_one_block_over_z2sq_z3():
    G = AbelianGroup((2, 2, 3))
    spread = involution_spread(G) + (cyclic_subgroup(G, (0, 0, 1)),)
    df = DifferenceFamily(G, spread, (((0, 0, 0), (1, 0, 1), (0, 1, 2)),))
    rep = verify_relative_df(df)
    assert rep, rep.summary()
    assert str(df.spread_type) == "{2^3,3}"


def test_verifier_reports_defects():
    df = DifferenceFamily(Z13, (trivial_subgroup(Z13),), (((0,), (1,), (4,)), ((0,), (1,), (4,))))
    rep = verify_relative_df(df)
    assert not rep and rep.missing and rep.duplicated
    assert "FAIL" in rep.summary()
    assert not brute_force_check(df)


def test_overlapping_spread_rejected_unless_loose():
    G = AbelianGroup((2, 2, 3))
    a = Subgroup.generated_by(G, [(1, 0, 0), (0, 1, 0)])
    b = cyclic_subgroup(G, (1, 0, 0))
    c = cyclic_subgroup(G, (0, 0, 1))
    df = DifferenceFamily(G, (a, b, c), (((0, 0, 0), (1, 0, 1), (0, 1, 2)),))
    assert not verify_relative_df(df)
    assert verify_relative_df(df, partial_spread=False)


def test_z9_relative_to_order3_has_no_family():
    # one block {0, x, y} would have to produce exactly {1,2,4,5,7,8}
    G = AbelianGroup((9,))
    H = cyclic_subgroup(G, (3,))
    want = sorted((i,) for i in (1, 2, 4, 5, 7, 8))
    brute = any(sorted(delta(G, [(0,), (x,), (y,)])) == want for x in range(9) for y in range(9))
    assert not brute
    assert solve_relative_df(G, (H,)) is None


@pytest.mark.parametrize(
    "text,f,e", [("2^7,3^2", 7, 2), ("{2^15,3}", 15, 1), ("3", 0, 1), ("", 0, 0), ("2,2,2", 3, 0)]
)
def test_spread_type_parse(text, f, e):
    st_ = SpreadType.parse(text)
    assert (st_.f, st_.e) == (f, e) and st_.in_scope


def test_spread_type_roundtrip_and_out_of_scope():
    assert str(SpreadType.parse("2^7,3^2")) == "{2^7,3^2}"
    assert not SpreadType.parse("2,5").in_scope
    with pytest.raises(DFError):
        SpreadType.parse("2^x")


def test_spread_type_ignores_trivial_member():
    G = AbelianGroup((2, 2))
    assert spread_type((trivial_subgroup(G),) + involution_spread(G)) == SpreadType(3, 0)


def test_json_roundtrip():
    G = AbelianGroup((2, 2, 3))
    spread = involution_spread(G) + (cyclic_subgroup(G, (0, 0, 1)),)
    df = DifferenceFamily(G, spread, (((0, 0, 0), (1, 0, 1), (0, 1, 2)),))
    back = DifferenceFamily.from_json(json.loads(json.dumps(df.to_json())))
    assert back.canonical() == df.canonical()
    assert set(df.to_json()) == {"group", "spread", "base_blocks"}


def test_coarsen_then_refine():
    G = AbelianGroup((2, 2, 3))
    spread = involution_spread(G) + (cyclic_subgroup(G, (0, 0, 1)),)
    df = DifferenceFamily(G, spread, (((0, 0, 0), (1, 0, 1), (0, 1, 2)),))
    coarse = df.coarsened()
    assert sorted(s.order for s in coarse.spread) == [3, 4]
    assert verify_relative_df(coarse)
    assert coarse.refined().canonical() == df.canonical()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([7, 13, 19, 25, 31, 37]), st.integers(0, 10**6))
def test_cyclic_families_match_brute_force(v, seed):
    # the verifier and the brute-force oracle agree on solver output and on corruptions
    G = AbelianGroup((v,))
    df = solve_relative_df(G, (trivial_subgroup(G),))
    assert df is not None and verify_relative_df(df) and brute_force_check(df)
    blocks = list(df.base_blocks)
    i = seed % len(blocks)
    a, b, c = blocks[i]
    blocks[i] = (a, b, ((c[0] + 1 + seed % (v - 1)) % v,))
    if len({a, b, blocks[i][2]}) == 3:
        bad = DifferenceFamily(G, df.spread, tuple(blocks))
        assert bool(verify_relative_df(bad)) == brute_force_check(bad)
