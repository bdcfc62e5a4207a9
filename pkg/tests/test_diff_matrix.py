import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyrsts.abelian_group import AbelianGroup, abelian_groups
from pyrsts.diff_matrix import (
    DifferenceMatrix,
    DMError,
    dm_build,
    dm_exists,
    dm_product,
    search_dm,
    verify_dm,
    walk_dm,
)


def rows_are_difference_permutations(M: DifferenceMatrix) -> bool:
    # independent restatement of the defining property
    K = M.group
    elems = set(K.elements())
    for i in range(3):
        for j in range(i + 1, 3):
            diffs = [K.sub(a, b) for a, b in zip(M.rows[i], M.rows[j])]
            if set(diffs) != elems or len(diffs) != K.order:
                return False
    return True


@pytest.mark.parametrize(
    "factors,exists",
    [((), True), ((3,), True), ((2,), False), ((4,), False), ((12,), False), ((2, 2), True), ((2, 4, 3), True), ((8, 5), False)],
)
def test_dm_exists(factors, exists):
    assert dm_exists(AbelianGroup(factors)) is exists


@pytest.mark.parametrize("factors", [(3,), (5,), (2, 2), (2, 2, 2), (2, 4), (2, 2, 3), (4, 4), (2, 2, 2, 2, 2), (2, 32), (2, 128)])
def test_dm_build_verifies(factors):
    M = dm_build(AbelianGroup(factors))
    assert verify_dm(M) and rows_are_difference_permutations(M)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 200))
def test_every_admissible_group_of_order(n):
    for K in abelian_groups(n):
        if dm_exists(K):
            M = dm_build(K)
            assert rows_are_difference_permutations(M)
        else:
            with pytest.raises(DMError):
                dm_build(K)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_no_dm_over_even_cyclic(n):
    assert search_dm(AbelianGroup((n,))) is None


def test_exhaustive_finds_existing():
    for factors in [(3,), (2, 2), (2, 4), (7,), (3, 3)]:
        M = search_dm(AbelianGroup(factors))
        assert M is not None and rows_are_difference_permutations(M)


def test_walk_is_deterministic_and_valid():
    K = AbelianGroup((4, 8))
    a, b = walk_dm(K), walk_dm(K)
    assert a == b and rows_are_difference_permutations(a)


def test_product_of_matrices():
    A = dm_build(AbelianGroup((3,)))
    B = dm_build(AbelianGroup((2, 2)))
    P = dm_product(A, B)
    assert P.group.order == 12 and rows_are_difference_permutations(P)


def test_verifier_rejects_broken_matrix():
    M = dm_build(AbelianGroup((5,)))
    rows = [list(r) for r in M.rows]
    rows[2][1], rows[2][2] = rows[2][2], rows[2][1]
    broken = DifferenceMatrix(M.group, tuple(tuple(r) for r in rows))
    assert not verify_dm(broken)
