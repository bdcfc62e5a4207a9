"""Operations that combine difference families: inflation, patching, transport."""

from __future__ import annotations

from ..abelian_group import AbelianGroup, Subgroup, embedding_onto, isomorphism_to
from ..diff_family import DFError, DifferenceFamily, verify_relative_df
from ..diff_matrix import DifferenceMatrix, verify_dm


class ConstructionError(RuntimeError):
    """A construction produced something that failed verification."""


def checked(df: DifferenceFamily, what: str, partial_spread: bool = True) -> DifferenceFamily:
    rep = verify_relative_df(df, partial_spread=partial_spread)
    if not rep:
        raise ConstructionError(f"{what}: {rep.summary()}")
    return df


def expand_by_dm(df: DifferenceFamily, M: DifferenceMatrix) -> DifferenceFamily:
    """Inflate a family over H to one over H x K using a (K,3,1)-DM.

    Each base block {a, b, c} becomes |K| blocks {(a, m1j), (b, m2j), (c, m3j)}
    and every spread member S becomes S x K.  Members of the result may
    overlap (in 0 x K) when the input has more than one.
    """
    if not verify_dm(M):
        raise DFError("difference matrix failed verification")
    H, K = df.group, M.group
    G = H.product(K)
    kel = list(K.elements())
    spread = tuple(
        Subgroup(G, frozenset(s + k for s in S.elements for k in kel)) for S in df.spread
    )
    r1, r2, r3 = M.rows
    blocks = []
    for a, b, c in df.base_blocks:
        for j in range(K.order):
            blocks.append((a + r1[j], b + r2[j], c + r3[j]))
    return DifferenceFamily(G, spread, tuple(blocks))  # type: ignore[arg-type]


def patch(df: DifferenceFamily, member: Subgroup, sub: DifferenceFamily) -> DifferenceFamily:
    """Replace spread member ``member`` by a family living inside it.

    ``sub`` is over an abstract group isomorphic to ``member``; it is
    embedded by any isomorphism onto ``member``.  The inductions only patch
    with families whose spread members are characteristic (Sylow subgroups,
    prime-order subgroups generated by all involutions), so the choice of
    isomorphism does not matter; the result is verified by the caller.
    """
    if member not in df.spread:
        raise DFError("patch target is not a spread member")
    emb = embedding_onto(sub.group, member)
    placed = sub.map(emb)
    rest = tuple(s for s in df.spread if s != member)
    return DifferenceFamily(df.group, rest + placed.spread, df.base_blocks + placed.base_blocks)


def transport(df: DifferenceFamily, target: AbelianGroup) -> DifferenceFamily:
    """Re-express a family over an isomorphic group with another factor list."""
    if df.group == target:
        return df
    iso = isomorphism_to(df.group, target)
    if iso is None:
        raise DFError(f"{df.group.describe()} is not isomorphic to {target.describe()}")
    return df.map(iso)


def member_containing(df: DifferenceFamily, x) -> Subgroup:
    """The spread member that contains element ``x`` (first match)."""
    for s in df.spread:
        if x in s.elements:
            return s
    raise DFError(f"no spread member contains {x}")
