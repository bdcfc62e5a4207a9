"""The two inductive families feeding the cases with order-3 spread members.

df_xy(x, y)  over Z_2^(x-1) x Z_(2^y) x Z_3,    type {2^(2^x - 1), 3},   x even
df_xy2(x, y) over Z_2^(x-1) x Z_(2^y) x Z_3^2,  type {2^(2^x - 1), 3^2}, x odd

Each step multiplies by a Z_2^2 difference matrix and repairs every
inflated order-3 member with the one-block family over Z_2^2 x Z_3.
"""

from __future__ import annotations

from functools import lru_cache

from ..abelian_group import AbelianGroup
from ..diff_family import DFError, DifferenceFamily
from ..diff_matrix import dm_build
from .compose import checked, expand_by_dm, patch, transport
from .ingredients import IngredientKind, ingredient_df
from .tables import df_mld_309, df_mld_319, df_mld_413


def inflate_and_patch(
    df: DifferenceFamily, K: AbelianGroup, sub: DifferenceFamily | None, what: str
) -> DifferenceFamily:
    """df (x) DM(K), then patch each member of order divisible by 3 with ``sub``.

    The inflated family is checked in the loose sense (members may meet in
    0 x K); the patched and refined result is checked as a partial spread.
    """
    big = checked(expand_by_dm(df.coarsened(), dm_build(K)), f"{what}: inflation", partial_spread=False)
    if sub is not None:
        for member in [s for s in big.spread if s.order % 3 == 0]:
            big = patch(big, member, sub)
    return checked(big.refined(), what)


def _step(prev: DifferenceFamily, target: AbelianGroup, what: str) -> DifferenceFamily:
    small = ingredient_df(IngredientKind.THREEPYR_2X2XODD, 0)
    out = inflate_and_patch(prev, AbelianGroup((2, 2)), small, what)
    return checked(transport(out, target), what)


def _check_xy(x: int, y: int, parity: int, lo: int) -> None:
    if y not in (1, 2) or x % 2 != parity or x < lo:
        raise DFError(f"invalid parameters (x, y) = ({x}, {y})")


@lru_cache(maxsize=None)
def df_xy(x: int, y: int) -> DifferenceFamily:
    _check_xy(x, y, 0, 2 * y)
    target = AbelianGroup((2,) * (x - 1) + (2**y, 3))
    what = f"df_xy({x},{y})"
    if x == 2 * y:
        base = ingredient_df(IngredientKind.THREEPYR_2X2XODD, 0) if y == 1 else df_mld_413()
        return checked(transport(base, target).refined(), what)
    return _step(df_xy(x - 2, y), target, what)


@lru_cache(maxsize=None)
def df_xy2(x: int, y: int) -> DifferenceFamily:
    _check_xy(x, y, 1, 3)
    target = AbelianGroup((2,) * (x - 1) + (2**y, 3, 3))
    what = f"df_xy2({x},{y})"
    if x == 3:
        base = df_mld_309() if y == 1 else df_mld_319()
        return checked(transport(base, target).refined(), what)
    return _step(df_xy2(x - 2, y), target, what)
