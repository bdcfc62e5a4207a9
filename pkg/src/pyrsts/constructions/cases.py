"""Case split of v - f = 2^(m+l) d and the family builders for each case."""

from __future__ import annotations

from dataclasses import dataclass

from ..abelian_group import AbelianGroup
from ..diff_family import DFError, DifferenceFamily, SpreadType
from .compose import ConstructionError, checked, transport
from .inductions import df_xy, df_xy2, inflate_and_patch
from .ingredients import IngredientKind, ingredient_df
from .tables import df_mld_315, df_Z23xZ4d

CASE_A, CASE_B_EVEN, CASE_B_ODD = "A", "B-even", "B-odd"


@dataclass(frozen=True)
class CaseDecomposition:
    f: int
    v: int
    m: int
    l: int
    d: int
    case: str

    @property
    def e_expected(self) -> int:
        return {CASE_A: 0, CASE_B_EVEN: 1, CASE_B_ODD: 2}[self.case]

    @property
    def u(self) -> int | None:
        """d / 9 in the odd-m case with 3 | d."""
        return self.d // 9 if self.case == CASE_B_ODD else None

    def __str__(self) -> str:
        return f"case {self.case}: m={self.m}, l={self.l}, d={self.d}"


def case_of(m: int, l: int, d: int) -> str | None:
    if d % 6 == (1 if l % 2 == 0 else 5):
        return CASE_A
    if m % 2 == 0 and d % 6 == 3:
        return CASE_B_EVEN
    if m % 2 == 1 and d % 18 == 9:
        return CASE_B_ODD
    return None


def _pow2(m: int) -> tuple[int, ...]:
    return (2,) * m


def _finish(df: DifferenceFamily, target: tuple[int, ...], m: int, e: int, what: str) -> DifferenceFamily:
    out = checked(transport(df.refined(), AbelianGroup(target)).canonical(), what)
    want = SpreadType(2**m - 1, e)
    if out.spread_type != want:
        raise ConstructionError(f"{what}: spread type {out.spread_type}, expected {want}")
    return out


def build_df_case_A(m: int, l: int, d: int) -> DifferenceFamily:
    if m < 3 or l < 0 or d % 6 != (1 if l % 2 == 0 else 5):
        raise DFError(f"case A needs m >= 3 and d = (-1)^l (mod 6); got m={m}, l={l}, d={d}")
    what = f"case A (m={m}, l={l}, d={d})"
    if l == 0:
        base = ingredient_df(IngredientKind.PELTESOHN1, d)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m)), None, what)
        target = _pow2(m) + ((d,) if d > 1 else ())
    elif l == 1 and m == 4:
        df = df_Z23xZ4d(d)
        target = _pow2(3) + (4 * d,)
    elif l == 1:
        df = inflate_and_patch(df_mld_315(d), AbelianGroup(_pow2(m - 3)), None, what)
        target = _pow2(m - 1) + (4 * d,)
    else:
        n = 2 ** (l + 1) * d
        base = ingredient_df(IngredientKind.PHELPS_ROSA, n)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 1)), None, what)
        target = _pow2(m - 1) + (n,)
    return _finish(df, target, m, 0, what)


def build_df_case_B_even(m: int, l: int, d: int) -> DifferenceFamily:
    if m < 4 or m % 2 or l < 0 or d % 6 != 3:
        raise DFError(f"case B-even needs even m >= 4 and d = 3 (mod 6); got m={m}, l={l}, d={d}")
    what = f"case B-even (m={m}, l={l}, d={d})"
    if l == 0:
        base = ingredient_df(IngredientKind.THREEPYR_2X2XODD, (d - 3) // 6)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 2)), df_xy(m - 2, 1), what)
        target = _pow2(m) + (d,)
    elif l == 1:
        base = ingredient_df(IngredientKind.PELTESOHN3, d)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 1) + (4,)), df_xy(m, 2), what)
        target = _pow2(m - 1) + (4,) + ((3, 3) if d == 9 else (d,))
    else:
        n = 2**l * d
        base = ingredient_df(IngredientKind.THREEPYR_4X12N, n // 12)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 2)), df_xy(m - 2, 1), what)
        target = _pow2(m - 2) + (4, n)
    return _finish(df, target, m, 1, what)


def build_df_case_B_odd(m: int, l: int, d: int) -> DifferenceFamily:
    if m < 3 or m % 2 == 0 or l < 0 or d % 18 != 9:
        raise DFError(f"case B-odd needs odd m >= 3 and d = 9 (mod 18); got m={m}, l={l}, d={d}")
    what = f"case B-odd (m={m}, l={l}, d={d})"
    u = d // 9
    odd = (3, 3) if u == 3 else (3 * u,)
    if l == 0:
        base = ingredient_df(IngredientKind.PELTESOHN3, 3 * u)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m) + (3,)), df_xy2(m, 1), what)
        target = _pow2(m) + (3,) + odd
    elif l == 1:
        base = ingredient_df(IngredientKind.PELTESOHN3, 3 * u)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 1) + (12,)), df_xy2(m, 2), what)
        target = _pow2(m - 1) + (12,) + odd
    else:
        n = 2**l * u
        if n % 4:
            raise ConstructionError(f"{what}: Buratti parameter n={n} is not 0 (mod 4)")
        base = ingredient_df(IngredientKind.BURATTI, n)
        df = inflate_and_patch(base, AbelianGroup(_pow2(m - 1)), df_xy(m - 1, 1), what)
        target = _pow2(m - 1) + (3, 6 * n)
    return _finish(df, target, m, 2, what)


BUILDERS = {
    CASE_A: build_df_case_A,
    CASE_B_EVEN: build_df_case_B_even,
    CASE_B_ODD: build_df_case_B_odd,
}
