"""Difference family constructions: composition, tables, inductions, cases."""

from .cases import (
    CASE_A,
    CASE_B_EVEN,
    CASE_B_ODD,
    CaseDecomposition,
    build_df_case_A,
    build_df_case_B_even,
    build_df_case_B_odd,
    case_of,
)
from .compose import ConstructionError, checked, expand_by_dm, patch, transport
from .inductions import df_xy, df_xy2, inflate_and_patch
from .ingredients import IngredientKind, ingredient_df
from .solver import candidate_spreads, solve_for_type, solve_relative_df
from .tables import df_mld_309, df_mld_315, df_mld_319, df_mld_413, df_Z23xZ4d

__all__ = [
    "CASE_A",
    "CASE_B_EVEN",
    "CASE_B_ODD",
    "CaseDecomposition",
    "ConstructionError",
    "IngredientKind",
    "build_df_case_A",
    "build_df_case_B_even",
    "build_df_case_B_odd",
    "candidate_spreads",
    "case_of",
    "checked",
    "df_Z23xZ4d",
    "df_mld_309",
    "df_mld_315",
    "df_mld_319",
    "df_mld_413",
    "df_xy",
    "df_xy2",
    "expand_by_dm",
    "inflate_and_patch",
    "ingredient_df",
    "patch",
    "solve_for_type",
    "solve_relative_df",
    "transport",
]
