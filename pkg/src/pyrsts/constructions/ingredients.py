"""Small "ingredient" families whose existence is classical.

They are found by :func:`solve_relative_df` rather than by closed formulas,
memoised per process and optionally persisted in the active cache.
"""

from __future__ import annotations

import enum
import logging
import threading

from ..abelian_group import AbelianGroup, cyclic_subgroup, trivial_subgroup
from ..cache import get_store
from ..diff_family import DFError, DifferenceFamily, SpreadType, verify_relative_df
from ..search import DEFAULT_BUDGET
from .compose import ConstructionError
from .solver import solve_for_type, solve_relative_df

log = logging.getLogger(__name__)


class IngredientKind(enum.Enum):
    PELTESOHN1 = "peltesohn1"  # Z_v, v = 1 (mod 6), relative to {0}
    PELTESOHN3 = "peltesohn3"  # Z_v rel <v/3>, v = 3 (mod 6), v != 9; Z_3^2 rel Z_3 for v = 9
    PHELPS_ROSA = "phelps-rosa"  # Z_v rel <v/2>, v = 2, 8 (mod 24)
    BURATTI = "buratti"  # Z_3 x Z_6n, type {2, 3^2}, n = 0, 1 (mod 4)
    THREEPYR_4X12N = "threepyr-4x12n"  # Z_4 x Z_12n, type {2^3, 3}
    THREEPYR_2X2XODD = "threepyr-2x2xodd"  # Z_2^2 x Z_(6n+3), type {2^3, 3}


def _problem(kind: IngredientKind, p: int):
    """(group, explicit spread or None, spread type) for an ingredient."""
    K = IngredientKind
    if kind is K.PELTESOHN1:
        if p % 6 != 1:
            raise DFError(f"{kind.value} needs v = 1 (mod 6), got {p}")
        G = AbelianGroup((p,) if p > 1 else ())
        return G, (trivial_subgroup(G),), None
    if kind is K.PELTESOHN3:
        if p % 6 != 3:
            raise DFError(f"{kind.value} needs v = 3 (mod 6), got {p}")
        if p == 9:
            G = AbelianGroup((3, 3))
            return G, (cyclic_subgroup(G, (0, 1)),), None
        G = AbelianGroup((p,))
        return G, (cyclic_subgroup(G, (p // 3,)),), None
    if kind is K.PHELPS_ROSA:
        if p % 24 not in (2, 8):
            raise DFError(f"{kind.value} needs v = 2, 8 (mod 24), got {p}")
        G = AbelianGroup((p,))
        return G, (cyclic_subgroup(G, (p // 2,)),), None
    if kind is K.BURATTI:
        if p < 1 or p % 4 not in (0, 1):
            raise DFError(f"{kind.value} needs n = 0, 1 (mod 4), got {p}")
        return AbelianGroup((3, 6 * p)), None, SpreadType(1, 2)
    if kind is K.THREEPYR_4X12N:
        if p < 1:
            raise DFError(f"{kind.value} needs n >= 1, got {p}")
        return AbelianGroup((4, 12 * p)), None, SpreadType(3, 1)
    if kind is K.THREEPYR_2X2XODD:
        if p < 0:
            raise DFError(f"{kind.value} needs n >= 0, got {p}")
        return AbelianGroup((2, 2, 6 * p + 3)), None, SpreadType(3, 1)
    raise DFError(f"unknown ingredient {kind}")


_memo: dict[tuple[IngredientKind, int], DifferenceFamily] = {}
_memo_lock = threading.Lock()


def _acceptable(df: DifferenceFamily, G: AbelianGroup, spread, stype) -> bool:
    if df.group != G or not verify_relative_df(df):
        return False
    if spread is not None:
        return set(s.elements for s in df.spread) == set(s.elements for s in spread)
    return df.spread_type == stype


def ingredient_df(kind: IngredientKind, param: int, budget: int = DEFAULT_BUDGET) -> DifferenceFamily:
    """The ingredient family for ``kind`` with parameter v (or n)."""
    key = (kind, param)
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    G, spread, stype = _problem(kind, param)
    store = get_store()
    cache_key = f"{kind.value}-{param}"
    df = None
    if store is not None:
        data = store.get_df(cache_key)
        if data is not None:
            try:
                cand = DifferenceFamily.from_json(data)
            except DFError:
                cand = None
            if cand is not None and _acceptable(cand, G, spread, stype):
                df = cand
            else:
                log.warning("discarding invalid cache entry %s", cache_key)
    if df is None:
        log.info("searching ingredient %s", cache_key)
        if spread is not None:
            df = solve_relative_df(G, spread, budget)
        else:
            df = solve_for_type(G, stype, budget)
        if df is None:
            raise ConstructionError(f"no {kind.value} family exists for parameter {param}")
        if not _acceptable(df, G, spread, stype):
            raise ConstructionError(f"{kind.value}({param}): search output failed verification")
        if store is not None:
            store.put_df(cache_key, df.to_json())
    with _memo_lock:
        _memo[key] = df
    return df
