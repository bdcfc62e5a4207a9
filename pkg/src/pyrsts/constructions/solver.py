"""Generic search for relative difference families with block size 3.

The differences to be produced are split into classes {x, -x}; a base
block {0, x, y} consumes exactly the three classes of x, y and y - x, so a
family is an exact cover of the classes by such blocks.  Every block of a
solution has a translate of this shape with x the class representative
(smallest index), which keeps the row set small.
"""

from __future__ import annotations

import logging
from itertools import combinations

from ..abelian_group import AbelianGroup, Subgroup, cyclic_subgroup, involutions
from ..diff_family import DifferenceFamily, SpreadType, spread_union
from ..search import DEFAULT_BUDGET, ExactCover, first_with_restarts

log = logging.getLogger(__name__)


def _tables(G: AbelianGroup) -> tuple[list[list[int]], list[int], list[int]]:
    elems = [G.element(i) for i in range(G.order)]
    add = [[G.index(G.add(x, y)) for y in elems] for x in elems]
    neg = [G.index(G.neg(x)) for x in elems]
    orders = [G.element_order(x) for x in elems]
    return add, neg, orders


def _cover_problem(G: AbelianGroup, spread):
    """Columns, rows, or None when a parity argument already rules it out."""
    n = G.order
    add, neg, orders = _tables(G)
    covered = {G.index(x) for x in spread_union(spread)} | {0}
    rest = [i for i in range(n) if i not in covered]
    if any(orders[i] == 2 for i in rest) or len(rest) % 6:
        return None
    cls = {i: min(i, neg[i]) for i in rest}
    reps = sorted(set(cls.values()), key=lambda i: (-orders[i], i))
    rows: dict[tuple[int, int, int], list[int]] = {}
    for x in reps:
        for y in rest:
            if y == x:
                continue
            z = add[y][neg[x]]
            if z in covered:
                continue
            cs = {cls[x], cls[y], cls[z]}
            if len(cs) < 3:
                continue
            block = (0, x, y)
            key = min(tuple(sorted(add[p][neg[t]] for p in block)) for t in block)
            if key not in rows:
                rows[key] = [cls[x], cls[y], cls[z]]
    return reps, dict(sorted(rows.items()))


def solve_relative_df(
    G: AbelianGroup, spread, budget: int = DEFAULT_BUDGET
) -> DifferenceFamily | None:
    """A (G, spread, 3, 1)-DF, or None if none exists.

    Raises :class:`pyrsts.search.BudgetExceeded` when the node limit is
    reached before the search space is exhausted.
    """
    spread = tuple(spread)
    prob = _cover_problem(G, spread)
    if prob is None:
        return None
    columns, rows = prob
    if not columns:
        return DifferenceFamily(G, spread, ()).canonical()
    sol = first_with_restarts(lambda: ExactCover(columns, rows, budget), budget)
    if sol is None:
        return None
    blocks = tuple(tuple(G.element(i) for i in key) for key in sorted(sol))
    return DifferenceFamily(G, spread, blocks).canonical()  # type: ignore[arg-type]


def order3_subgroups(G: AbelianGroup) -> list[Subgroup]:
    seen: dict[frozenset, Subgroup] = {}
    for x in G.elements():
        if G.element_order(x) == 3:
            s = cyclic_subgroup(G, x)
            seen.setdefault(s.elements, s)
    return sorted(seen.values(), key=lambda s: s.sorted_elements())


def involution_spread(G: AbelianGroup) -> list[Subgroup]:
    return [cyclic_subgroup(G, s) for s in involutions(G)]


def candidate_spreads(G: AbelianGroup, stype: SpreadType):
    """Partial spreads of type {2^f, 3^e} in G, up to the order-3 choice.

    A DF relative to a spread must have every involution inside the spread
    (an involution difference always occurs twice), so the order-2 part is
    forced; the order-3 members range over all e-subsets.
    """
    if not stype.in_scope:
        raise ValueError(f"spread type {stype} is outside {{2^f, 3^e}}")
    twos = involution_spread(G)
    if len(twos) != stype.f:
        return
    for threes in combinations(order3_subgroups(G), stype.e):
        yield tuple(twos) + threes


def solve_for_type(
    G: AbelianGroup, stype: SpreadType, budget: int = DEFAULT_BUDGET
) -> DifferenceFamily | None:
    """Search every spread of the given type in turn; None if all fail."""
    for spread in candidate_spreads(G, stype):
        df = solve_relative_df(G, spread, budget)
        if df is not None:
            return df
    return None
