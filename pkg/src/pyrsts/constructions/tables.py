"""Explicit base-block tables, including the Langford-fed infinite families.

Coordinates are written as in the tables: a leading Z_2^2 symbol
(0, a, b, c with a + b = c) followed by the remaining cyclic coordinates.
Every function returns a verified family.
"""

from __future__ import annotations

from ..abelian_group import AbelianGroup, Subgroup, cyclic_subgroup, sigma
from ..diff_family import DFError, DifferenceFamily
from ..sequences import find_extended_langford, langford_triples
from .compose import ConstructionError, checked

O, A, B, C = (0, 0), (1, 0), (0, 1), (1, 1)


def _df(G: AbelianGroup, spread, rows) -> DifferenceFamily:
    """Family with base blocks {0, x, y} for each (x, y) in ``rows``."""
    blocks = tuple((G.zero, G.elem(*x), G.elem(*y)) for x, y in rows)
    return DifferenceFamily(G, tuple(spread), blocks)  # type: ignore[arg-type]


def _span(G: AbelianGroup, *gens) -> Subgroup:
    return Subgroup.generated_by(G, [G.elem(*g) for g in gens])


def _langford_rows(k: int, a: int, b: int) -> list[tuple[int, int, int]]:
    seq = find_extended_langford(k, a, b)
    if seq is None:
        raise ConstructionError(f"no extended Langford sequence for (k,a,b)=({k},{a},{b})")
    return langford_triples(seq)


def df_mld_315(d: int) -> DifferenceFamily:
    """Z_2^2 x Z_4d relative to Z_2^2 x {0, 2d} (order 8), d = 5 (mod 6)."""
    if d % 6 != 5:
        raise DFError(f"d must be 5 (mod 6), got {d}")
    G = AbelianGroup((2, 2, 4 * d))
    rows = []
    for i in range(1, 2 * d - 2):
        if i <= d - 1:
            rows.append((A + (i,), C + (2 * i,)))
        else:
            rows.append((A + (i + 1,), C + (2 * i + 1,)))
    rows += [
        (O + (d + 1,), A + (2 * d + 1,)),
        (O + (1,), B + (2 * d + 2,)),
        (O + (2,), C + (3,)),
    ]
    if d == 5:
        rows += [(O + (3,), O + (8,)), (O + (4,), O + (11,))]
    else:
        for _, y, z in _langford_rows((d + 1) // 3, (2 * d - 4) // 3, 3):
            rows.append((O + (y,), O + (z,)))
    H = _span(G, (1, 0, 0), (0, 1, 0), (0, 0, 2 * d))
    return checked(_df(G, [H], rows), f"df_mld_315({d})")


def df_Z23xZ4d(d: int) -> DifferenceFamily:
    """Z_2^2 x Z_2 x Z_4d relative to Z_2^2 x Z_2 x {0, 2d} (order 16)."""
    if d % 6 != 5:
        raise DFError(f"d must be 5 (mod 6), got {d}")
    G = AbelianGroup((2, 2, 2, 4 * d))
    rows = []
    for j in range(1, d):
        rows.append((A + (0, j), C + (0, 2 * j + 1)))
        rows.append((A + (0, j + d), C + (1, 2 * (j + d))))
        rows.append((A + (1, j), C + (0, 2 * j)))
        rows.append((A + (1, j + d - 1), C + (1, 2 * (j + d) - 1)))
    rows += [
        (O + (1, d + 1), A + (1, 2 * d + 1)),
        (O + (1, d - 1), B + (1, d)),
        (O + (1, 2), C + (1, 1)),
    ]
    if d == 11:
        rows += [
            (O + (0, 1), O + (0, 21)),
            (O + (0, 3), O + (0, 19)),
            (O + (0, 2), O + (0, 8)),
            (O + (0, 4), O + (0, 18)),
            (O + (1, 1), O + (0, 12)),
            (O + (1, 23), O + (0, 10)),
        ]
        rows += [(O + (1, i - 4), O + (1, 27 - i)) for i in range(7, 14)]
    else:
        five = d % 12 == 5
        # U_1, U_2, U_3 as (eps, t) pairs
        rows += [
            (O + (1, d + 3), O + (0, -1)) if five else (O + (1, d + 2), O + (0, -2)),
            (O + (1, 1), O + (0, -2)) if five else (O + (1, 1), O + (0, 4)),
            (O + (1, d), O + (0, 2 * d + 2)) if five else (O + (1, d), O + (0, -3)),
        ]
        rows += [(O + (1, i), O + (1, 2 * d + 3 - i)) for i in range(4, d - 1)]
        rows += [
            (O + (0, 3), O + (0, 2 * d - 3)) if five else (O + (0, 2 * d - 6), O + (0, 2 * d - 1)),
            (O + (0, 5), O + (0, 2 * d + 1)) if five else (O + (0, 2 * d - 3), O + (0, 2 * d - 2)),
        ]
        if five:
            k, a, b = 2 * (d - 5) // 3 + 1, (d - 5) // 3, 2
        else:
            k, a, b = 2 * (d - 5) // 3, (d - 5) // 3, 3
        if a:
            for _, y, z in _langford_rows(k, a, b):
                rows.append((O + (0, 2 * y), O + (0, 2 * z)))
    H = _span(G, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 2 * d))
    return checked(_df(G, [H], rows), f"df_Z23xZ4d({d})")


def df_mld_413() -> DifferenceFamily:
    """Z_2^2 x Z_2 x Z_12 with spread type {2^15, 3}."""
    G = AbelianGroup((2, 2, 2, 12))
    al = [A, B, C, A]
    rows = []
    for i in range(3):
        rows.append((al[i] + (1, 4), al[i + 1] + (1, 9)))
    for i in range(3):
        rows.append((al[i] + (1, 2), al[i + 1] + (1, 5)))
    rows += [
        (A + (0, 4), C + (0, 8)),
        (A + (0, 1), C + (0, 2)),
        (O + (1, 1), A + (1, 11)),
        (O + (1, 3), B + (1, 1)),
        (O + (1, 2), C + (1, 1)),
        (O + (1, 4), O + (0, 11)),
        (O + (0, 3), O + (0, 10)),
    ]
    twos = sigma(_span(G, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 6)))
    spread = twos + [cyclic_subgroup(G, (0, 0, 0, 4))]
    return checked(_df(G, spread, rows), "df_mld_413")


def df_mld_309() -> DifferenceFamily:
    """Z_2^3 x Z_3^2 with spread type {2^7, 3^2}."""
    G = AbelianGroup((2, 2, 2, 3, 3))
    rows = [
        ((0, 0, 1, 1, 0), (0, 0, 0, 2, 2)),
        ((0, 0, 1, 1, 1), (0, 0, 0, 1, 2)),
        ((0, 1, 1, 2, 1), (1, 0, 0, 0, 2)),
        ((0, 1, 1, 0, 1), (1, 0, 0, 2, 1)),
        ((1, 1, 1, 2, 1), (0, 1, 0, 0, 2)),
        ((1, 1, 1, 0, 1), (0, 1, 0, 2, 1)),
        ((1, 0, 1, 2, 1), (1, 1, 0, 0, 2)),
        ((1, 0, 1, 0, 1), (1, 1, 0, 2, 1)),
        ((0, 1, 0, 1, 0), (1, 0, 0, 2, 0)),
        ((0, 1, 0, 1, 1), (1, 0, 0, 2, 2)),
    ]
    # the order-3 members are the two uncovered ones
    twos = sigma(_span(G, (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)))
    spread = twos + [cyclic_subgroup(G, (0, 0, 0, 0, 1)), cyclic_subgroup(G, (0, 0, 0, 1, 0))]
    return checked(_df(G, spread, rows), "df_mld_309")


def df_mld_319() -> DifferenceFamily:
    """Z_2^2 x Z_3 x Z_12 with spread type {2^7, 3^2}."""
    G = AbelianGroup((2, 2, 3, 12))
    a = [6 - i for i in range(1, 6)]
    a2 = [5 + i if i <= 3 else 6 + i for i in range(1, 6)]
    rows = []
    for ai, bi in zip(a, a2):
        rows.append((A + (1, ai), C + (2, ai - bi)))
    for ai, bi in zip(a, a2):
        rows.append((A + (1, bi), C + (2, bi - ai)))
    rows += [
        (A + (1, 0), C + (2, 0)),
        (A + (0, 4), C + (0, 8)),
        (A + (0, 1), C + (0, 3)),
        (A + (0, 2), C + (0, 11)),
        (A + (0, 9), C + (0, 10)),
        (O + (1, 4), A + (1, 9)),
        (O + (1, 8), B + (1, 3)),
        (O + (1, 1), C + (1, 6)),
        (O + (0, 1), O + (1, 11)),
        (O + (0, 2), O + (1, 5)),
        (O + (0, 3), O + (1, 9)),
        (O + (0, 5), O + (1, 7)),
    ]
    twos = sigma(_span(G, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 6)))
    spread = twos + [cyclic_subgroup(G, (0, 0, 0, 4)), cyclic_subgroup(G, (0, 0, 1, 0))]
    return checked(_df(G, spread, rows), "df_mld_319")
