"""(K,3,1)-difference matrices: existence, construction and checking.

Construction rules:

* odd-order K: rows ``(0, g, 2g)``;
* elementary abelian 2-groups of rank >= 2: rows ``(0, x, a*x)`` in GF(2^r)
  with ``a`` outside the prime field;
* the remaining small 2-groups (``Z_2 x Z_4``, ``Z_2^2 x Z_4``, ...) by an
  orthomorphism search;
* products of the above, transported onto K's factor list.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .abelian_group import AbelianGroup, Element, isomorphism_to
from .search import DEFAULT_BUDGET, BudgetExceeded


class DMError(ValueError):
    pass


@dataclass(frozen=True)
class DifferenceMatrix:
    group: AbelianGroup
    rows: tuple[tuple[Element, ...], tuple[Element, ...], tuple[Element, ...]]

    def to_json(self) -> dict:
        return {"group": list(self.group.factors), "rows": [[list(x) for x in r] for r in self.rows]}


@dataclass
class DMReport:
    ok: bool
    # (row i, row j, repeated values, missing values) for each failing pair
    failures: list[tuple[int, int, list[Element], list[Element]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "PASS: every row difference is a permutation"
        return "FAIL: " + "; ".join(
            f"rows {i}-{j}: repeated {rep[:6]} missing {mis[:6]}" for i, j, rep, mis in self.failures
        )


def verify_dm(M: DifferenceMatrix) -> DMReport:
    K = M.group
    n = K.order
    failures = []
    if len(M.rows) != 3 or any(len(r) != n for r in M.rows):
        return DMReport(False, [(-1, -1, [], [])])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        diffs = [K.sub(b, a) for a, b in zip(M.rows[i], M.rows[j])]
        seen: dict[Element, int] = {}
        for d in diffs:
            seen[d] = seen.get(d, 0) + 1
        rep = sorted(d for d, c in seen.items() if c > 1)
        mis = sorted(x for x in K.elements() if x not in seen)
        if rep or mis:
            failures.append((i, j, rep, mis))
    return DMReport(not failures, failures)


def dm_exists(K: AbelianGroup) -> bool:
    """True iff the Sylow 2-subgroup of K is trivial or noncyclic."""
    return len(K.sylow2_factors()) != 1


# -- building blocks ---------------------------------------------------------


def _odd_dm(K: AbelianGroup) -> DifferenceMatrix:
    elems = list(K.elements())
    return DifferenceMatrix(K, (tuple(K.zero for _ in elems), tuple(elems), tuple(K.mul(2, g) for g in elems)))


def _irreducible_poly(r: int) -> int:
    """Smallest irreducible polynomial of degree r over GF(2), as a bitmask."""

    def pmod(a: int, m: int) -> int:
        dm = m.bit_length()
        while a.bit_length() >= dm:
            a ^= m << (a.bit_length() - dm)
        return a

    for poly in range(1 << r, 1 << (r + 1)):
        if all(pmod(poly, d) for d in range(2, 1 << (r // 2 + 1))):
            return poly
    raise DMError(f"no irreducible polynomial of degree {r}")


def _gf_mul(a: int, b: int, poly: int, r: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> r:
            a ^= poly
    return out


def _elementary_2_dm(r: int) -> DifferenceMatrix:
    K = AbelianGroup((2,) * r)
    poly = _irreducible_poly(r)

    def vec(x: int) -> Element:
        return tuple((x >> (r - 1 - i)) & 1 for i in range(r))

    xs = range(1 << r)
    return DifferenceMatrix(
        K,
        (
            tuple(K.zero for _ in xs),
            tuple(vec(x) for x in xs),
            tuple(vec(_gf_mul(2, x, poly, r)) for x in xs),
        ),
    )


def search_dm(K: AbelianGroup, budget: int = DEFAULT_BUDGET) -> DifferenceMatrix | None:
    """Exhaustive orthomorphism search; None means no (K,3,1)-DM exists.

    First row normalised to zero and second row to the identity by column
    permutation, third row fixed at 0 in column 0 by translation.  Groups
    of order <= 62 go through the compiled kernel.
    """
    n = K.order
    if n == 1:
        return DifferenceMatrix(K, ((K.zero,), (K.zero,), (K.zero,)))
    elems = [K.element(i) for i in range(n)]
    add = [[K.index(K.add(x, y)) for y in elems] for x in elems]
    neg = [K.index(K.neg(x)) for x in elems]
    if n <= 62:
        from ._kernels import orthomorphism_search

        found, nodes, arr = orthomorphism_search(np.array(add, np.int64), np.array(neg, np.int64), budget)
        if nodes < 0:
            raise BudgetExceeded(budget)
        if not found:
            return None
        phi = [int(p) for p in arr]
    else:
        phi = [-1] * n
        phi[0] = 0
        nodes = 0

        def dfs(x: int, used_val: int, used_diff: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            if x == n:
                return True
            nx = neg[x]
            for y in range(1, n):
                if used_val >> y & 1:
                    continue
                d = add[y][nx]
                if used_diff >> d & 1:
                    continue
                phi[x] = y
                if dfs(x + 1, used_val | 1 << y, used_diff | 1 << d):
                    return True
            phi[x] = -1
            return False

        if not dfs(1, 1, 1):
            return None
    return DifferenceMatrix(K, (tuple(K.zero for _ in elems), tuple(elems), tuple(elems[p] for p in phi)))


def walk_dm(K: AbelianGroup, budget: int = DEFAULT_BUDGET, attempts: int = 8) -> DifferenceMatrix | None:
    """Seeded local search for an orthomorphism; None only means "not found".

    Much faster than :func:`search_dm` on groups where orthomorphisms are
    plentiful, but it can never prove absence, so it is used only when
    :func:`dm_exists` holds.
    """
    from ._kernels import orthomorphism_walk

    n = K.order
    elems = [K.element(i) for i in range(n)]
    add = np.array([[K.index(K.add(x, y)) for y in elems] for x in elems], np.int64)
    neg = np.array([K.index(K.neg(x)) for x in elems], np.int64)
    for seed in range(attempts):
        found, _, arr = orthomorphism_walk(add, neg, seed, budget // attempts)
        if found:
            phi = [int(p) for p in arr]
            return DifferenceMatrix(K, (tuple(K.zero for _ in elems), tuple(elems), tuple(elems[p] for p in phi)))
    return None


def dm_product(A: DifferenceMatrix, B: DifferenceMatrix) -> DifferenceMatrix:
    """DM over A.group x B.group with columns indexed by pairs of columns."""
    G = A.group.product(B.group)
    rows = tuple(
        tuple(a + b for a in ra for b in rb) for ra, rb in zip(A.rows, B.rows)
    )
    return DifferenceMatrix(G, rows)  # type: ignore[arg-type]


def transport_dm(M: DifferenceMatrix, K: AbelianGroup) -> DifferenceMatrix:
    iso = isomorphism_to(M.group, K)
    if iso is None:
        raise DMError(f"{M.group.describe()} is not isomorphic to {K.describe()}")
    return DifferenceMatrix(K, tuple(tuple(iso(x) for x in r) for r in M.rows))  # type: ignore[arg-type]


def _two_chunks(orders: list[int]) -> list[tuple[int, ...]]:
    """Split a noncyclic 2-group into pieces that each carry a DM."""
    twos = orders.count(2)
    big = sorted(q for q in orders if q > 2)
    chunks: list[list[int]] = []
    while len(big) >= 2:
        chunks.append([big.pop(), big.pop()])
    if big:
        if twos:
            chunks.append([2, big.pop()])
            twos -= 1
        else:
            chunks[-1].append(big.pop())
    if twos >= 2:
        chunks.append([2] * twos)
    elif twos == 1:
        chunks[-1].insert(0, 2)
    return [tuple(sorted(c)) for c in chunks]


_cache: dict[tuple[int, ...], DifferenceMatrix] = {}
_cache_lock = threading.Lock()


def _chunk_dm(orders: tuple[int, ...], budget: int) -> DifferenceMatrix:
    if all(q == 2 for q in orders):
        return _elementary_2_dm(len(orders))
    with _cache_lock:
        if orders in _cache:
            return _cache[orders]
    M = walk_dm(AbelianGroup(orders), budget)
    if M is None:
        raise DMError(f"no difference matrix found over {AbelianGroup(orders).describe()}")
    with _cache_lock:
        _cache[orders] = M
    return M


def dm_build(K: AbelianGroup, budget: int = DEFAULT_BUDGET) -> DifferenceMatrix:
    if not dm_exists(K):
        raise DMError(f"{K.describe()} has a nontrivial cyclic Sylow 2-subgroup; no DM exists")
    with _cache_lock:
        if K.factors in _cache:
            return _cache[K.factors]
    prim = K.primary_decomposition()
    two = [q for q in prim if q % 2 == 0]
    odd = [q for q in prim if q % 2]
    M = _odd_dm(AbelianGroup(tuple(odd)))
    if two:
        for chunk in _two_chunks(two):
            M = dm_product(_chunk_dm(chunk, budget), M)
    M = transport_dm(M, K)
    if not verify_dm(M):
        raise DMError(f"constructed matrix over {K.describe()} failed verification")
    with _cache_lock:
        _cache[K.factors] = M
    return M

