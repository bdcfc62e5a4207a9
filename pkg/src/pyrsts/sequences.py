"""Extended Skolem/Langford sequences and the integer triples they yield."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from .cache import get_store
from .search import DEFAULT_BUDGET, BudgetExceeded, ExactCover, first_with_restarts

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LangfordSequence:
    k: int
    a: int
    b: int
    s: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return [(si, si + i + self.b - 1) for i, si in enumerate(self.s, start=1)]

    def is_valid(self) -> bool:
        if len(self.s) != self.a or not 1 <= self.k <= 2 * self.a + 1 or self.b < 1:
            return False
        used = [p for pair in self.pairs() for p in pair]
        return len(used) == len(set(used)) and set(used) == set(range(1, 2 * self.a + 2)) - {self.k}


def is_langford_admissible(k: int, a: int, b: int) -> bool:
    if not (b >= 1 and a >= 0 and 1 <= k <= 2 * a + 1):
        return False
    if not ((a, k) == (0, 1) or 2 * b - 1 <= a):
        return False
    r = a % 4
    if b % 2 == 1:
        return r in (0, 1) if k % 2 == 1 else r in (2, 3)
    return r in (0, 3) if k % 2 == 1 else r in (1, 2)


def _exact_cover(k: int, a: int, b: int, budget: int) -> ExactCover:
    n = 2 * a + 1
    positions = [p for p in range(1, n + 1) if p != k]
    # largest gaps first so ties in the MRV rule favour them
    columns: list = [("gap", i) for i in range(a, 0, -1)] + [("pos", p) for p in positions]
    rows = {}
    for i in range(a, 0, -1):
        gap = i + b - 1
        for p in positions:
            q = p + gap
            if q <= n and q != k:
                rows[(i, p)] = [("gap", i), ("pos", p), ("pos", q)]
    return ExactCover(columns, rows, budget)


def search_langford(k: int, a: int, b: int, budget: int = DEFAULT_BUDGET) -> LangfordSequence | None:
    """Complete search; None means proven absent, BudgetExceeded otherwise.

    Hard instances (hole at either end or in the middle, a in the high 20s
    and up) have heavy-tailed run times under any fixed ordering, so the
    exact cover is retried with seeded shuffles and growing limits.
    """
    if not 1 <= k <= 2 * a + 1 or b < 1 or a < 0:
        return None
    if a == 0:
        return LangfordSequence(k, 0, b, ()) if k == 1 else None
    sol = first_with_restarts(lambda: _exact_cover(k, a, b, budget), budget)
    if sol is None:
        return None
    s = [0] * a
    for i, p in sol:
        s[i - 1] = p
    return LangfordSequence(k, a, b, tuple(s))


def count_langford(k: int, a: int, b: int, limit: int | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Number of sequences (stopping at ``limit``); used as a brute-force oracle."""
    if a == 0:
        return 1 if k == 1 else 0
    n = 0
    for _ in _exact_cover(k, a, b, budget).solutions():
        n += 1
        if limit is not None and n >= limit:
            break
    return n


def langford_exists_exhaustive(k: int, a: int, b: int, budget: int = 10**12) -> bool:
    """Existence by the compiled left-to-right search (a <= 30)."""
    from ._kernels import langford_count

    if not 1 <= k <= 2 * a + 1:
        return False
    if a > 30:
        raise ValueError("exhaustive check limited to a <= 30")
    count, nodes, _ = langford_count(k, a, b, 1, budget)
    if nodes < 0:
        raise BudgetExceeded(budget)
    return count > 0


_memo: dict[tuple[int, int, int], LangfordSequence | None] = {}
_memo_lock = threading.Lock()


def find_extended_langford(
    k: int, a: int, b: int, budget: int = DEFAULT_BUDGET, store=None
) -> LangfordSequence | None:
    """A k-extended Langford sequence of order ``a`` and defect ``b``.

    Results are memoised per process and persisted across runs through
    ``store`` (a :class:`pyrsts.cache.Cache`, defaulting to the active one).
    Raises :class:`BudgetExceeded` rather than reporting absence when the
    node limit is hit.
    """
    if not 1 <= b <= 4:
        raise ValueError(f"defect b must lie in [1, 4], got {b}")
    key = (k, a, b)
    if store is None:
        store = get_store()
    log.info("langford request k=%d a=%d b=%d", k, a, b)
    with _memo_lock:
        hit = key in _memo
        seq = _memo.get(key)
    if hit:
        if store is not None and seq is not None and store.get_langford(k, a, b) is None:
            store.put_langford(k, a, b, list(seq.s))
        return seq
    if store is not None:
        cached = store.get_langford(k, a, b)
        if cached is not None:
            seq = LangfordSequence(k, a, b, tuple(cached))
            if seq.is_valid():
                with _memo_lock:
                    _memo[key] = seq
                return seq
    seq = search_langford(k, a, b, budget)
    if seq is not None and not seq.is_valid():
        raise AssertionError(f"search returned an invalid sequence for {key}")
    with _memo_lock:
        _memo[key] = seq
    if store is not None and seq is not None:
        store.put_langford(k, a, b, list(seq.s))
    return seq


def langford_triples(seq: LangfordSequence) -> list[tuple[int, int, int]]:
    """Integer triples whose differences are +-([b, 3a+b] minus {k+a+b-1})."""
    a, b = seq.a, seq.b
    return [(0, si + a + b - 1, si + i + a + 2 * (b - 1)) for i, si in enumerate(seq.s, start=1)]


def triples_difference_set(triples: list[tuple[int, int, int]]) -> list[int]:
    """Positive differences of integer triples, sorted, with multiplicity."""
    out = []
    for x, y, z in triples:
        out.extend(sorted((abs(y - x), abs(z - x), abs(z - y))))
    return sorted(out)


__all__ = [
    "BudgetExceeded",
    "LangfordSequence",
    "count_langford",
    "find_extended_langford",
    "is_langford_admissible",
    "langford_exists_exhaustive",
    "langford_triples",
    "search_langford",
    "triples_difference_set",
]
