"""Algorithm X over a dict-of-sets incidence structure.

Used by the Langford, difference-matrix-free DF and ingredient searches.
Column choice is minimum-remaining-values with ties broken by the column's
rank in the order given at construction, so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Callable, Hashable, Iterator, Mapping, Sequence


class BudgetExceeded(RuntimeError):
    """The node limit was hit before the search finished."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exceeded")
        self.nodes = nodes


DEFAULT_BUDGET = 10**8


class ExactCover:
    def __init__(
        self,
        columns: Sequence[Hashable],
        rows: Mapping[Hashable, Sequence[Hashable]],
        budget: int = DEFAULT_BUDGET,
    ):
        self.rank = {c: i for i, c in enumerate(columns)}
        self.X: dict[Hashable, set] = {c: set() for c in columns}
        self.Y = {r: list(cols) for r, cols in rows.items()}
        self.row_rank = {r: i for i, r in enumerate(rows)}
        for r, cols in self.Y.items():
            for c in cols:
                self.X[c].add(r)
        self.budget = budget
        self.nodes = 0

    def _select(self, r: Hashable) -> list[set]:
        X, Y = self.X, self.Y
        removed = []
        for j in Y[r]:
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].discard(i)
            removed.append(X.pop(j))
        return removed

    def _deselect(self, r: Hashable, removed: list[set]) -> None:
        X, Y = self.X, self.Y
        for j in reversed(Y[r]):
            X[j] = removed.pop()
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].add(i)

    def solutions(self) -> Iterator[list[Hashable]]:
        """Yield exact covers as lists of row keys (selection order)."""
        partial: list[Hashable] = []
        yield from self._solve(partial)

    def _solve(self, partial: list[Hashable]) -> Iterator[list[Hashable]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        X = self.X
        if not X:
            yield list(partial)
            return
        rank = self.rank
        col = min(X, key=lambda c: (len(X[c]), rank[c]))
        if not X[col]:
            return
        row_rank = self.row_rank
        for r in sorted(X[col], key=row_rank.__getitem__):
            partial.append(r)
            removed = self._select(r)
            yield from self._solve(partial)
            self._deselect(r, removed)
            partial.pop()

    def first(self) -> list[Hashable] | None:
        for sol in self.solutions():
            return sol
        return None

    def shuffle(self, seed: int) -> None:
        """Reorder row and column tie-breaks pseudo-randomly (reproducibly)."""
        rng = random.Random(seed)
        rows = list(self.row_rank)
        rng.shuffle(rows)
        self.row_rank = {r: i for i, r in enumerate(rows)}
        cols = list(self.rank)
        rng.shuffle(cols)
        self.rank = {c: i for i, c in enumerate(cols)}


def first_with_restarts(
    make: Callable[[], ExactCover], budget: int = DEFAULT_BUDGET, base: int = 1000
) -> list[Hashable] | None:
    """First exact cover, using seeded restarts with growing node limits.

    Attempt 0 uses the natural ordering; attempt i > 0 shuffles tie-breaks
    with seed i and gets ``base * 2**(i // 4)`` nodes.  An attempt that
    finishes without a solution proves absence (returns None).  The total
    node count never exceeds ``budget``.
    """
    spent = 0
    i = 0
    while True:
        remaining = budget - spent
        if remaining <= 0:
            raise BudgetExceeded(budget)
        ec = make()
        ec.budget = min(base * 2 ** (i // 4), remaining)
        if i:
            ec.shuffle(i)
        try:
            return ec.first()
        except BudgetExceeded:
            spent += ec.budget
        i += 1
