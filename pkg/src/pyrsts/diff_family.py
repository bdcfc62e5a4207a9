"""Partial spreads, difference lists and the relative difference family check."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .abelian_group import (
    AbelianGroup,
    Element,
    GroupError,
    Homomorphism,
    Subgroup,
    prime_powers,
    sigma,
)

Triple = tuple[Element, Element, Element]


class DFError(ValueError):
    pass


def make_triple(a: Element, b: Element, c: Element) -> Triple:
    """Normalized (sorted) triple; rejects repeated points."""
    if a == b or a == c or b == c:
        raise DFError(f"triple has repeated points: {a}, {b}, {c}")
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def delta(G: AbelianGroup, T: Sequence[Element]) -> list[Element]:
    """The six signed differences of a triple, with multiplicity."""
    out = []
    for x, y in combinations(T, 2):
        out.append(G.sub(x, y))
        out.append(G.sub(y, x))
    return out


@dataclass(frozen=True)
class SpreadType:
    f: int
    e: int
    other: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        for p, k in ((2, self.f), (3, self.e)):
            if k:
                parts.append(f"{p}^{k}" if k > 1 else str(p))
        parts.extend(str(o) for o in self.other)
        return "{" + ",".join(parts) + "}"

    @property
    def in_scope(self) -> bool:
        return not self.other

    @classmethod
    def parse(cls, text: str) -> "SpreadType":
        """Parse ``"2^7,3^2"`` (braces optional, bare ``3`` means ``3^1``)."""
        f = e = 0
        other: list[int] = []
        body = text.strip().strip("{}").strip()
        if body:
            for tok in body.split(","):
                base, _, mult = tok.strip().partition("^")
                try:
                    n, k = int(base), int(mult) if mult else 1
                except ValueError as exc:
                    raise DFError(f"bad spread type {text!r}") from exc
                if n == 2:
                    f += k
                elif n == 3:
                    e += k
                else:
                    other.extend([n] * k)
        return cls(f, e, tuple(sorted(other)))


def spread_type(spread: Iterable[Subgroup]) -> SpreadType:
    f = e = 0
    other = []
    for s in spread:
        if s.order == 1:
            continue
        if s.order == 2:
            f += 1
        elif s.order == 3:
            e += 1
        else:
            other.append(s.order)
    return SpreadType(f, e, tuple(sorted(other)))


def spread_union(spread: Iterable[Subgroup]) -> set[Element]:
    out: set[Element] = set()
    for s in spread:
        out |= s.elements
    return out


def spread_overlaps(spread: Sequence[Subgroup]) -> list[tuple[int, int]]:
    """Index pairs of members that share a nonzero element."""
    bad = []
    for i, j in combinations(range(len(spread)), 2):
        if len(spread[i].elements & spread[j].elements) > 1:
            bad.append((i, j))
    return bad


def _spread_key(s: Subgroup) -> tuple:
    return (s.order, s.sorted_elements())


@dataclass(frozen=True)
class DifferenceFamily:
    group: AbelianGroup
    spread: tuple[Subgroup, ...]
    base_blocks: tuple[Triple, ...]

    def __post_init__(self) -> None:
        G = self.group
        for s in self.spread:
            if s.parent != G:
                raise DFError("spread member lives in a different group")
        blocks = []
        for T in self.base_blocks:
            for x in T:
                if x not in G:
                    raise DFError(f"{x} is not an element of {G.describe()}")
            blocks.append(make_triple(*T))
        object.__setattr__(self, "base_blocks", tuple(blocks))
        object.__setattr__(self, "spread", tuple(self.spread))

    @property
    def spread_type(self) -> SpreadType:
        return spread_type(self.spread)

    def expected_block_count(self) -> int | None:
        """(|G| - |union of spread|) / 6, or None if not integral."""
        n = self.group.order - len(spread_union(self.spread) | {self.group.zero})
        return n // 6 if n % 6 == 0 else None

    def canonical(self) -> "DifferenceFamily":
        """Blocks and spread members sorted lexicographically."""
        return DifferenceFamily(
            self.group,
            tuple(sorted(self.spread, key=_spread_key)),
            tuple(sorted(self.base_blocks)),
        )

    def map(self, hom: Homomorphism) -> "DifferenceFamily":
        """Push the family forward along an injective homomorphism."""
        if hom.source != self.group:
            raise DFError("homomorphism source does not match the family's group")
        T = hom.target
        return DifferenceFamily(
            T,
            tuple(Subgroup(T, frozenset(hom(x) for x in s.elements)) for s in self.spread),
            tuple(tuple(hom(x) for x in B) for B in self.base_blocks),  # type: ignore[misc]
        )

    def refined(self) -> "DifferenceFamily":
        """Replace every elementary abelian member S by sigma(S), merging duplicates.

        The set covered by the spread is unchanged, so the difference
        condition is preserved.
        """
        members: dict[frozenset, Subgroup] = {}
        for s in self.spread:
            if s.order == 1:
                continue
            if not s.is_elementary_abelian():
                raise DFError(f"cannot refine a non-elementary member of order {s.order}")
            for t in sigma(s):
                members.setdefault(t.elements, t)
        return DifferenceFamily(self.group, tuple(members.values()), self.base_blocks).canonical()

    def coarsened(self) -> "DifferenceFamily":
        """Merge members of the same prime-power type whose union is a subgroup.

        This undoes :meth:`refined` (e.g. sigma(Z_2^m) back to Z_2^m) before
        a family is inflated by a difference matrix, where overlapping
        members would otherwise appear.  Trivial members are kept since
        they inflate to {0} x K.
        """
        by_prime: dict[int, list[Subgroup]] = {}
        loose: list[Subgroup] = []
        for s in self.spread:
            pp = prime_powers(s.order)
            if len(pp) == 1:
                by_prime.setdefault(pp[0][0], []).append(s)
            else:
                loose.append(s)
        members = list(loose)
        for p in sorted(by_prime):
            group = by_prime[p]
            union = Subgroup(self.group, frozenset().union(*(s.elements for s in group)))
            if len(group) > 1 and _is_subgroup(union):
                members.append(union)
            else:
                members.extend(group)
        return DifferenceFamily(self.group, tuple(members), self.base_blocks).canonical()

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        c = self.canonical()
        return {
            "group": list(c.group.factors),
            "spread": [[list(x) for x in s.sorted_elements()] for s in c.spread],
            "base_blocks": [[list(x) for x in B] for B in c.base_blocks],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DifferenceFamily":
        try:
            G = AbelianGroup(tuple(data["group"]))
            spread = tuple(
                Subgroup(G, frozenset(G.elem(*x) for x in members)) for members in data["spread"]
            )
            blocks = tuple(tuple(G.elem(*x) for x in B) for B in data["base_blocks"])
        except (KeyError, TypeError, GroupError) as exc:
            raise DFError(f"malformed difference family: {exc}") from exc
        for B in blocks:
            if len(B) != 3:
                raise DFError("base blocks must be triples")
        return cls(G, spread, blocks)  # type: ignore[arg-type]


@dataclass
class DFReport:
    ok: bool
    group: str
    spread_type: SpreadType
    blocks: int
    expected_blocks: int | None
    missing: list[Element] = field(default_factory=list)
    duplicated: list[tuple[Element, int]] = field(default_factory=list)
    in_spread: list[Element] = field(default_factory=list)
    overlapping_members: list[tuple[int, int]] = field(default_factory=list)
    bad_subgroups: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return (
                f"PASS: ({self.group}, {self.spread_type}, 3, 1)-DF with {self.blocks} base blocks"
            )
        lines = [f"FAIL: ({self.group}, {self.spread_type}) with {self.blocks} base blocks"]
        if self.bad_subgroups:
            lines.append(f"  spread members that are not subgroups: {self.bad_subgroups}")
        if self.overlapping_members:
            lines.append(f"  spread members meeting nontrivially: {self.overlapping_members}")
        if self.missing:
            lines.append(f"  {len(self.missing)} missing differences: {self.missing[:12]}")
        if self.duplicated:
            lines.append(f"  {len(self.duplicated)} repeated differences: {self.duplicated[:12]}")
        if self.in_spread:
            lines.append(f"  {len(self.in_spread)} differences inside the spread: {self.in_spread[:12]}")
        return "\n".join(lines)


def _is_subgroup(s: Subgroup) -> bool:
    try:
        s.validate()
    except GroupError:
        return False
    return True


def verify_relative_df(df: DifferenceFamily, partial_spread: bool = True) -> DFReport:
    """Check that the base blocks' differences tile G minus the spread, once each.

    With ``partial_spread=False`` the members may overlap; this is the
    looser notion used for intermediate families inside the inductions.
    """
    G = df.group
    union = spread_union(df.spread) | {G.zero}  # 0 is never a difference
    tally: Counter[int] = Counter()
    for T in df.base_blocks:
        for x in delta(G, T):
            tally[G.index(x)] += 1
    union_idx = {G.index(x) for x in union}
    missing, duplicated, inside = [], [], []
    for i in range(G.order):
        c = tally.get(i, 0)
        if i in union_idx:
            if c:
                inside.append(G.element(i))
        elif c == 0:
            missing.append(G.element(i))
        elif c > 1:
            duplicated.append((G.element(i), c))
    bad = [i for i, s in enumerate(df.spread) if not _is_subgroup(s)]
    overlaps = spread_overlaps(df.spread) if partial_spread else []
    ok = not (missing or duplicated or inside or overlaps or bad)
    return DFReport(
        ok=ok,
        group=G.describe(),
        spread_type=df.spread_type,
        blocks=len(df.base_blocks),
        expected_blocks=df.expected_block_count(),
        missing=missing,
        duplicated=duplicated,
        in_spread=inside,
        overlapping_members=overlaps,
        bad_subgroups=bad,
    )


def brute_force_check(df: DifferenceFamily) -> bool:
    """Independent oracle: develop every base block and count covered pairs.

    Pairs {x, y} of G with y - x outside the spread must be covered exactly
    once by the translates of the base blocks, and no other pair at all.
    """
    G = df.group
    union = spread_union(df.spread)
    if len(spread_overlaps(df.spread)) or not all(_is_subgroup(s) for s in df.spread):
        return False
    elems = list(G.elements())
    seen: Counter[tuple[Element, Element]] = Counter()
    for T in df.base_blocks:
        for g in elems:
            pts = sorted(G.add(x, g) for x in T)
            for a, b in combinations(pts, 2):
                seen[(a, b)] += 1
    for a, b in combinations(elems, 2):
        want = 0 if G.sub(b, a) in union else 1
        if seen.get((a, b), 0) != want:
            return False
    return True
