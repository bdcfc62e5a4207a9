"""Finite abelian groups presented as direct products of cyclic groups.

Elements are plain tuples of residues, one per cyclic factor.  Every group
also offers a mixed-radix integer encoding (``index``/``element``) used as a
packed key in sets, tallies and lookup tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

Element = tuple[int, ...]


class GroupError(ValueError):
    pass


def prime_powers(n: int) -> list[tuple[int, int]]:
    """Split ``n`` into ``[(p, p**k), ...]`` sorted by prime."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_r}; the empty factor list is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if any(n < 2 for n in self.factors):
            raise GroupError(f"cyclic factors must be >= 2, got {self.factors}")

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse a descriptor such as ``"2,2,2,12"`` (empty string = trivial)."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise GroupError(f"bad group descriptor {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(map(str, self.factors))

    def describe(self) -> str:
        if not self.factors:
            return "trivial"
        parts = []
        i = 0
        fs = self.factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            parts.append(f"Z_{fs[i]}" + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return " x ".join(parts)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return prod(self.factors)

    @cached_property
    def _radix(self) -> tuple[int, ...]:
        # index = sum x_i * radix_i, last coordinate varies fastest
        r = []
        acc = 1
        for n in reversed(self.factors):
            r.append(acc)
            acc *= n
        return tuple(reversed(r))

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def __contains__(self, x: object) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(isinstance(c, int) and 0 <= c < n for c, n in zip(x, self.factors))
        )

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if len(x) != len(self.factors):
                raise GroupError(f"element {x} does not match group shape {self.factors}")

    def elem(self, *coords: int) -> Element:
        """Reduce arbitrary integers into an element."""
        self._check(coords)
        return tuple(c % n for c, n in zip(coords, self.factors))

    def add(self, g: Element, h: Element) -> Element:
        self._check(g, h)
        return tuple((a + b) % n for a, b, n in zip(g, h, self.factors))

    def sub(self, g: Element, h: Element) -> Element:
        self._check(g, h)
        return tuple((a - b) % n for a, b, n in zip(g, h, self.factors))

    def neg(self, g: Element) -> Element:
        self._check(g)
        return tuple(-a % n for a, n in zip(g, self.factors))

    def mul(self, k: int, g: Element) -> Element:
        self._check(g)
        return tuple(k * a % n for a, n in zip(g, self.factors))

    def element_order(self, g: Element) -> int:
        self._check(g)
        return reduce(_lcm, (n // gcd(a, n) for a, n in zip(g, self.factors)), 1)

    def elements(self) -> Iterator[Element]:
        """All elements in increasing ``index`` order."""
        return product(*(range(n) for n in self.factors))

    def index(self, g: Element) -> int:
        return sum(a * r for a, r in zip(g, self._radix))

    def element(self, i: int) -> Element:
        out = []
        for n in reversed(self.factors):
            i, c = divmod(i, n)
            out.append(c)
        return tuple(reversed(out))

    # -- structure ---------------------------------------------------------

    def primary_decomposition(self) -> list[int]:
        """Sorted multiset of prime-power cyclic orders; isomorphism invariant."""
        return sorted(q for n in self.factors for _, q in prime_powers(n))

    def is_isomorphic(self, other: "AbelianGroup") -> bool:
        return self.primary_decomposition() == other.primary_decomposition()

    def sylow2_factors(self) -> list[int]:
        return [q for n in self.factors for p, q in prime_powers(n) if p == 2]

    def product(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.factors + other.factors)


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k, largest parts first, in reverse lexicographic order."""
    if k == 0:
        yield ()
        return
    top = k if largest is None else min(k, largest)
    for first in range(top, 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups(n: int) -> list[AbelianGroup]:
    """Every abelian group of order n once, as invariant factors n_1 | n_2 | ...

    Ordered by number of factors, then lexicographically, so the cyclic
    group comes first.
    """
    if n < 1:
        raise GroupError("group order must be positive")
    per_prime = [[(p, lam) for lam in _partitions(_log(q, p))] for p, q in prime_powers(n)]
    out = []
    for combo in product(*per_prime):
        width = max((len(lam) for _, lam in combo), default=0)
        factors = []
        for i in range(width):
            f = 1
            for p, lam in combo:
                if i < len(lam):
                    f *= p ** lam[i]
            factors.append(f)
        out.append(AbelianGroup(tuple(sorted(factors))))
    return sorted(out, key=lambda G: (G.rank, G.factors))


def _log(q: int, p: int) -> int:
    k = 0
    while q > 1:
        q //= p
        k += 1
    return k


def involutions(G: AbelianGroup) -> list[Element]:
    """Elements of order 2, sorted lexicographically."""
    halves = [(0, n // 2) if n % 2 == 0 else (0,) for n in G.factors]
    return sorted(x for x in product(*halves) if any(x))


@dataclass(frozen=True)
class Subgroup:
    parent: AbelianGroup
    elements: frozenset[Element] = field(compare=True)

    @classmethod
    def generated_by(cls, G: AbelianGroup, gens: Iterable[Element]) -> "Subgroup":
        elems = {G.zero}
        for g in gens:
            if g not in G:
                raise GroupError(f"{g} is not an element of {G.describe()}")
            new = set(elems)
            x = g
            while x not in elems:
                new.update(G.add(x, e) for e in elems)
                x = G.add(x, g)
            elems = new
        return cls(G, frozenset(elems))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_elementary_abelian(self) -> bool:
        """True iff every nonzero element has the same prime order."""
        pp = prime_powers(self.order)
        if len(pp) != 1:
            return self.order == 1
        p = pp[0][0]
        G = self.parent
        return all(G.mul(p, x) == G.zero for x in self.elements)

    def validate(self) -> None:
        G = self.parent
        if G.zero not in self.elements:
            raise GroupError("subgroup must contain zero")
        for x in self.elements:
            if G.neg(x) not in self.elements:
                raise GroupError(f"subgroup not closed under negation at {x}")
            for y in self.elements:
                if G.add(x, y) not in self.elements:
                    raise GroupError(f"subgroup not closed under addition at {x}+{y}")
        if G.order % self.order:
            raise GroupError("subgroup order does not divide group order")


def cyclic_subgroup(G: AbelianGroup, g: Element) -> Subgroup:
    elems = [G.zero]
    x = g
    while x != G.zero:
        elems.append(x)
        x = G.add(x, g)
    return Subgroup(G, frozenset(elems))


def sigma(H: Subgroup) -> list[Subgroup]:
    """All subgroups of prime order contained in ``H``."""
    G = H.parent
    found: list[Subgroup] = []
    covered = {G.zero}
    for x in sorted(H.elements):
        if x in covered:
            continue
        pp = prime_powers(G.element_order(x))
        if len(pp) == 1 and pp[0][0] == pp[0][1]:
            s = cyclic_subgroup(G, x)
            found.append(s)
            covered |= s.elements
    return sorted(found, key=lambda s: (s.order, s.sorted_elements()))


def whole(G: AbelianGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements()))


def trivial_subgroup(G: AbelianGroup) -> Subgroup:
    return Subgroup(G, frozenset([G.zero]))


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism fixed by the images of the unit generators of ``source``."""

    source: AbelianGroup
    target: AbelianGroup
    images: tuple[Element, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise GroupError("need one image per source generator")
        T = self.target
        for n, img in zip(self.source.factors, self.images):
            if T.mul(n, img) != T.zero:
                raise GroupError(f"image {img} has order not dividing {n}")

    def __call__(self, x: Element) -> Element:
        T = self.target
        acc = [0] * T.rank
        for c, img in zip(x, self.images):
            if c:
                for j, a in enumerate(img):
                    acc[j] += c * a
        return tuple(a % n for a, n in zip(acc, T.factors))

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """``other`` applied after ``self``."""
        if other.source != self.target:
            raise GroupError("cannot compose: mismatched groups")
        return Homomorphism(self.source, other.target, tuple(other(img) for img in self.images))

    def is_injective(self) -> bool:
        return len({self(x) for x in self.source.elements()}) == self.source.order

    def image(self) -> Subgroup:
        return Subgroup.generated_by(self.target, self.images)


def _components(G: AbelianGroup) -> list[tuple[int, int, int]]:
    """(prime, prime power, factor index) for every primary cyclic component."""
    return sorted(
        (p, q, i) for i, n in enumerate(G.factors) for p, q in prime_powers(n)
    )


def isomorphism_to(G: AbelianGroup, H: AbelianGroup) -> Homomorphism | None:
    """An explicit isomorphism G -> H built from CRT splits, or None."""
    cg, ch = _components(G), _components(H)
    if [c[:2] for c in cg] != [c[:2] for c in ch]:
        return None
    images = [[0] * H.rank for _ in G.factors]
    for (p, q, i), (_, _, j) in zip(cg, ch):
        nj = H.factors[j]
        co = nj // q
        # CRT idempotent of Z_nj for the q-part: 1 mod q, 0 mod co
        u = co * pow(co, -1, q) % nj if q > 1 else 0
        images[i][j] = (images[i][j] + u) % nj
    return Homomorphism(G, H, tuple(tuple(v) for v in images))


def identity(G: AbelianGroup) -> Homomorphism:
    return Homomorphism(G, G, tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank)))


def subgroup_basis(S: Subgroup) -> tuple[AbelianGroup, Homomorphism]:
    """Decompose ``S`` into cyclic prime-power factors.

    Returns an abstract group B and an injective homomorphism B -> parent
    whose image is S.
    """
    G = S.parent
    gens: list[Element] = []
    orders: list[int] = []
    for p, _ in prime_powers(S.order):
        sylow = [x for x in S.elements if _is_power_of(G.element_order(x), p)]
        size = len(sylow)
        cands = sorted((x for x in sylow if x != G.zero), key=lambda x: (-G.element_order(x), x))

        def extend(span: frozenset[Element], chosen: list[Element]) -> list[Element] | None:
            if len(span) == size:
                return chosen
            for x in cands:
                cyc = cyclic_subgroup(G, x).elements
                if len(cyc & span) != 1:
                    continue
                new = frozenset(G.add(a, b) for a in span for b in cyc)
                got = extend(new, chosen + [x])
                if got is not None:
                    return got
            return None

        picked = extend(frozenset([G.zero]), [])
        if picked is None:
            raise GroupError("failed to decompose subgroup")
        gens.extend(picked)
        orders.extend(G.element_order(x) for x in picked)
    B = AbelianGroup(tuple(orders))
    return B, Homomorphism(B, G, tuple(gens))


def embedding_onto(A: AbelianGroup, S: Subgroup) -> Homomorphism:
    """An injective homomorphism A -> S.parent with image exactly S."""
    B, incl = subgroup_basis(S)
    iso = isomorphism_to(A, B)
    if iso is None:
        raise GroupError(f"{A.describe()} is not isomorphic to the subgroup of order {S.order}")
    return iso.then(incl)


_ELEM_RE = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\)$")


def parse_element(G: AbelianGroup, text: str) -> Element:
    """Parse ``"(1,0,1,7)"``; residues are reduced into range."""
    m = _ELEM_RE.match(text.strip())
    if not m:
        raise GroupError(f"bad element {text!r}")
    inner = m.group(1)
    coords = tuple(int(t) for t in inner.split(",")) if inner else ()
    return G.elem(*coords)


def format_element(x: Sequence[int]) -> str:
    return "(" + ",".join(map(str, x)) + ")"
