"""f-pyramidal Steiner triple systems: spectrum, development and verification.

Points are numbered 0..|G|-1 for group elements (in the group's index
order) followed by |G|..v-1 for the fixed points, where fixed point i is
attached to the i-th involution of G in sorted order.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from .abelian_group import (
    AbelianGroup,
    Element,
    GroupError,
    abelian_groups,
    format_element,
    involutions,
)
from .constructions import (
    CaseDecomposition,
    ConstructionError,
    case_of,
    solve_for_type,
)
from .constructions.cases import BUILDERS
from .diff_family import DifferenceFamily, SpreadType, verify_relative_df
from .search import DEFAULT_BUDGET, BudgetExceeded

log = logging.getLogger(__name__)

FULL_TRANSLATION_LIMIT = 4096
SAMPLED_TRANSLATIONS = 64


class DevelopError(ValueError):
    pass


class InadmissibleError(ValueError):
    pass


# -- spectrum ------------------------------------------------------------------


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    reason: str
    m: int | None = None
    condition: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def mersenne_exponent(f: int) -> int | None:
    """m with f = 2^m - 1, or None."""
    m = (f + 1).bit_length() - 1
    return m if f >= 0 and 2**m - 1 == f else None


def admissible(f: int, v: int) -> Admissibility:
    """Whether some abelian group has an f-pyramidal action on an STS(v)."""
    no = lambda why: Admissibility(False, why)  # noqa: E731
    if f < 0 or v < 1:
        return no("requires f >= 0 and v >= 1")
    if f != 0 and f % 6 not in (1, 3):
        return no("f must be 0 or ≡ 1,3 (mod 6)")
    if v % 6 not in (1, 3):
        return no("v ≢ 1,3 (mod 6)")
    if not 2 * f < v:
        return no("requires f < v/2")
    if f == 0:
        return Admissibility(True, "admissible: f=0, v ≡ 1,3 (mod 6)", condition="f=0")
    if f == 1:
        if v % 24 in (3, 9):
            return Admissibility(True, f"admissible: f=1, v ≡ {v % 24} (mod 24)", condition="f=1")
        if v % 72 in (1, 19):
            return Admissibility(True, f"admissible: f=1, v ≡ {v % 72} (mod 72)", condition="f=1")
        return no("f=1 needs v ≡ 3,9 (mod 24) or v ≡ 1,19 (mod 72)")
    if f == 3:
        if v % 24 in (7, 15):
            return Admissibility(True, f"admissible: f=3, v ≡ {v % 24} (mod 24)", condition="f=3")
        if v % 48 in (3, 19):
            return Admissibility(True, f"admissible: f=3, v ≡ {v % 48} (mod 48)", condition="f=3")
        return no("f=3 needs v ≡ 7,15 (mod 24) or v ≡ 3,19 (mod 48)")
    m = mersenne_exponent(f)
    if m is None:
        return no(f"f={f} > 3 is not of the form 2^m - 1")
    q = 2**m
    if v % (3 * q) == (2 * q - 1) % (3 * q):
        return Admissibility(True, f"admissible: condition (a), m={m}", m, "a")
    if m % 2 == 0 and v % (3 * q) == q - 1:
        return Admissibility(True, f"admissible: condition (b), m={m}", m, "b")
    if m % 2 == 1 and v % (9 * q) == q - 1:
        return Admissibility(True, f"admissible: condition (c), m={m}", m, "c")
    other = f"v ≢ {q - 1} (mod {3 * q})" if m % 2 == 0 else f"v ≢ {q - 1} (mod {9 * q})"
    return no(f"no condition holds for m={m}: v ≢ {2 * q - 1} (mod {3 * q}), {other}")


def admissible_pairs(max_v: int, f: int | None = None) -> list[tuple[int, int]]:
    fs = [f] if f is not None else range(0, max_v // 2 + 1)
    return [(ff, v) for ff in fs for v in range(1, max_v + 1) if admissible(ff, v)]


def decompose(f: int, v: int) -> CaseDecomposition:
    adm = admissible(f, v)
    if not adm:
        raise InadmissibleError(f"(f, v) = ({f}, {v}) is not admissible: {adm.reason}")
    if f < 7:
        raise InadmissibleError("case decomposition applies to f >= 7")
    m = mersenne_exponent(f)
    assert m is not None
    r = (v - f) >> m
    if r << m != v - f:
        raise ConstructionError(f"2^{m} does not divide v - f = {v - f}")
    l = 0
    while r % 2 == 0:
        r //= 2
        l += 1
    case = case_of(m, l, r)
    if case is None:
        raise ConstructionError(f"no case applies to m={m}, l={l}, d={r}")
    return CaseDecomposition(f, v, m, l, r, case)


# -- points and systems ----------------------------------------------------------


@dataclass(frozen=True)
class GroupPoint:
    element: Element

    def __str__(self) -> str:
        return "G" + format_element(self.element)


@dataclass(frozen=True)
class FixedPoint:
    index: int

    def __str__(self) -> str:
        return f"F{self.index}"


PointRef = Union[GroupPoint, FixedPoint]

BASE_ORBIT, SHORT_ORBIT_2, SHORT_ORBIT_3, FIXED_LINE = "base-orbit", "short-orbit-2", "short-orbit-3", "fixed-line"


def cayley_table(G: AbelianGroup) -> np.ndarray:
    """table[i, j] = index(element(i) + element(j))."""
    n = G.order
    if not G.factors:
        return np.zeros((1, 1), np.int64)
    coords = np.array(np.unravel_index(np.arange(n), G.factors)).T  # (n, r), last coordinate fastest
    mods = np.array(G.factors)
    s = (coords[:, None, :] + coords[None, :, :]) % mods
    return np.ravel_multi_index(tuple(s[..., k] for k in range(len(G.factors))), G.factors)


@dataclass
class TripleSystem:
    v: int
    f: int
    group: AbelianGroup
    blocks: np.ndarray  # (b, 3) point ids, each row ascending
    provenance: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.group.order

    def point(self, pid: int) -> PointRef:
        if pid < self.n:
            return GroupPoint(self.group.element(pid))
        return FixedPoint(pid - self.n)

    def label(self, pid: int) -> str:
        return str(self.point(pid))

    def block_refs(self) -> list[tuple[PointRef, PointRef, PointRef]]:
        return [tuple(self.point(int(p)) for p in row) for row in self.blocks]  # type: ignore[misc]

    def sorted(self) -> "TripleSystem":
        """Rows ascending, blocks in lexicographic order (provenance follows)."""
        b = np.sort(self.blocks, axis=1)
        order = np.lexsort((b[:, 2], b[:, 1], b[:, 0]))
        prov = [self.provenance[i] for i in order] if self.provenance else []
        return TripleSystem(self.v, self.f, self.group, b[order], prov)

    def to_json(self) -> dict[str, Any]:
        s = self.sorted()
        labels = [s.label(i) for i in range(s.v)]
        return {
            "v": s.v,
            "f": s.f,
            "group": list(s.group.factors),
            "blocks": [[labels[p] for p in row] for row in s.blocks.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "TripleSystem":
        try:
            v, f = int(data["v"]), int(data["f"])
            G = AbelianGroup(tuple(data["group"]))
            raw = data["blocks"]
        except (KeyError, TypeError, ValueError, GroupError) as exc:
            raise DevelopError(f"malformed triple system: {exc}") from exc
        n = G.order
        ids: dict[str, int] = {}

        def pid(label: str) -> int:
            if label in ids:
                return ids[label]
            m = re.fullmatch(r"F(\d+)", label)
            if m:
                out = n + int(m.group(1))
            else:
                m = re.fullmatch(r"G\(([-\d,\s]*)\)", label)
                if not m:
                    raise DevelopError(f"bad point label {label!r}")
                coords = tuple(int(t) for t in m.group(1).split(",") if t.strip())
                if len(coords) != len(G.factors) or any(not 0 <= c < q for c, q in zip(coords, G.factors)):
                    raise DevelopError(f"point {label} is not an element of {G.describe()}")
                out = G.index(coords)
            if out >= v:
                raise DevelopError(f"point {label} outside the {v}-point set")
            ids[label] = out
            return out

        rows = []
        for blk in raw:
            if not isinstance(blk, list) or len(blk) != 3:
                raise DevelopError(f"block {blk!r} is not a triple")
            rows.append(sorted(pid(str(x)) for x in blk))
        arr = np.array(rows, np.int64).reshape(-1, 3)
        return cls(v, f, G, arr, [])


# -- development -------------------------------------------------------------------


def develop(df: DifferenceFamily) -> TripleSystem:
    """Expand a (G, {2^f, 3^e}, 3, 1)-DF into an f-pyramidal STS(|G| + f)."""
    rep = verify_relative_df(df)
    if not rep:
        raise DevelopError("input family failed verification:\n" + rep.summary())
    G = df.group
    n = G.order
    inv = involutions(G)
    st = df.spread_type
    if not st.in_scope:
        raise DevelopError(f"spread type {st} is not of the form {{2^f, 3^e}}")
    twos = sorted(next(x for x in s.elements if x != G.zero) for s in df.spread if s.order == 2)
    if twos != inv:
        raise DevelopError(
            f"order-2 spread members ({len(twos)}) do not match the {len(inv)} involutions of {G.describe()}"
        )
    f = len(inv)
    tbl = cayley_table(G)
    idx = np.arange(n)
    parts: list[np.ndarray] = []
    prov: list[str] = []

    for T in df.base_blocks:
        a, b, c = (G.index(x) for x in T)
        parts.append(np.stack([tbl[a], tbl[b], tbl[c]], axis=1))
        prov += [BASE_ORBIT] * n
    for i, s in enumerate(inv):
        partner = tbl[:, G.index(s)]
        reps = idx[idx < partner]
        parts.append(np.stack([reps, partner[reps], np.full(len(reps), n + i)], axis=1))
        prov += [SHORT_ORBIT_2] * len(reps)
    for S in sorted((s for s in df.spread if s.order == 3), key=lambda s: s.sorted_elements()):
        g = G.index(min(x for x in S.elements if x != G.zero))
        p1 = tbl[:, g]
        p2 = tbl[:, tbl[g, g]]
        reps = idx[(idx < p1) & (idx < p2)]
        parts.append(np.stack([reps, p1[reps], p2[reps]], axis=1))
        prov += [SHORT_ORBIT_3] * len(reps)
    if f >= 3:
        where = {x: i for i, x in enumerate(inv)}
        lines = []
        for i in range(f):
            for j in range(i + 1, f):
                k = where[G.add(inv[i], inv[j])]
                if k > j:
                    lines.append((n + i, n + j, n + k))
        parts.append(np.array(lines, np.int64).reshape(-1, 3))
        prov += [FIXED_LINE] * len(lines)

    blocks = np.sort(np.concatenate(parts).astype(np.int64), axis=1) if parts else np.zeros((0, 3), np.int64)
    if len(np.unique(blocks, axis=0)) != len(blocks):
        raise DevelopError("development produced a repeated block")
    return TripleSystem(n + f, f, G, blocks, prov).sorted()


# -- verification ------------------------------------------------------------------


@dataclass
class PyramidalCertificate:
    f: int
    v: int
    group: str
    spread_type: SpreadType
    flags: dict[str, bool]
    blocks: int
    translations_checked: int

    def summary(self) -> str:
        flags = ", ".join(f"{k}={'PASS' if ok else 'FAIL'}" for k, ok in self.flags.items())
        return (
            f"{self.f}-pyramidal STS({self.v}) over {self.group}, spread type {self.spread_type}, "
            f"{self.blocks} blocks; {flags}"
        )


@dataclass
class PyramidalReport:
    ok: bool
    certificate: PyramidalCertificate
    uncovered: list[tuple[str, str]] = field(default_factory=list)
    repeated: list[tuple[str, str, int]] = field(default_factory=list)
    bad_translations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        head = ("PASS: " if self.ok else "FAIL: ") + self.certificate.summary()
        lines = [head]
        if self.uncovered:
            lines.append(f"  {len(self.uncovered)} uncovered pairs, e.g. {self.uncovered[:10]}")
        if self.repeated:
            lines.append(f"  {len(self.repeated)} pairs covered more than once, e.g. {self.repeated[:10]}")
        if self.bad_translations:
            lines.append(f"  translations not preserving the blocks: {self.bad_translations[:10]}")
        lines += ["  " + n for n in self.notes]
        return "\n".join(lines)


def _keys(blocks: np.ndarray, v: int) -> np.ndarray:
    b = np.sort(blocks, axis=1)
    return np.sort((b[:, 0] * v + b[:, 1]) * v + b[:, 2])


def _generator_indices(G: AbelianGroup) -> list[int]:
    out = []
    for k in range(len(G.factors)):
        e = [0] * len(G.factors)
        e[k] = 1
        out.append(G.index(tuple(e)))
    return out


def verify_pyramidal(system: TripleSystem, seed: int = 0) -> PyramidalReport:
    """Check an f-pyramidal STS independently of how it was built."""
    G, v, f, n = system.group, system.v, system.f, system.group.order
    blocks = np.asarray(system.blocks, np.int64).reshape(-1, 3)
    notes: list[str] = []
    label = system.label

    # (1) every pair exactly once
    in_range = blocks.size == 0 or (blocks.min() >= 0 and blocks.max() < v)
    distinct = bool(np.all((blocks[:, 0] != blocks[:, 1]) & (blocks[:, 0] != blocks[:, 2]) & (blocks[:, 1] != blocks[:, 2])))
    uncovered: list[tuple[str, str]] = []
    repeated: list[tuple[str, str, int]] = []
    if in_range and distinct:
        b = np.sort(blocks, axis=1)
        pairs = np.concatenate([b[:, 0] * v + b[:, 1], b[:, 0] * v + b[:, 2], b[:, 1] * v + b[:, 2]])
        cnt = np.bincount(pairs, minlength=v * v).reshape(v, v)
        iu = np.triu_indices(v, 1)
        c = cnt[iu]
        for k in np.nonzero(c == 0)[0][:50]:
            uncovered.append((label(int(iu[0][k])), label(int(iu[1][k]))))
        for k in np.nonzero(c > 1)[0][:50]:
            repeated.append((label(int(iu[0][k])), label(int(iu[1][k])), int(c[k])))
        n_unc, n_rep = int(np.sum(c == 0)), int(np.sum(c > 1))
        if n_unc > len(uncovered):
            notes.append(f"{n_unc} uncovered pairs in total")
        if n_rep > len(repeated):
            notes.append(f"{n_rep} repeated pairs in total")
        sts_ok = n_unc == 0 and n_rep == 0 and len(blocks) == v * (v - 1) // 6
    else:
        notes.append("blocks contain out-of-range or repeated points")
        sts_ok = False

    # (3) point set = G plus f fixed points, (4) regular action on G
    fixed_ok = v == n + f and f == len(involutions(G))
    if not fixed_ok:
        notes.append(f"v={v} is not |G| + f = {n} + {f}, or f differs from the involution count")
    tbl = cayley_table(G)
    ids = np.arange(n)
    rng = random.Random(seed)
    spot = sorted(set(rng.randrange(1, n) for _ in range(min(n - 1, SAMPLED_TRANSLATIONS)))) if n > 1 else []
    sharp_ok = v - f == n and len(set(tbl[0].tolist())) == n and all(not np.any(tbl[:, g] == ids) for g in spot)

    # (2) translations
    if n <= FULL_TRANSLATION_LIMIT:
        shifts = list(range(n))
    else:
        shifts = sorted(set(_generator_indices(G)) | set(spot))
        notes.append(f"|G| > {FULL_TRANSLATION_LIMIT}: checked generators and {len(spot)} sampled translations")
    bad: list[str] = []
    if in_range and distinct and fixed_ok:
        ref = _keys(blocks, v)
        perm = np.arange(v)
        for g in shifts:
            perm[:n] = tbl[:, g]
            if not np.array_equal(_keys(perm[blocks], v), ref):
                bad.append(label(g))
        auto_ok = not bad
    else:
        auto_ok = False

    # (5) blocks inside the fixed points form an STS(f)
    nfix = np.sum(blocks >= n, axis=1) if len(blocks) else np.zeros(0, np.int64)
    sub_blocks = int(np.sum(nfix == 3))
    sub_ok = sub_blocks == f * (f - 1) // 6 and not np.any(nfix == 2)
    if not sub_ok:
        notes.append(f"{sub_blocks} blocks inside the fixed points (expected {f * (f - 1) // 6})")

    e = 0
    if n % 3 == 0 and len(blocks):
        grp = blocks[nfix == 0]
        neg = np.array([G.index(G.neg(G.element(i))) for i in range(n)])
        d1 = tbl[grp[:, 1], neg[grp[:, 0]]]
        d2 = tbl[grp[:, 2], neg[grp[:, 0]]]
        coset = (tbl[d1, d2] == 0) & (tbl[d1, tbl[d1, d1]] == 0)
        e = int(np.sum(coset)) * 3 // n

    flags = {
        "sts": bool(sts_ok),
        "automorphism": bool(auto_ok),
        "fixed_count": bool(fixed_ok),
        "sharply_transitive": bool(sharp_ok),
        "subsystem": bool(sub_ok),
    }
    cert = PyramidalCertificate(f, v, G.describe(), SpreadType(f, e), flags, len(blocks), len(shifts))
    return PyramidalReport(all(flags.values()), cert, uncovered, repeated, bad, notes)


# -- construction -----------------------------------------------------------------


@dataclass
class Construction:
    system: TripleSystem
    certificate: PyramidalCertificate
    df: DifferenceFamily
    decomposition: CaseDecomposition | None


def orbit_count(df: DifferenceFamily) -> int:
    """|G| |base| + f |G|/2 + e |G|/3 + f(f-1)/6 (the last only for f >= 3)."""
    n = df.group.order
    st = df.spread_type
    return n * len(df.base_blocks) + st.f * n // 2 + st.e * n // 3 + (st.f * (st.f - 1) // 6 if st.f >= 3 else 0)


def small_f_df(f: int, v: int, budget: int = DEFAULT_BUDGET) -> DifferenceFamily:
    """Best-effort search for f in {0, 1, 3}: try every abelian group of order v - f.

    A cheap pass over all candidates comes first, so one hard (often
    empty) search space does not hold up a group where a family is easy.
    """
    N = v - f
    cands = []
    for G in abelian_groups(N):
        if len(involutions(G)) != f:
            continue
        for e in range(0, 7):
            if (N - 1 - f - 2 * e) % 6 == 0:
                cands.append((G, SpreadType(f, e)))
    for limit in sorted({min(budget, 10**5), budget}):
        for G, st in cands:
            try:
                df = solve_for_type(G, st, limit)
            except BudgetExceeded:
                log.info("budget %d exceeded for %s with type %s", limit, G.describe(), st)
                continue
            if df is not None:
                return df
    raise ConstructionError(f"no difference family found for f={f}, v={v} within the budget")


def build_df(f: int, v: int, budget: int = DEFAULT_BUDGET) -> tuple[DifferenceFamily, CaseDecomposition | None]:
    adm = admissible(f, v)
    if not adm:
        raise InadmissibleError(f"(f, v) = ({f}, {v}) is not admissible: {adm.reason}")
    if f <= 3:
        return small_f_df(f, v, budget), None
    dec = decompose(f, v)
    df = BUILDERS[dec.case](dec.m, dec.l, dec.d)
    if df.spread_type.e != dec.e_expected:
        raise ConstructionError(f"built e={df.spread_type.e}, expected {dec.e_expected}")
    if dec.d % 3 == 0 and df.spread_type.e % 3 != (-1) ** dec.m % 3:
        log.warning("e=%d is not (-1)^m mod 3 for m=%d", df.spread_type.e, dec.m)
    return df, dec


def build(f: int, v: int, budget: int = DEFAULT_BUDGET) -> Construction:
    """Build, develop and verify; raises unless every check passes."""
    df, dec = build_df(f, v, budget)
    system = develop(df)
    if len(system.blocks) != orbit_count(df):
        raise ConstructionError("orbit accounting does not match the developed block count")
    rep = verify_pyramidal(system)
    if not rep:
        raise ConstructionError("developed system failed verification:\n" + rep.summary())
    return Construction(system, rep.certificate, df, dec)


def construct(f: int, v: int, budget: int = DEFAULT_BUDGET) -> tuple[TripleSystem, PyramidalCertificate]:
    c = build(f, v, budget)
    return c.system, c.certificate
