"""Command-line interface: ``pyrsts <command> ...``.

Exit status: 0 success, 1 inadmissible / FAIL / not found, 2 usage or
parse error, 3 a construction failed its own verification.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .abelian_group import AbelianGroup, GroupError
from .cache import Cache, default_cache_dir, set_store
from .constructions import ConstructionError, solve_for_type
from .diff_family import DFError, DifferenceFamily, SpreadType, verify_relative_df
from .diff_matrix import DMError, dm_build, dm_exists
from .pyramidal import (
    DevelopError,
    TripleSystem,
    admissible,
    admissible_pairs,
    build,
    verify_pyramidal,
)
from .search import DEFAULT_BUDGET, BudgetExceeded
from .sequences import find_extended_langford, is_langford_admissible

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _group(text: str) -> AbelianGroup:
    try:
        return AbelianGroup.parse(text)
    except GroupError as exc:
        raise UsageError(str(exc)) from exc


# -- commands ----------------------------------------------------------------------


def cmd_check(args) -> int:
    adm = admissible(args.f, args.v)
    print(adm.reason if adm else f"not admissible: {adm.reason}")
    return EXIT_OK if adm else EXIT_FAIL


def cmd_construct(args) -> int:
    adm = admissible(args.f, args.v)
    if not adm:
        print(f"not admissible: {adm.reason}", file=sys.stderr)
        return EXIT_FAIL
    t0 = time.perf_counter()
    try:
        c = build(args.f, args.v, args.budget)
    except BudgetExceeded as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ConstructionError, DevelopError) as exc:
        print(f"internal verification failure:\n{exc}", file=sys.stderr)
        return EXIT_INTERNAL
    dt = time.perf_counter() - t0
    cert = c.certificate
    lines = [
        f"group: {cert.group}",
        f"case: {c.decomposition.case if c.decomposition else 'search'}"
        + (f" (m={c.decomposition.m}, l={c.decomposition.l}, d={c.decomposition.d})" if c.decomposition else ""),
        f"e: {cert.spread_type.e}",
        f"base blocks: {len(c.df.base_blocks)}",
        f"blocks: {cert.blocks}",
        "verification: " + ", ".join(f"{k}=PASS" for k in cert.flags),
    ]
    if not args.deterministic:
        lines.append(f"time: {dt:.2f}s")
    summary = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(_dump(c.system.to_json()))
        sys.stdout.write(summary)
    elif args.format == "json":
        sys.stdout.write(_dump(c.system.to_json()))
    else:
        sys.stdout.write(summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text()
        data = json.loads(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("expected a JSON object")
    try:
        if "base_blocks" in data:
            rep = verify_relative_df(DifferenceFamily.from_json(data))
        elif "blocks" in data:
            rep = verify_pyramidal(TripleSystem.from_json(data))
        else:
            raise UsageError("unrecognised file: neither a difference family nor a triple system")
    except (DFError, DevelopError, GroupError) as exc:
        raise UsageError(str(exc)) from exc
    print(rep.summary())
    return EXIT_OK if rep else EXIT_FAIL


def _build_row(f: int, v: int, budget: int, deterministic: bool) -> str:
    t0 = time.perf_counter()
    try:
        c = build(f, v, budget)
    except (ConstructionError, DevelopError, BudgetExceeded) as exc:
        return f"{f}\t{v}\tFAILED: {str(exc).splitlines()[0]}"
    dt = time.perf_counter() - t0
    case = c.decomposition.case if c.decomposition else "search"
    row = f"{f}\t{v}\t{c.certificate.group}\t{case}\t{c.certificate.spread_type.e}\t{c.certificate.blocks}"
    return row if deterministic else f"{row}\t{dt:.2f}s"


def cmd_enumerate(args) -> int:
    pairs = admissible_pairs(args.max_v, args.f)
    if not args.build:
        for f, v in pairs:
            print(f"{f}\t{v}\t{admissible(f, v).reason}")
        return EXIT_OK
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        rows = list(pool.map(lambda p: _build_row(p[0], p[1], args.budget, args.deterministic), pairs))
    head = "f\tv\tgroup\tcase\te\tblocks" + ("" if args.deterministic else "\ttime")
    print(head)
    for row in rows:
        print(row)
    return EXIT_FAIL if any("FAILED" in r for r in rows) else EXIT_OK


def cmd_df_solve(args) -> int:
    G = _group(args.group)
    try:
        st = SpreadType.parse(args.spread_type)
    except DFError as exc:
        raise UsageError(str(exc)) from exc
    if not st.in_scope:
        raise UsageError(f"spread type {st} is not of the form 2^f,3^e")
    try:
        df = solve_for_type(G, st, args.budget)
    except BudgetExceeded as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if df is None:
        print(f"no ({G.describe()}, {st}, 3, 1)-DF exists", file=sys.stderr)
        return EXIT_FAIL
    _emit(_dump(df.to_json()), args.out)
    return EXIT_OK


def cmd_dm(args) -> int:
    K = _group(args.group)
    if not dm_exists(K):
        print(f"no ({K.describe()}, 3, 1) difference matrix: Sylow 2-subgroup is cyclic and nontrivial", file=sys.stderr)
        return EXIT_FAIL
    try:
        M = dm_build(K, args.budget)
    except (DMError, BudgetExceeded) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INTERNAL
    _emit(_dump(M.to_json()["rows"]), args.out)
    return EXIT_OK


def cmd_langford(args) -> int:
    if not 1 <= args.b <= 4:
        raise UsageError("defect b must lie in [1, 4]")
    try:
        seq = find_extended_langford(args.k, args.a, args.b, args.budget)
    except BudgetExceeded as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if seq is None:
        note = "" if not is_langford_admissible(args.k, args.a, args.b) else " (admissible!)"
        print(f"no sequence exists for (k,a,b)=({args.k},{args.a},{args.b}){note}", file=sys.stderr)
        return EXIT_FAIL
    _emit(_dump(list(seq.s)), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pyrsts", description="f-pyramidal Steiner triple systems over abelian groups")
    p.add_argument("--cache-dir", help="cache directory (default: $PYRSTS_CACHE or ~/.cache/pyrsts)")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the on-disk cache")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")
        sp.add_argument("--deterministic", action="store_true", help="omit timings from output")
        if out:
            sp.add_argument("--out", "-o", help="output file (default: stdout)")

    sp = sub.add_parser("check", help="is (f, v) in the abelian pyramidal spectrum?")
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("construct", help="build and verify an f-pyramidal STS(v)")
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="verify a triple system or difference family JSON file")
    sp.add_argument("path", help="file to check, or - for stdin")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="list admissible (f, v)")
    sp.add_argument("--max-v", type=int, required=True)
    sp.add_argument("--f", type=int)
    sp.add_argument("--build", action="store_true", help="construct and verify each pair")
    sp.add_argument("--threads", type=int, default=1)
    common(sp, out=False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("df-solve", help="search a relative difference family")
    sp.add_argument("--group", required=True, help='factor list, e.g. "2,2,3"')
    sp.add_argument("--spread-type", required=True, help='e.g. "2^3,3"')
    common(sp)
    sp.set_defaults(func=cmd_df_solve)

    sp = sub.add_parser("dm", help="print a (K,3,1) difference matrix")
    sp.add_argument("--group", required=True)
    common(sp)
    sp.set_defaults(func=cmd_dm)

    sp = sub.add_parser("langford", help="find a k-extended Langford sequence")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_langford)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    set_store(None if args.no_cache else Cache(args.cache_dir or default_cache_dir()))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pyrsts: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_store(None)


if __name__ == "__main__":
    sys.exit(main())
