"""gtool: generate groups, build representations, query, verify, benchmark.

Exit codes: 0 success, 1 usage error, 2 precondition failure (including
malformed inputs), 3 verification mismatch, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import serialize
from .audit import SpaceReport, measure, probe_counted_multiply
from .base import GtoolError, ParseError, PreconditionError, ValidationError
from .blockrep import BlockRep, parse_delta, tradeoff_table
from .corpus import build_family
from .cubegen import greedy_cube_sequence
from .fm import AbelianFM, HamiltonianFM, SemidirectFM, ZGroupFM, _FMBase
from .groups import GroupTable, load_cayley_file
from .special import CompositeRep, CyclicRep, SimpleRep
from .structure import is_z_group
from .verify import verify_exhaustive, verify_random

REP_KINDS = ("block", "cyclic", "zgroup", "simple", "composite",
             "fm-abelian", "fm-hamiltonian", "fm-zgroup", "fm-semidirect")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="gtool", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a Cayley-table file")
    g.add_argument("family", choices=["cyclic", "dihedral", "abelian",
                                      "quaternion", "direct", "semidirect",
                                      "symmetric", "alternating", "file"])
    g.add_argument("params", nargs="*", help="family parameters")
    g.add_argument("out", help="output table path")
    g.add_argument("--strict", action="store_true",
                   help="run the O(n^3) associativity check")

    b = sub.add_parser("build", help="build and serialize a representation")
    b.add_argument("table", help="Cayley-table file")
    b.add_argument("kind", choices=REP_KINDS)
    b.add_argument("out", help="output artifact path")
    b.add_argument("--delta", help="exact rational p/q for the block length")
    b.add_argument("--l", type=int, help="block length directly")
    b.add_argument("--s-max", type=int, default=4,
                   help="largest generating-set size for simple groups")
    b.add_argument("--table-max", type=int, default=64,
                   help="largest stored automorphism-image table for fm-zgroup")
    b.add_argument("--max-slots", type=int, default=1 << 29)
    b.add_argument("--strict", action="store_true")

    q = sub.add_parser("query", help="answer one multiplication query")
    q.add_argument("rep", help="serialized representation")
    q.add_argument("x", type=int)
    q.add_argument("y", type=int)
    q.add_argument("--stats", action="store_true",
                   help="print the probe ledger")

    v = sub.add_parser("verify", help="check a representation against a table")
    v.add_argument("rep")
    v.add_argument("table")
    v.add_argument("--mode", default="exhaustive",
                   help="exhaustive or random:N")
    v.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("bench", help="space/probe/time sweep to CSV")
    e.add_argument("table")
    e.add_argument("out", help="output CSV path")
    e.add_argument("--deltas", default="1/8,1/4,1/2,1",
                   help="comma-separated rationals")
    e.add_argument("--samples", type=int, default=2000)
    e.add_argument("--seed", type=int, default=0)
    return p


def _gen_group(family: str, params: list[str]) -> GroupTable:
    try:
        if family == "cyclic":
            return build_family("cyclic", {"n": int(params[0])})
        if family == "dihedral":
            return build_family("dihedral", {"m": int(params[0])})
        if family == "abelian":
            return build_family("abelian",
                                {"orders": [int(v) for v in params]})
        if family == "quaternion":
            return build_family("quaternion", {})
        if family == "direct":
            return build_family("direct", {"parts": list(params)})
        if family == "semidirect":
            m, d, a = (int(v) for v in params[:3])
            return build_family("semidirect", {"m": m, "d": d, "a": a})
        if family == "symmetric":
            return build_family("symmetric", {"k": int(params[0])})
        if family == "alternating":
            return build_family("alternating", {"k": int(params[0])})
        if family == "file":
            return load_cayley_file(params[0])
    except GtoolError:
        raise
    except (IndexError, ValueError) as exc:
        raise UsageError(f"bad parameters for family {family}: {exc}") from exc
    raise UsageError(f"unknown family {family}")


def _make_rep(kind: str, args):
    if kind == "block":
        if args.l is None and args.delta is None:
            raise UsageError("block builds need --delta or --l")
        delta = parse_delta(args.delta) if args.delta is not None else None
        return BlockRep(l=args.l, delta=delta, max_slots=args.max_slots)
    if kind == "cyclic":
        return CyclicRep()
    if kind == "zgroup":
        return CompositeRep(mode="zgroup")
    if kind == "composite":
        return CompositeRep()
    if kind == "simple":
        return SimpleRep(s_max=args.s_max)
    if kind == "fm-abelian":
        return AbelianFM()
    if kind == "fm-hamiltonian":
        return HamiltonianFM()
    if kind == "fm-zgroup":
        return ZGroupFM(table_max=args.table_max)
    if kind == "fm-semidirect":
        return SemidirectFM()
    raise UsageError(f"unknown rep kind {kind}")


def _cmd_gen(args) -> int:
    G = _gen_group(args.family, args.params)
    if args.strict:
        G.check_associativity()
    G.dump(args.out)
    print(f"wrote {args.out}: order {G.n}, identity {G.identity}")
    return 0


def _cmd_build(args) -> int:
    G = load_cayley_file(args.table, strict=args.strict)
    rep = _make_rep(args.kind, args).fit(G)
    serialize.save(rep, args.out)
    report = measure(rep)
    print(SpaceReport.CSV_HEADER)
    print(report.csv_row())
    return 0


def _cmd_query(args) -> int:
    rep = serialize.load(args.rep)
    result, ledger = probe_counted_multiply(rep, args.x, args.y)
    if isinstance(rep, _FMBase):
        lx = rep.labeler_.label(args.x)
        ly = rep.labeler_.label(args.y)
        lz = rep.scheme_.multiply(lx, ly)
        print(f"{result} label: {','.join(str(v) for v in lz)}")
    else:
        print(result)
    if args.stats:
        used = {k: v for k, v in ledger.counts.items() if v}
        print("probes:", ledger.total(),
              " ".join(f"{k}={v}" for k, v in sorted(used.items())))
    return 0


def _cmd_verify(args) -> int:
    rep = serialize.load(args.rep)
    G = load_cayley_file(args.table)
    if getattr(rep, "n_", None) != G.n:
        raise PreconditionError(
            f"representation order {getattr(rep, 'n_', '?')} does not match "
            f"table order {G.n}")
    if args.mode == "exhaustive":
        bad = verify_exhaustive(rep, G)
    elif args.mode.startswith("random:"):
        count = int(args.mode.split(":", 1)[1])
        bad = verify_random(rep, G, count, seed=args.seed)
    else:
        raise UsageError(f"unknown mode {args.mode}")
    if bad is None:
        print(f"pass: {args.mode}")
        return 0
    x, y, got, want = bad
    print(f"fail: ({x}, {y}) -> got {got}, want {want}")
    return 3


def _time_queries(rep, G, samples: int, seed: int) -> float:
    rng = np.random.RandomState(seed)
    pairs = rng.randint(1, G.n + 1, size=(max(samples, 1), 2))
    t0 = time.perf_counter_ns()
    for x, y in pairs:
        rep.multiply(int(x), int(y))
    return (time.perf_counter_ns() - t0) / len(pairs)


def _cmd_bench(args) -> int:
    G = load_cayley_file(args.table)
    deltas = [parse_delta(tok) for tok in args.deltas.split(",") if tok]
    cube, _ = greedy_cube_sequence(G)
    lines = ["delta,l,m,slots,probes,avg_query_ns"]
    rows = tradeoff_table(G, deltas, cube=cube)
    for row in rows:
        if row.error:
            lines.append(f"{row.delta},,,,,error: {row.error}")
            continue
        rep = BlockRep(l=row.l).fit(G, cube=cube)
        ns = _time_queries(rep, G, args.samples, args.seed)
        lines.append(f"{row.delta},{row.l},{row.m},{row.slots},"
                     f"{row.probes},{ns:.0f}")
    extras: list[tuple[str, object]] = []
    orders = G.element_orders()
    if (orders == G.n).any():
        extras.append(("cyclic", CyclicRep()))
    if is_z_group(G):
        extras.append(("zgroup", CompositeRep(mode="zgroup")))
    from .structure import is_simple
    if is_simple(G):
        extras.append(("simple", SimpleRep()))
    for name, rep in extras:
        rep = rep.fit(G)
        slots = sum(rep.space_slots().values())
        lo, hi = rep.probe_bounds()
        ns = _time_queries(rep, G, args.samples, args.seed)
        lines.append(f"{name},,,{slots},{hi},{ns:.0f}")
    text = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    print(text, end="")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "query":
            return _cmd_query(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        raise UsageError(f"unknown command {args.command}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValidationError, PreconditionError) as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return 2
    except GtoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
