"""Command-line front end.

Subcommands: ``solve`` (dispatch to a solver), ``check`` (verify a witness
file), ``reduce`` (emit a construction product plus its group registry) and
``crosscheck`` (run the seeded cross-validation suites).

Exit codes: 0 = yes / accepted / all suites pass, 1 = no / rejected /
a suite failed, 2 = resource budget exhausted, 3 = invalid input.
All report output is written to stdout and is byte-stable for a fixed
command line; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import fptk, oracle, reductions, selfcheck
from .core import Graph, Instance, InvalidInstanceError, first_violation
from .fileformat import (
    ParseError,
    emit_groups,
    emit_instance_for,
    parse_instance,
    parse_instance_text,
    parse_witness,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_EXHAUSTED = 2
EXIT_INVALID = 3


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = "brute"
    k: int = 1
    work_limit: int | None = None
    workers: int = 1
    seed: int = 1
    faithful: bool = False
    minimize: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems are invalid input
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fcs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide or minimize a critical set")
    solve.add_argument("instance", type=Path)
    solve.add_argument("--k", type=int, required=True, help="budget")
    solve.add_argument("--algo", choices=("brute", "kmf", "fpt-k"), default="brute")
    solve.add_argument("--minimize", action="store_true",
                       help="report the optimum (brute algorithm only)")
    solve.add_argument("--faithful", action="store_true",
                       help="literal slot sweep in the fpt-k search")
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--work-limit", type=int, default=None)
    solve.add_argument("--seed", type=int, default=1)

    check = sub.add_parser("check", help="verify a witness file")
    check.add_argument("instance", type=Path)
    check.add_argument("witness", type=Path)
    check.add_argument("--k", type=int, required=True, help="budget")

    reduce_p = sub.add_parser("reduce", help="emit a construction product")
    reduce_p.add_argument("kind", choices=("vc", "clique", "uniform"))
    reduce_p.add_argument("source", type=Path)
    reduce_p.add_argument("--k", type=int, required=True, help="source budget")
    reduce_p.add_argument("--out", type=Path, required=True,
                          help="prefix for <out>.fcs and <out>.groups")

    cross = sub.add_parser("crosscheck", help="run the cross-validation suites")
    cross.add_argument("--seed", type=int, default=1)
    cross.add_argument("--workers", type=int, default=1)
    cross.add_argument("--work-limit", type=int, default=None)
    return parser


def _load_instance(path: Path, k: int) -> Instance:
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID) from None
    try:
        return parse_instance(text, k)
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID) from None
    except InvalidInstanceError as exc:
        for issue in exc.issues:
            where = "" if issue.vertex is None else f" (vertex {issue.vertex + 1})"
            print(f"error: {path}: {issue.kind}{where}: {issue.message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID) from None


def _emit_result(result: oracle.SolveResult, minimize: bool) -> int:
    print(f"d {result.outcome.value}")
    if result.witness is not None:
        print(f"s {len(result.witness)}")
        if result.witness:
            print("v " + " ".join(str(v + 1) for v in result.witness))
    if minimize and result.optimum is not None:
        print(f"o {result.optimum}")
    if result.outcome is oracle.Outcome.YES:
        return EXIT_YES
    if result.outcome is oracle.Outcome.NO:
        return EXIT_NO
    return EXIT_EXHAUSTED


def _cmd_solve(args) -> int:
    cfg = RunConfig(
        algorithm=args.algo,
        k=args.k,
        work_limit=args.work_limit,
        workers=args.workers,
        seed=args.seed,
        faithful=args.faithful,
        minimize=args.minimize,
    )
    if cfg.minimize and cfg.algorithm != "brute":
        print("error: --minimize requires --algo brute", file=sys.stderr)
        return EXIT_INVALID
    inst = _load_instance(args.instance, cfg.k)
    started = time.perf_counter()
    if cfg.algorithm == "brute":
        cap = inst.n if cfg.minimize else min(cfg.k, inst.n)
        result = oracle.min_critical_set(inst, cap, work_limit=cfg.work_limit)
        if cfg.minimize and result.outcome is oracle.Outcome.YES:
            decided = oracle.Outcome.YES if result.optimum <= cfg.k else oracle.Outcome.NO
            result = oracle.SolveResult(decided, result.witness, result.optimum)
    elif cfg.algorithm == "kmf":
        result = oracle.decide_kmf(inst, work_limit=cfg.work_limit)
    else:
        result = fptk.decide(
            inst,
            faithful=cfg.faithful,
            workers=cfg.workers,
            work_limit=cfg.work_limit,
        )
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    print(f"time_ms {elapsed_ms:.2f}", file=sys.stderr)
    return _emit_result(result, cfg.minimize)


def _cmd_check(args) -> int:
    inst = _load_instance(args.instance, args.k)
    try:
        members = parse_witness(args.witness.read_text())
    except OSError as exc:
        print(f"error: cannot read {args.witness}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ParseError as exc:
        print(f"error: {args.witness}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if members and members[-1] >= inst.n:
        print(f"error: witness names vertex {members[-1] + 1} beyond n={inst.n}",
              file=sys.stderr)
        return EXIT_INVALID
    if len(members) > args.k:
        print(f"reject budget exceeded: witness size {len(members)} > k = {args.k}")
        return EXIT_NO
    violation = first_violation(inst, members)
    if violation is None:
        print("accept")
        return EXIT_YES
    vertex, kind = violation
    if kind == "stays-zero":
        print(f"reject state of vertex {vertex + 1} remains 0 at time 1")
    else:
        print(f"reject state of vertex {vertex + 1} flips to 0 at time 1")
    return EXIT_NO


def _cmd_reduce(args) -> int:
    if args.k < 1:
        print("error: --k must be at least 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        if args.kind == "clique":
            # clique sources need not be connected; take the bare graph
            raw = parse_instance_text(args.source.read_text())
            layout = reductions.clique_to_critical(Graph(raw.n, raw.edges), args.k)
        elif args.kind == "vc":
            inst = _load_instance(args.source, args.k)
            layout = reductions.cover_to_critical(inst.graph, args.k)
        else:
            inst = _load_instance(args.source, args.k)
            built = reductions.uniformize(inst)
            if isinstance(built, reductions.UnitThresholdShortcut):
                print("shortcut unit-threshold")
                print(f"d {'yes' if built.decision else 'no'}")
                return EXIT_YES if built.decision else EXIT_NO
            layout = built
    except OSError as exc:
        print(f"error: cannot read {args.source}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    instance_path = args.out.with_suffix(".fcs")
    groups_path = args.out.with_suffix(".groups")
    instance_path.write_text(emit_instance_for(layout.instance))
    groups_path.write_text(emit_groups(layout.groups()))
    print(f"product-budget {layout.k_prime}")
    print(f"product-size {layout.instance.n}")
    print(f"wrote {instance_path}")
    print(f"wrote {groups_path}")
    return EXIT_YES


def _cmd_crosscheck(args) -> int:
    results = selfcheck.run_all(args.seed)
    failed = False
    for suite in results:
        print(f"suite {suite.name}: {suite.passed}/{suite.total}")
        for line in suite.failures[:5]:
            print(f"  fail {line}")
        if not suite.ok:
            failed = True
    print("crosscheck " + ("FAIL" if failed else "PASS"))
    return EXIT_NO if failed else EXIT_YES


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "reduce":
        return _cmd_reduce(args)
    return _cmd_crosscheck(args)


def entry() -> None:
    raise SystemExit(main())
