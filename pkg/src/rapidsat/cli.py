"""Command line: solve, bench, luby, unitwalk, corpus.

Exit codes follow the SAT competition: 10 SAT, 20 UNSAT, 0 otherwise.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

from . import _backend
from .cnf import DimacsError, read_dimacs
from .engine import Budget, Solver, SolverConfig
from .generators import bundled_corpus, write_corpus
from .harness import (BASELINE_CONFIG, REFERENCE_BASELINE, aggregate, emit_histogram,
                      emit_records, emit_table, sweep, trend_report)
from .restarts import LUBY_UNIT_RUNS, DEFAULT_LUBY_UNIT, LubyRestarts, parse_restart_list
from .unitwalk import walk_solve


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(path):
    try:
        return read_dimacs(path)
    except (OSError, DimacsError) as e:
        print(f"c error: {e}", file=sys.stderr)
        return None


def cmd_solve(args):
    formula = _load(args.file)
    if formula is None:
        return 1
    cfg = SolverConfig(restart=args.restart, polarity=args.polarity, seed=args.seed,
                       backend=args.backend)
    start = time.perf_counter()
    solver = Solver(formula, cfg)
    outcome = solver.solve(Budget(args.timeout, args.conflicts))
    wall = time.perf_counter() - start
    s = outcome.stats
    print(f"c backend {solver.backend} restart {cfg.restart} polarity {cfg.polarity.value} "
          f"seed {cfg.seed}")
    print(f"c conflicts {s.conflicts} decisions {s.decisions} propagations {s.propagations} "
          f"restarts {s.restarts} time {wall:.3f}s")
    if outcome.reason:
        print(f"c {outcome.reason}")
    for line in outcome.lines():
        print(line)
    return outcome.status.exit_code


def cmd_bench(args):
    policies = parse_restart_list(args.restarts)
    configs = [SolverConfig(restart=p.spec, polarity=args.polarity, backend=args.backend)
               for p in policies]
    budget = Budget(args.timeout, args.conflicts)
    corpus = args.dir or bundled_corpus()
    records = sweep(corpus, configs, args.seeds, budget, args.workers)
    if not records:
        print(f"no .cnf files under {corpus}", file=sys.stderr)
        return 1
    baseline = args.baseline
    if baseline == "auto":
        base = sweep(corpus, [BASELINE_CONFIG], args.seeds, budget, args.workers)
        baseline = sum(r.solved for r in base)
    table = aggregate(records)
    table_csv = emit_table(table)
    hist_csv = emit_histogram(records, int(baseline))
    _write(args.out, table_csv)
    _write(args.hist, hist_csv)
    if args.records:
        _write(args.records, emit_records(records))
    print(trend_report(table), file=sys.stderr)
    return 0


def _write(dest, text):
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def cmd_luby(args):
    policy = LubyRestarts(args.unit)
    print(" ".join(str(policy.next_limit()) for _ in range(args.print)))
    return 0


def cmd_unitwalk(args):
    formula = _load(args.file)
    if formula is None:
        return 1
    outcome = walk_solve(formula, args.seed, args.periods)
    s = outcome.stats
    print(f"c periods {s.periods} decisions {s.decisions} propagations {s.propagations} "
          f"conflicts {s.conflicts} flips {s.flips}")
    for line in outcome.lines():
        print(line)
    return outcome.status.exit_code


def cmd_corpus(args):
    if args.out is None:
        print(bundled_corpus())
        return 0
    for p in write_corpus(args.out, args.seed):
        print(p)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="rapidsat", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    backend_help = f"kernel backend: auto, python or cython (available: {', '.join(_backend.available_backends())})"

    s = sub.add_parser("solve", help="solve one DIMACS file")
    s.add_argument("file")
    s.add_argument("--restart", default=f"luby:{DEFAULT_LUBY_UNIT}",
                   help="fixed:<n> | geometric:<first>,<factor> | luby:<u> | inout:<base>,<factor>")
    s.add_argument("--polarity", default="saving", help="negative | saving | activity")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timeout", type=float, default=None, help="seconds")
    s.add_argument("--conflicts", type=int, default=None, help="conflict cap")
    s.add_argument("--backend", default=None, help=backend_help)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="restart-policy sweep over a corpus directory")
    b.add_argument("dir", nargs="?", default=None,
                   help="directory of .cnf files (default: bundled corpus)")
    b.add_argument("--restarts", default="luby:" + ",".join(map(str, LUBY_UNIT_RUNS)),
                   help="comma-separated restart specs; luby:1,2,4 expands to three specs")
    b.add_argument("--seeds", type=_int_list, default=[1, 2, 3])
    b.add_argument("--timeout", type=float, default=5.0)
    b.add_argument("--conflicts", type=int, default=None)
    b.add_argument("--polarity", default="saving")
    b.add_argument("--out", default="-", help="Table-style CSV (default stdout)")
    b.add_argument("--hist", default=None, help="solved-count histogram CSV")
    b.add_argument("--records", default=None, help="per-run CSV")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--baseline", default=str(REFERENCE_BASELINE),
                   help="reference solved count for the histogram, or 'auto' to run "
                        "geometric restarts with negative branching")
    b.add_argument("--backend", default=None, help=backend_help)
    b.set_defaults(func=cmd_bench)

    lb = sub.add_parser("luby", help="print Luby restart limits")
    lb.add_argument("--print", type=int, required=True, metavar="N")
    lb.add_argument("--unit", type=int, default=1, help="unit run u")
    lb.set_defaults(func=cmd_luby)

    w = sub.add_parser("unitwalk", help="UnitWalk local search on one DIMACS file")
    w.add_argument("file")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--periods", type=int, default=10_000)
    w.set_defaults(func=cmd_unitwalk)

    c = sub.add_parser("corpus", help="print the bundled corpus path, or regenerate it")
    c.add_argument("--out", default=None)
    c.add_argument("--seed", type=int, default=2010)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
