"""Time the pure-Python and compiled kernels on the same runs.

    python3 benchmarks/bench_backends.py [--restart luby:6] [--repeat 3] [files...]

Both kernels make identical decisions, so conflict counts must agree; the
script checks that before reporting speedups.
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

from rapidsat import SolverConfig, available_backends, read_dimacs, solve
from rapidsat.generators import bundled_corpus, random_ksat

DEFAULT_FILES = ["uf3-n075-0.cnf", "uf3-n100-0.cnf", "uf3-n100-3.cnf", "php-6-5.cnf",
                 "parity-16-unsat.cnf"]


def time_run(formula, cfg, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = solve(formula, cfg)
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="*")
    ap.add_argument("--restart", default="luby:6")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if "cython" not in available_backends():
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    if args.files:
        jobs = [(Path(f).name, read_dimacs(f)) for f in args.files]
    else:
        jobs = [(f, read_dimacs(bundled_corpus() / f)) for f in DEFAULT_FILES]
        # a couple of larger phase-transition instances than the corpus holds
        jobs += [(f"random-n{n}-s{s}", random_ksat(n, round(4.26 * n), 3, s))
                 for n, s in ((150, 1), (200, 2))]

    print(f"{'instance':<22}{'status':<8}{'conflicts':>10}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    ratios = []
    for name, f in jobs:
        res = {b: time_run(f, SolverConfig(restart=args.restart, backend=b), args.repeat)
               for b in ("python", "cython")}
        (tp, op), (tc, oc) = res["python"], res["cython"]
        if op.stats != oc.stats or op.status != oc.status:
            print(f"{name}: backends diverged", file=sys.stderr)
            return 2
        ratios.append(tp / tc)
        print(f"{name:<22}{op.status.value:<8}{op.stats.conflicts:>10}"
              f"{tp:>11.3f}{tc:>11.3f}{tp / tc:>8.1f}x")
    print(f"geometric mean speedup {statistics.geometric_mean(ratios):.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
