"""Instance generators for the bundled desk-scale corpus and for tests."""

from __future__ import annotations

import random
from pathlib import Path

from .cnf import Formula, write_dimacs

PHASE_TRANSITION_RATIO = 4.26


def random_ksat(num_vars: int, num_clauses: int, k: int = 3, rng=None) -> Formula:
    """Uniform random k-SAT: k distinct variables per clause, random signs."""
    if isinstance(rng, int) or rng is None:
        rng = random.Random(rng)
    if k > num_vars:
        raise ValueError("clause width exceeds number of variables")
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(num_vars, tuple(clauses))


def pigeonhole(pigeons: int, holes: int) -> Formula:
    """PHP(pigeons, holes); unsatisfiable when pigeons > holes.

    Variable ``p*holes + h + 1`` says pigeon p sits in hole h.
    """
    def x(p, h):
        return p * holes + h + 1

    clauses = [tuple(x(p, h) for h in range(holes)) for p in range(pigeons)]
    for h in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                clauses.append((-x(p, h), -x(q, h)))
    return Formula(pigeons * holes, tuple(clauses))


def _xor_chain(xs, odd, next_var):
    """Tseitin chain for xor(xs) == odd. Returns (clauses, next free variable)."""
    clauses = []
    acc = xs[0]
    for x in xs[1:]:
        t = next_var
        next_var += 1
        # t <-> acc xor x
        clauses += [(-t, acc, x), (-t, -acc, -x), (t, -acc, x), (t, acc, -x)]
        acc = t
    clauses.append((acc,) if odd else (-acc,))
    return clauses, next_var


def parity(n: int, satisfiable: bool = True, rng=None) -> Formula:
    """XOR of n variables constrained through Tseitin chains.

    The unsatisfiable variant asserts the same parity twice over different
    variable orders with opposite results.
    """
    if isinstance(rng, int) or rng is None:
        rng = random.Random(rng)
    xs = list(range(1, n + 1))
    odd = rng.random() < 0.5
    clauses, nxt = _xor_chain(xs, odd, n + 1)
    if not satisfiable:
        ys = xs[:]
        rng.shuffle(ys)
        more, nxt = _xor_chain(ys, not odd, nxt)
        clauses += more
    return Formula(nxt - 1, tuple(clauses))


def write_corpus(out_dir, seed: int = 2010) -> list[Path]:
    """Write the desk-scale benchmark corpus.

    Random 3-SAT at the phase-transition ratio (20 to 100 variables, both
    satisfiable and unsatisfiable outcomes occur) plus a few crafted
    pigeonhole and parity instances.
    """
    rng = random.Random(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def dump(name, formula, note):
        path = out / f"{name}.cnf"
        path.write_text(write_dimacs(formula, [note]))
        written.append(path)

    for n in (20, 30, 40, 50, 60, 75, 100):
        m = round(PHASE_TRANSITION_RATIO * n)
        for j in range(5):
            dump(f"uf3-n{n:03d}-{j}", random_ksat(n, m, 3, rng),
                 f"random 3-SAT n={n} m={m}")
    for p, h in ((4, 3), (5, 4), (6, 5)):
        dump(f"php-{p}-{h}", pigeonhole(p, h), f"pigeonhole {p} pigeons {h} holes")
    for n, sat in ((12, True), (12, False), (16, False)):
        dump(f"parity-{n}-{'sat' if sat else 'unsat'}", parity(n, sat, rng),
             f"parity chain n={n}")
    return written


def bundled_corpus() -> Path:
    return Path(__file__).with_name("corpus")
