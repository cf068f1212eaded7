"""UnitWalk-style local search.

A total "full" assignment is improved period by period. Each period draws a
fresh random variable order and rebuilds a partial assignment from scratch:
the first free variable in that order takes its value *from* the full
assignment, unit propagation runs, and every implied value is copied *to*
the full assignment. When propagation falsifies a clause, the pending queue
is dropped and the full value of the variable whose decision caused it is
flipped; the period then carries on with the next free variable.

Randomness comes from ``random.Random(seed)`` (MT19937): one draw per
variable for the initial assignment, then one ``shuffle`` per period.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .cnf import Formula, evaluate
from .engine import Outcome, Status


@dataclass
class WalkStats:
    periods: int = 0
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    flips: int = 0


@dataclass
class WalkState:
    full: list                       # full[v] for v in 1..n; slot 0 unused
    rng: random.Random
    order: list = field(default_factory=list)
    flips_this_period: int = 0
    log: Optional[list] = None       # ("decide"|"imply"|"flip", var, value) when enabled

    @classmethod
    def initial(cls, formula: Formula, seed: int, record: bool = False) -> "WalkState":
        rng = random.Random(seed)
        full = [False] + [rng.random() < 0.5 for _ in range(formula.num_vars)]
        return cls(full, rng, list(range(1, formula.num_vars + 1)),
                   log=[] if record else None)

    def assignment(self) -> dict:
        return {v: self.full[v] for v in range(1, len(self.full))}


class _Occurrences:
    def __init__(self, formula: Formula):
        self.by_lit: dict[int, list[int]] = {}
        for i, clause in enumerate(formula.clauses):
            for lit in clause:
                self.by_lit.setdefault(lit, []).append(i)
        self.units = [c[0] for c in formula.clauses if len(c) == 1]


def walk_period(formula: Formula, state: WalkState, stats: WalkStats | None = None,
                occ: _Occurrences | None = None) -> tuple[WalkState, bool]:
    occ = occ or _Occurrences(formula)
    stats = stats if stats is not None else WalkStats()
    clauses = formula.clauses
    full = state.full
    log = state.log
    partial = [0] * (formula.num_vars + 1)   # 1 true, -1 false, 0 free
    state.flips_this_period = 0
    conflict_seen = any(not c for c in clauses)

    def imply(lit):
        v = abs(lit)
        partial[v] = 1 if lit > 0 else -1
        if full[v] != (lit > 0):
            full[v] = lit > 0
            state.flips_this_period += 1
            stats.flips += 1
        stats.propagations += 1
        if log is not None:
            log.append(("imply", v, lit > 0))

    def bcp(queue):
        """Propagate; returns False on a falsified clause (queue dropped)."""
        while queue:
            lit = queue.pop()
            for ci in occ.by_lit.get(-lit, ()):
                free = None
                nfree = 0
                for l in clauses[ci]:
                    val = partial[abs(l)]
                    if val == 0:
                        nfree += 1
                        free = l
                    elif (val > 0) == (l > 0):
                        break
                else:
                    if nfree == 0:
                        queue.clear()
                        return False
                    if nfree == 1:
                        imply(free)
                        queue.append(free)
        return True

    queue = []
    for lit in occ.units:
        if partial[abs(lit)] == 0:
            imply(lit)
            queue.append(lit)
        elif (partial[abs(lit)] > 0) != (lit > 0):
            conflict_seen = True
    if not bcp(queue):
        conflict_seen = True

    state.rng.shuffle(state.order)
    for v in state.order:
        if partial[v]:
            continue
        value = full[v]
        partial[v] = 1 if value else -1
        stats.decisions += 1
        if log is not None:
            log.append(("decide", v, value))
        if not bcp([v if value else -v]):
            conflict_seen = True
            stats.conflicts += 1
            full[v] = not full[v]
            state.flips_this_period += 1
            stats.flips += 1
            if log is not None:
                log.append(("flip", v, full[v]))

    stats.periods += 1
    if conflict_seen:
        return state, False
    model = {v: partial[v] > 0 for v in range(1, formula.num_vars + 1)}
    return state, evaluate(formula, model)


def walk_solve(formula: Formula, seed: int = 0, max_periods: int = 10_000,
               record: bool = False) -> Outcome:
    """Run periods until one satisfies the formula. Never returns UNSAT."""
    if max_periods < 1:
        raise ValueError("max_periods must be >= 1")
    state = WalkState.initial(formula, seed, record)
    stats = WalkStats()
    occ = _Occurrences(formula)
    for _ in range(max_periods):
        state, ok = walk_period(formula, state, stats, occ)
        if ok:
            model = state.assignment()
            assert evaluate(formula, model)
            return Outcome(Status.SAT, model, stats)
    return Outcome(Status.UNKNOWN, None, stats, "period budget exhausted")
