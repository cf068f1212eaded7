"""CDCL search: watched-literal propagation, first-UIP learning with clause
minimization, backjumping, restarts and learned-clause reduction.

The inner operations run in a kernel (compiled or pure Python, see
``_backend``); this module drives the search and speaks DIMACS literals.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import _backend
from .cnf import Formula, evaluate, model_lines
from .heuristics import DECAY, PolarityMode, initial_jitter
from .restarts import DEFAULT_LUBY_UNIT, RestartPolicy, parse_restart, should_restart

DECISION = None
TIME_CHECK_INTERVAL = 1024


class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"

    @property
    def exit_code(self) -> int:
        return {"SAT": 10, "UNSAT": 20}.get(self.value, 0)

    @property
    def line(self) -> str:
        return {"SAT": "s SATISFIABLE", "UNSAT": "s UNSATISFIABLE"}.get(
            self.value, "s UNKNOWN")


@dataclass
class SolverStats:
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    learned_literals_before_minimization: int = 0
    learned_literals_after_minimization: int = 0
    reductions: int = 0
    deleted_clauses: int = 0


@dataclass
class Outcome:
    status: Status
    model: Optional[dict] = None
    stats: SolverStats = field(default_factory=SolverStats)
    reason: str = ""

    def lines(self) -> list[str]:
        out = [self.status.line]
        if self.status is Status.SAT:
            out += model_lines(self.model)
        return out


@dataclass(frozen=True)
class Budget:
    """Search limits; ``None`` means unbounded. The conflict cap is checked
    after every conflict, the timeout every 1,024 conflicts."""

    timeout: Optional[float] = None
    conflicts: Optional[int] = None

    def __post_init__(self):
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.conflicts is not None and self.conflicts < 0:
            raise ValueError("conflict cap must be non-negative")

    @property
    def bounded(self) -> bool:
        return self.timeout is not None or self.conflicts is not None


@dataclass
class SolverConfig:
    restart: str = f"luby:{DEFAULT_LUBY_UNIT}"
    polarity: PolarityMode = PolarityMode.PHASE_SAVING
    seed: int = 0
    decay: float = DECAY
    clause_decay: float = 0.999
    minimize: bool = True
    reduce: bool = True
    learned_limit: Optional[int] = None      # default max(1000, clauses / 3)
    learned_growth: float = 1.1
    backend: Optional[str] = None
    check_invariants: bool = False

    def __post_init__(self):
        if isinstance(self.restart, RestartPolicy):
            self.restart = self.restart.spec
        parse_restart(self.restart)
        self.polarity = PolarityMode.parse(self.polarity)
        if self.learned_growth < 1:
            raise ValueError("learned_growth must be >= 1")

    def restart_policy(self) -> RestartPolicy:
        return parse_restart(self.restart)

    @property
    def label(self) -> str:
        label = self.restart_policy().label
        if self.polarity is not PolarityMode.PHASE_SAVING:
            label += f"+{self.polarity.value}"
        return label


def _code(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


def _lit(code: int) -> int:
    return -(code >> 1) if code & 1 else code >> 1


class Solver:
    """One CDCL run over a formula.

    ``trace``, if given, is called as ``trace(event, data)`` with events
    ``decide`` (literal), ``analyze`` (first-UIP clause before minimization,
    UIP first), ``learn`` (clause as stored), ``backjump`` ((level, literals
    unassigned, in trail order)) and ``restart`` (restart count).
    """

    def __init__(self, formula: Formula, config: SolverConfig | None = None,
                 trace: Callable | None = None):
        self.formula = formula
        self.config = config = config or SolverConfig()
        self.trace = trace
        self.stats = SolverStats()
        self.policy = config.restart_policy()
        kernel_cls = _backend.kernel_class(config.backend)
        self.kernel = k = kernel_cls(
            formula.num_vars, config.polarity.code, config.decay, config.clause_decay,
            initial_jitter(formula.num_vars, config.seed))
        self.backend = k.backend
        if config.learned_limit is not None:
            self.learned_limit = float(config.learned_limit)
        else:
            self.learned_limit = float(max(1000, len(formula.clauses) / 3))
        self.outcome: Outcome | None = None
        self.root_conflict = False

        units = []
        for clause in formula.clauses:
            codes = [_code(l) for l in clause]
            if not codes:
                self.root_conflict = True
                continue
            cref = k.add_clause(codes, False)
            if len(codes) == 1:
                units.append((codes[0], cref))
        for code, cref in units:
            val = k.value(code)
            if val == -1:
                self.root_conflict = True
            elif val == 0:
                k.enqueue(code, cref)

    # -- inspection ---------------------------------------------------------
    @property
    def decision_level(self) -> int:
        return self.kernel.decision_level()

    @property
    def trail(self) -> list[tuple[int, int, Optional[int]]]:
        """(literal, level, reason clause or DECISION) per trail entry."""
        k = self.kernel
        out = []
        for code in k.trail_codes():
            v = code >> 1
            r = k.var_reason(v)
            out.append((_lit(code), k.var_level(v), None if r < 0 else r))
        return out

    def value(self, lit: int) -> Optional[bool]:
        val = self.kernel.value(_code(lit))
        return None if val == 0 else val > 0

    def clause(self, cref: int) -> Optional[list[int]]:
        c = self.kernel.clause(cref)
        return None if c is None else [_lit(x) for x in c]

    def learned_clauses(self) -> list[list[int]]:
        return [self.clause(c) for c in self.kernel.learnt_refs()]

    def check_watch_invariant(self) -> None:
        """Assert the two-watched-literal invariant (call at a propagation
        fixpoint without conflict)."""
        k = self.kernel
        watching: dict[int, list[int]] = {}
        for code in range(2, 2 * self.formula.num_vars + 2):
            for cref in k.watches(code):
                watching.setdefault(cref, []).append(code)
        for cref in range(k.num_clause_slots()):
            c = k.clause(cref)
            if c is None or len(c) < 2:
                assert cref not in watching, f"clause {cref} should not be watched"
                continue
            w = watching.get(cref, [])
            assert sorted(w) == sorted(c[:2]), f"clause {cref} watched by {w}, expected {c[:2]}"
            a, b = c[0], c[1]
            if k.value(a) == -1:
                assert k.value(b) == 1, f"clause {cref}: false watch {_lit(a)} without true partner"
            if k.value(b) == -1:
                assert k.value(a) == 1, f"clause {cref}: false watch {_lit(b)} without true partner"

    # -- primitive operations -----------------------------------------------
    def enqueue(self, lit: int, reason: Optional[int] = DECISION) -> None:
        """Assign ``lit``. A DECISION opens a new decision level."""
        if reason is DECISION:
            self.kernel.new_level()
            self.kernel.enqueue(_code(lit), -1)
        else:
            self.kernel.enqueue(_code(lit), reason)

    def propagate(self) -> Optional[int]:
        confl = self.kernel.propagate()
        self.stats.propagations = self.kernel.propagations
        return None if confl < 0 else confl

    def analyze(self, conflict: int) -> tuple[list[int], int]:
        if self.kernel.decision_level() == 0:
            raise ValueError("conflict at level 0: formula is unsatisfiable")
        codes, level = self.kernel.analyze(conflict)
        return [_lit(c) for c in codes], level

    def minimize(self, learned: list[int]) -> list[int]:
        return [_lit(c) for c in self.kernel.minimize([_code(l) for l in learned])]

    def backjump(self, level: int) -> None:
        k = self.kernel
        if self.trace is not None and level < k.decision_level():
            start = k.level_start(level + 1)
            gone = [_lit(c) for c in k.trail_codes()[start:]]
            k.backjump(level)
            self.trace("backjump", (level, gone))
        else:
            k.backjump(level)

    def reduce_learned_store(self) -> int:
        """Halve the deletable learned clauses if the store reached its limit."""
        k = self.kernel
        if k.num_learnts() < self.learned_limit:
            return 0
        removed = k.reduce_db()
        self.learned_limit *= self.config.learned_growth
        self.stats.reductions += 1
        self.stats.deleted_clauses += removed
        return removed

    # -- search -------------------------------------------------------------
    def _finish(self, status: Status, reason: str = "") -> Outcome:
        self.stats.propagations = self.kernel.propagations
        model = None
        if status is Status.SAT:
            k = self.kernel
            model = {v: k.value(2 * v) == 1 for v in range(1, self.formula.num_vars + 1)}
            if not evaluate(self.formula, model):
                raise AssertionError("internal error: model does not satisfy the formula")
        self.outcome = Outcome(status, model, self.stats, reason)
        return self.outcome

    def solve(self, budget: Budget | None = None) -> Outcome:
        if self.outcome is not None:
            return self.outcome
        budget = budget or Budget()
        if self.root_conflict:
            return self._finish(Status.UNSAT)
        k = self.kernel
        stats = self.stats
        cfg = self.config
        trace = self.trace
        policy = self.policy
        cap = budget.conflicts
        timeout = budget.timeout
        start = time.perf_counter()
        limit = policy.next_limit()
        since_restart = 0

        while True:
            confl = k.propagate()
            if confl >= 0:
                if k.decision_level() == 0:
                    return self._finish(Status.UNSAT)
                stats.conflicts += 1
                since_restart += 1
                codes, _ = k.analyze(confl)
                stats.learned_literals_before_minimization += len(codes)
                if trace is not None:
                    trace("analyze", [_lit(c) for c in codes])
                if cfg.minimize:
                    codes = k.minimize(codes)
                stats.learned_literals_after_minimization += len(codes)
                level = k.assert_order(codes)
                self.backjump(level)
                k.learn(codes)
                k.after_conflict(codes)
                if trace is not None:
                    trace("learn", [_lit(c) for c in codes])
                if cap is not None and stats.conflicts >= cap:
                    return self._finish(Status.UNKNOWN, "conflict budget exhausted")
                if (timeout is not None and stats.conflicts % TIME_CHECK_INTERVAL == 0
                        and time.perf_counter() - start > timeout):
                    return self._finish(Status.UNKNOWN, "timeout")
                continue

            if cfg.check_invariants:
                self.check_watch_invariant()
            if should_restart(since_restart, limit):
                self.backjump(0)
                stats.restarts += 1
                since_restart = 0
                limit = policy.next_limit()
                if trace is not None:
                    trace("restart", stats.restarts)
            if cfg.reduce:
                self.reduce_learned_store()
            v = k.pick_branch_var()
            if v == 0:
                return self._finish(Status.SAT)
            code = 2 * v if k.pick_polarity(v) else 2 * v + 1
            stats.decisions += 1
            k.new_level()
            k.enqueue(code, -1)
            if trace is not None:
                trace("decide", _lit(code))


def solve(formula: Formula, config: SolverConfig | None = None,
          budget: Budget | None = None) -> Outcome:
    return Solver(formula, config).solve(budget)
