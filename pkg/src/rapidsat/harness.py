"""Batch experiments: restart-policy sweeps over a corpus, several seeds per
configuration, conflict averages per outcome class and solved-count
histograms, all as CSV."""

from __future__ import annotations

import csv
import dataclasses
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .cnf import DimacsError, evaluate, read_dimacs
from .engine import Budget, SolverConfig, Status, Solver

log = logging.getLogger(__name__)

# solved count of the unmodified reference solver in the original experiment
REFERENCE_BASELINE = 100
BASELINE_CONFIG = SolverConfig(restart="geometric:100,1.5", polarity="negative")
CNF_SUFFIXES = (".cnf", ".dimacs")


@dataclass(frozen=True)
class RunRecord:
    instance: str
    config: str
    seed: int
    status: str
    conflicts: int = 0
    decisions: int = 0
    restarts: int = 0
    wall_time: float = 0.0
    error: str = ""

    @property
    def solved(self) -> bool:
        return self.status in ("SAT", "UNSAT")


def run_instance(path, config: SolverConfig, seed: int, budget: Budget,
                 label: str | None = None) -> RunRecord:
    """One fresh solver run. A run that overshoots the timeout (the solver
    only polls the clock every 1,024 conflicts) is recorded as unsolved."""
    path = Path(path)
    label = label or config.label
    try:
        formula = read_dimacs(path)
    except (OSError, DimacsError) as e:
        return RunRecord(path.name, label, seed, "UNKNOWN", error=f"parse: {e}")
    cfg = dataclasses.replace(config, seed=seed)
    start = time.perf_counter()
    outcome = Solver(formula, cfg).solve(budget)
    wall = time.perf_counter() - start
    status = outcome.status
    error = outcome.reason
    if status is Status.SAT and not evaluate(formula, outcome.model):
        status, error = Status.UNKNOWN, "model failed verification"
    if budget.timeout is not None and wall > budget.timeout and status is not Status.UNKNOWN:
        status, error = Status.UNKNOWN, "timeout (supervisor)"
    s = outcome.stats
    return RunRecord(path.name, label, seed, status.value, s.conflicts, s.decisions,
                     s.restarts, wall, error)


def _run_task(task):
    path, config, seed, budget, label = task
    try:
        return run_instance(path, config, seed, budget, label)
    except Exception as e:  # a crashing run must not abort the sweep
        log.exception("run failed: %s %s seed=%s", path, label, seed)
        return RunRecord(Path(path).name, label, seed, "UNKNOWN", error=f"crash: {e!r}")


def corpus_files(corpus_dir) -> list[Path]:
    root = Path(corpus_dir)
    if root.is_file():
        return [root]
    return sorted(p for p in root.rglob("*") if p.suffix in CNF_SUFFIXES)


def unique_labels(configs: Sequence[SolverConfig]) -> list[str]:
    labels = [c.label for c in configs]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate configurations in sweep: {labels}")
    return labels


def sweep(corpus_dir, configs: Sequence[SolverConfig], seeds: Sequence[int],
          budget: Budget, workers: int = 1) -> list[RunRecord]:
    """Run every (instance, config, seed) once. Records come back sorted by
    instance, then config in the given order, then seed."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if not budget.bounded:
        raise ValueError("sweep budget needs a timeout or a conflict cap")
    labels = unique_labels(configs)
    files = corpus_files(corpus_dir)
    tasks = [(str(p), cfg, seed, budget, lab)
             for p in files for cfg, lab in zip(configs, labels) for seed in seeds]
    if workers == 1:
        records = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=4))
    order = {lab: i for i, lab in enumerate(labels)}
    seed_order = {s: i for i, s in enumerate(seeds)}
    records.sort(key=lambda r: (r.instance, order[r.config], seed_order[r.seed]))
    return records


# -- aggregation ------------------------------------------------------------

@dataclass
class ConfigStats:
    label: str
    sat_runs: int = 0
    unsat_runs: int = 0
    unsolved_runs: int = 0
    sat_mean: Optional[float] = None
    unsat_mean: Optional[float] = None
    solved_mean: Optional[float] = None
    unsolved_mean: Optional[float] = None
    all_mean: Optional[float] = None

    @property
    def solved(self) -> int:
        return self.sat_runs + self.unsat_runs

    @property
    def runs(self) -> int:
        return self.solved + self.unsolved_runs


def weighted_mean(parts: Iterable[tuple[Optional[float], int]]) -> Optional[float]:
    """Mean of sub-means weighted by their counts; None if all are empty."""
    total = 0.0
    n = 0
    for mean, count in parts:
        if count:
            total += mean * count
            n += count
    return total / n if n else None


def _mean(xs):
    return sum(xs) / len(xs) if xs else None


class StatsTable:
    """Per-configuration conflict means in first-appearance order."""

    COLUMNS = ("sat", "unsat", "solved", "unsolved", "all")

    def __init__(self, rows: Sequence[ConfigStats] = ()):
        self.rows = list(rows)

    def __getitem__(self, label) -> ConfigStats:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def labels(self):
        return [r.label for r in self.rows]

    def rounded(self) -> dict[str, dict[str, Optional[int]]]:
        return {r.label: {c: round_half_up(getattr(r, f"{c}_mean")) for c in self.COLUMNS}
                for r in self.rows}


def aggregate(records: Sequence[RunRecord]) -> StatsTable:
    if not records:
        raise ValueError("no records to aggregate")
    groups: dict[str, list[RunRecord]] = {}
    for r in records:
        groups.setdefault(r.config, []).append(r)
    rows = []
    for label, recs in groups.items():
        sat = [r.conflicts for r in recs if r.status == "SAT"]
        unsat = [r.conflicts for r in recs if r.status == "UNSAT"]
        unsolved = [r.conflicts for r in recs if not r.solved]
        row = ConfigStats(label, len(sat), len(unsat), len(unsolved),
                          _mean(sat), _mean(unsat), unsolved_mean=_mean(unsolved))
        row.solved_mean = weighted_mean([(row.sat_mean, row.sat_runs),
                                         (row.unsat_mean, row.unsat_runs)])
        row.all_mean = weighted_mean([(row.solved_mean, row.solved),
                                      (row.unsolved_mean, row.unsolved_runs)])
        rows.append(row)
    return StatsTable(rows)


def round_half_up(x: Optional[float]) -> Optional[int]:
    if x is None:
        return None
    return int(Decimal(repr(x)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def emit_table(table: StatsTable) -> str:
    out = [("strategy",) + StatsTable.COLUMNS]
    for label, means in table.rounded().items():
        out.append((label,) + tuple("" if means[c] is None else means[c]
                                    for c in StatsTable.COLUMNS))
    return _csv(out)


def read_table(text: str) -> dict[str, dict[str, Optional[int]]]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != ("strategy",) + StatsTable.COLUMNS:
        raise ValueError(f"unexpected table header {reader.fieldnames}")
    return {row["strategy"]: {c: int(row[c]) if row[c] else None for c in StatsTable.COLUMNS}
            for row in reader}


def emit_histogram(records: Sequence[RunRecord], baseline: int = REFERENCE_BASELINE) -> str:
    counts: dict[str, list[int]] = {}
    for r in records:
        c = counts.setdefault(r.config, [0, 0])
        if r.status == "SAT":
            c[0] += 1
        elif r.status == "UNSAT":
            c[1] += 1
    out = [("strategy", "solved", "sat_solved", "unsat_solved", "baseline")]
    for label, (sat, unsat) in counts.items():
        out.append((label, sat + unsat, sat, unsat, baseline))
    return _csv(out)


RECORD_FIELDS = [f.name for f in dataclasses.fields(RunRecord)]


def emit_records(records: Sequence[RunRecord]) -> str:
    return _csv([RECORD_FIELDS] + [[getattr(r, f) for f in RECORD_FIELDS] for r in records])


def trend_report(table: StatsTable, small: str = "Luby-1", large: str = "Luby-512") -> str:
    """One line comparing solved-run conflict means of two configurations."""
    try:
        a, b = table[small].solved_mean, table[large].solved_mean
    except KeyError:
        return f"trend: {small} or {large} not in sweep"
    if a is None or b is None:
        return f"trend: no solved runs for {small} or {large}"
    verdict = "holds" if a <= b else "does not hold"
    return (f"trend: mean conflicts on solved runs {small}={a:.1f} {large}={b:.1f} "
            f"(smaller unit run needs fewer conflicts: {verdict})")
