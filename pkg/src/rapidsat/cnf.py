"""CNF formulas in DIMACS format.

Literals are plain signed integers in DIMACS convention: variable ``v`` occurs
positively as ``v`` and negatively as ``-v``; variables are numbered from 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class DimacsError(ValueError):
    """Malformed DIMACS input. ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class DimacsWarning(UserWarning):
    pass


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def neg(lit: int) -> int:
    return -lit


def normalize_clause(lits: Iterable[int]) -> tuple[int, ...] | None:
    """Drop repeated literals (first occurrence wins). Returns None for a tautology."""
    seen: set[int] = set()
    out = []
    for lit in lits:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


@dataclass(frozen=True)
class Formula:
    """Immutable, normalized CNF formula.

    Construction normalizes ``clauses``: duplicate literals are removed and
    tautological clauses are dropped. Empty clauses are kept.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        normalized = []
        for clause in self.clauses:
            c = normalize_clause(clause)
            if c is None:
                continue
            for lit in c:
                if var(lit) > self.num_vars:
                    raise ValueError(
                        f"literal {lit} exceeds declared {self.num_vars} variables")
            normalized.append(c)
        object.__setattr__(self, "clauses", tuple(normalized))

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]], num_vars: int | None = None) -> "Formula":
        clauses = [tuple(c) for c in clauses]
        if num_vars is None:
            num_vars = max((var(l) for c in clauses for l in c), default=0)
        return cls(num_vars, tuple(clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def __len__(self):
        return len(self.clauses)


def parse_dimacs(text: str | bytes) -> Formula:
    """Parse a DIMACS CNF document.

    The header's clause count is advisory; a mismatch is reported through a
    :class:`DimacsWarning` and recorded in ``Formula.warnings``. A line starting
    with ``%`` ends the clause section (SATLIB files use it).
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8", errors="replace")

    num_vars = None
    declared = 0
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_start = 0
    nraw = 0
    last_line = 0

    for lineno, line in enumerate(text.splitlines(), 1):
        last_line = lineno
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(f"malformed header {stripped!r}", lineno)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {stripped!r}", lineno) from None
            if num_vars < 0 or declared < 0:
                raise DimacsError(f"malformed header {stripped!r}", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause data before 'p cnf' header", lineno)
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno) from None
            if lit == 0:
                nraw += 1
                c = normalize_clause(current)
                if c is not None:
                    clauses.append(c)
                current = []
                continue
            if var(lit) > num_vars:
                raise DimacsError(
                    f"literal {lit} exceeds declared {num_vars} variables", lineno)
            if not current:
                current_start = lineno
            current.append(lit)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header", last_line)
    if current:
        raise DimacsError("unterminated final clause", current_start)

    notes = []
    if nraw != declared:
        msg = f"header declares {declared} clauses, found {nraw}"
        warnings.warn(msg, DimacsWarning, stacklevel=2)
        notes.append(msg)
    return Formula(num_vars, tuple(clauses), tuple(notes))


def read_dimacs(path) -> Formula:
    with open(path, "rb") as f:
        return parse_dimacs(f.read())


def write_dimacs(formula: Formula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(map(str, clause)) + (" 0" if clause else "0"))
    return "\n".join(lines) + "\n"


def evaluate(formula: Formula, assignment: Mapping[int, bool]) -> bool:
    """True iff every clause has a literal made true by the total ``assignment``."""
    for clause in formula.clauses:
        for lit in clause:
            if assignment[var(lit)] == (lit > 0):
                break
        else:
            return False
    return True


def model_lines(model: Mapping[int, bool], width: int = 10) -> list[str]:
    """SAT-competition ``v`` lines, terminated by 0."""
    lits = [v if model[v] else -v for v in sorted(model)]
    lits.append(0)
    return ["v " + " ".join(map(str, lits[i:i + width]))
            for i in range(0, len(lits), width)]
