"""CDCL SAT solving with pluggable restart policies and polarity heuristics."""

from ._backend import DEFAULT_BACKEND, available_backends
from .cnf import DimacsError, Formula, evaluate, parse_dimacs, read_dimacs, write_dimacs
from .engine import Budget, Outcome, Solver, SolverConfig, SolverStats, Status, solve
from .heuristics import PolarityMode
from .restarts import (FixedRestarts, GeometricRestarts, InnerOuterRestarts, LubyRestarts,
                       luby_term, parse_restart)

__version__ = "0.1.0"

__all__ = [
    "Budget", "DEFAULT_BACKEND", "DimacsError", "FixedRestarts", "Formula",
    "GeometricRestarts", "InnerOuterRestarts", "LubyRestarts", "Outcome", "PolarityMode",
    "Solver", "SolverConfig", "SolverStats", "Status", "available_backends", "evaluate",
    "luby_term", "parse_dimacs", "parse_restart", "read_dimacs", "solve", "write_dimacs",
]
