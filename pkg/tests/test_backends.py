import os
import random
import subprocess
import sys

import pytest

from rapidsat import Budget, Formula, Solver, SolverConfig, available_backends, solve
from rapidsat._backend import kernel_class, resolve
from rapidsat.generators import parity, pigeonhole, random_ksat

needs_ext = pytest.mark.skipif("cython" not in available_backends(),
                               reason="compiled kernel not built")


def test_python_always_available():
    assert "python" in available_backends()
    assert kernel_class("python").backend == "python"


def test_resolve():
    assert resolve("python") == "python"
    with pytest.raises(ValueError):
        resolve("fortran")


def test_env_selects_backend():
    code = "from rapidsat import DEFAULT_BACKEND; print(DEFAULT_BACKEND)"
    env = dict(os.environ, RAPIDSAT_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def _instances():
    rng = random.Random(404)
    out = [random_ksat(n, round(r * n), 3, rng)
           for n in (10, 20, 40, 60) for r in (3.0, 4.26, 5.0) for _ in range(4)]
    out += [pigeonhole(5, 4), parity(10, False, rng), parity(10, True, rng)]
    return out


@needs_ext
@pytest.mark.parametrize("polarity", ["negative", "saving", "activity"])
@pytest.mark.parametrize("restart", ["luby:1", "luby:64", "geometric", "inout"])
def test_backends_bit_identical(restart, polarity):
    for f in _instances():
        outs = [solve(f, SolverConfig(restart=restart, polarity=polarity, seed=3,
                                      learned_limit=20, backend=b))
                for b in ("python", "cython")]
        assert outs[0].status == outs[1].status
        assert outs[0].model == outs[1].model
        assert outs[0].stats == outs[1].stats


@needs_ext
def test_kernel_state_identical_midway():
    f = random_ksat(50, 213, 3, 8)
    ks = []
    for b in ("python", "cython"):
        s = Solver(f, SolverConfig(backend=b, learned_limit=10))
        s.solve(Budget(conflicts=150))
        ks.append(s)
    a, b = ks
    assert a.trail == b.trail
    assert a.learned_clauses() == b.learned_clauses()
    for v in range(1, 51):
        assert a.kernel.activity(v) == b.kernel.activity(v)
        assert a.kernel.phase(v) == b.kernel.phase(v)


@pytest.mark.skipif("cython" in available_backends(), reason="extension is built")
def test_cython_request_without_extension():
    with pytest.raises(ImportError):
        resolve("cython")


def test_empty_formula_both_backends(backend):
    out = solve(Formula(0, ()), SolverConfig(backend=backend))
    assert out.status.value == "SAT" and out.model == {}
