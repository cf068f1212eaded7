import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from rapidsat.cnf import (DimacsError, DimacsWarning, Formula, evaluate, model_lines,
                          neg, parse_dimacs, read_dimacs, write_dimacs)
from rapidsat.generators import random_ksat

from oracles import formula_mask, satisfies


def test_parse_basic():
    f = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n")
    assert f.num_vars == 2
    assert f.clauses == ((1, -2), (-1, 2))
    assert f.warnings == ()


def test_tautology_dropped():
    f = parse_dimacs("p cnf 1 1\n1 -1 0\n")
    assert f.num_vars == 1 and f.clauses == ()


def test_literal_out_of_range():
    with pytest.raises(DimacsError, match="literal 4 exceeds declared 3") as e:
        parse_dimacs("p cnf 3 1\n1 4 0\n")
    assert e.value.line == 2


def test_duplicates_and_multiline_clauses():
    f = parse_dimacs("c hello\np cnf 3 2\n1 2\n 1 -3 0 3\n\n2 0\n")
    assert f.clauses == ((1, 2, -3), (3, 2))


def test_bytes_and_percent_terminator():
    f = parse_dimacs(b"p cnf 2 1\n1 2 0\n%\n0\n")
    assert f.clauses == ((1, 2),)


@pytest.mark.parametrize("text,line,msg", [
    ("p cnf x 1\n1 0\n", 1, "malformed header"),
    ("p dnf 1 1\n1 0\n", 1, "malformed header"),
    ("p cnf 1\n", 1, "malformed header"),
    ("c\np cnf 2 1\n1 b 0\n", 3, "non-integer"),
    ("p cnf 2 2\n1 0\n2\n", 3, "unterminated"),
    ("1 2 0\np cnf 2 1\n", 1, "before"),
    ("p cnf 2 1\np cnf 2 1\n", 2, "duplicate header"),
    ("c only a comment\n", 1, "missing"),
])
def test_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(DimacsError, match=msg) as e:
        parse_dimacs(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_header_count_mismatch_warns():
    with pytest.warns(DimacsWarning, match="declares 3"):
        f = parse_dimacs("p cnf 2 3\n1 0\n2 0\n")
    assert f.clauses == ((1,), (2,))
    assert "declares 3 clauses, found 2" in f.warnings[0]


def test_empty_clause_kept():
    f = parse_dimacs("p cnf 1 2\n0\n1 0\n")
    assert f.clauses == ((), (1,))


def test_formula_rejects_bad_literals():
    with pytest.raises(ValueError):
        Formula(2, ((1, 3),))
    with pytest.raises(ValueError):
        Formula(2, ((0, 1),))


def test_formula_of_infers_vars():
    f = Formula.of([[1, -5], [2, 2, 3], [4, -4]])
    assert f.num_vars == 5
    assert f.clauses == ((1, -5), (2, 3))


def test_write_examples():
    assert write_dimacs(Formula(1, ((1,),))) == "p cnf 1 1\n1 0\n"
    assert write_dimacs(Formula(0, ())) == "p cnf 0 0\n"


def test_write_comments_and_empty_clause():
    text = write_dimacs(Formula(1, ((), (1,))), ["made by hand"])
    assert text == "c made by hand\np cnf 1 2\n0\n1 0\n"
    assert parse_dimacs(text).clauses == ((), (1,))


def test_round_trip_random_3sat():
    for seed in range(20):
        f = random_ksat(30, 120, 3, seed)
        assert parse_dimacs(write_dimacs(f)) == f


clause_st = st.lists(st.integers(1, 8).flatmap(lambda v: st.sampled_from([v, -v])),
                     max_size=5)


@settings(max_examples=200, deadline=None)
@given(st.lists(clause_st, max_size=12))
def test_round_trip_property(clauses):
    f = Formula(8, tuple(tuple(c) for c in clauses))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert parse_dimacs(write_dimacs(f)) == f
    for c in f.clauses:
        assert len(set(c)) == len(c)
        assert not any(neg(l) in c for l in c)


def test_evaluate_examples():
    f = Formula(2, ((1, -2), (-1, 2)))
    assert evaluate(f, {1: True, 2: True})
    assert not evaluate(f, {1: True, 2: False})
    g = Formula(1, ((1,), (-1,)))
    assert not evaluate(g, {1: True}) and not evaluate(g, {1: False})


def test_evaluate_matches_truth_table():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 12)
        f = random_ksat(n, rng.randint(1, 5 * n), min(3, n), rng)
        mask = formula_mask(f.clauses, n)
        for a in rng.sample(range(1 << n), min(64, 1 << n)):
            model = {v: bool(a >> (v - 1) & 1) for v in range(1, n + 1)}
            assert evaluate(f, model) == bool(mask >> a & 1) == satisfies(f.clauses, model)


def test_model_from_enumerator_on_disk(tmp_path):
    # a uf20-style instance written to disk with a model found by enumeration
    f = random_ksat(20, 85, 3, 20)
    mask = formula_mask(f.clauses, 20)
    assert mask, "instance should be satisfiable"
    a = (mask & -mask).bit_length() - 1
    model = {v: bool(a >> (v - 1) & 1) for v in range(1, 21)}
    path = tmp_path / "uf20.cnf"
    path.write_text(write_dimacs(f))
    assert evaluate(read_dimacs(path), model)


def test_model_lines():
    lines = model_lines({v: v % 2 == 0 for v in range(1, 13)})
    assert lines == ["v -1 2 -3 4 -5 6 -7 8 -9 10", "v -11 12 0"]
    assert model_lines({}) == ["v 0"]
