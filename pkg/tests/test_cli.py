import subprocess
import sys

import pytest

from rapidsat import Formula, parse_dimacs, write_dimacs
from rapidsat.cli import main
from rapidsat.cnf import evaluate
from rapidsat.generators import bundled_corpus, pigeonhole
from rapidsat.harness import read_table


@pytest.fixture
def sat_file(tmp_path):
    p = tmp_path / "sat.cnf"
    p.write_text("c tiny\np cnf 3 2\n1 -2 0\n2 3 0\n")
    return p


@pytest.fixture
def unsat_file(tmp_path):
    p = tmp_path / "unsat.cnf"
    p.write_text(write_dimacs(pigeonhole(4, 3)))
    return p


def model_from(out):
    lits = [int(x) for line in out.splitlines() if line.startswith("v ")
            for x in line[2:].split()]
    assert lits[-1] == 0
    return {abs(l): l > 0 for l in lits[:-1]}


def test_solve_sat(sat_file, capsys):
    assert main(["solve", str(sat_file), "--restart", "luby:1", "--seed", "2"]) == 10
    out = capsys.readouterr().out
    assert "s SATISFIABLE" in out
    f = parse_dimacs(sat_file.read_text())
    assert evaluate(f, model_from(out))


def test_solve_unsat(unsat_file, capsys):
    assert main(["solve", str(unsat_file), "--polarity", "activity"]) == 20
    out = capsys.readouterr().out
    assert "s UNSATISFIABLE" in out and "\nv " not in out


def test_solve_unknown_on_cap(tmp_path, capsys):
    p = tmp_path / "php.cnf"
    p.write_text(write_dimacs(pigeonhole(7, 6)))
    assert main(["solve", str(p), "--conflicts", "5"]) == 0
    assert "s UNKNOWN" in capsys.readouterr().out


def test_solve_bad_input(tmp_path, capsys):
    p = tmp_path / "bad.cnf"
    p.write_text("p cnf 1 1\n2 0\n")
    assert main(["solve", str(p)]) == 1
    assert "exceeds" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.cnf")]) == 1


def test_solve_bad_restart(sat_file, capsys):
    assert main(["solve", str(sat_file), "--restart", "luby:0"]) == 1
    assert "invalid restart spec" in capsys.readouterr().err


def test_luby_print(capsys):
    assert main(["luby", "--print", "15"]) == 0
    assert capsys.readouterr().out.split() == "1 1 2 1 1 2 4 1 1 2 1 1 2 4 8".split()
    main(["luby", "--print", "4", "--unit", "512"])
    assert capsys.readouterr().out.split() == ["512", "512", "1024", "512"]


def test_unitwalk(sat_file, capsys):
    assert main(["unitwalk", str(sat_file), "--seed", "3", "--periods", "100"]) == 10
    out = capsys.readouterr().out
    assert evaluate(parse_dimacs(sat_file.read_text()), model_from(out))


def test_unitwalk_unknown(tmp_path, capsys):
    p = tmp_path / "u.cnf"
    p.write_text(write_dimacs(Formula.of([[1], [-1]])))
    assert main(["unitwalk", str(p), "--periods", "3"]) == 0
    assert "s UNKNOWN" in capsys.readouterr().out


def test_bench(tmp_path, sat_file, unsat_file, capsys):
    table, hist = tmp_path / "t.csv", tmp_path / "h.csv"
    code = main(["bench", str(sat_file.parent), "--restarts", "luby:1,8,geometric:100,1.5",
                 "--seeds", "1,2", "--timeout", "5", "--out", str(table),
                 "--hist", str(hist), "--records", str(tmp_path / "r.csv")])
    assert code == 0
    rows = read_table(table.read_text())
    assert list(rows) == ["Luby-1", "Luby-8", "Geometric-100-1.5"]
    assert hist.read_text().splitlines()[1] == "Luby-1,4,2,2,100"
    assert "trend" in capsys.readouterr().err
    assert len((tmp_path / "r.csv").read_text().splitlines()) == 1 + 2 * 3 * 2


def test_bench_auto_baseline(tmp_path, unsat_file, capsys):
    assert main(["bench", str(tmp_path), "--restarts", "luby:1", "--seeds", "1",
                 "--baseline", "auto", "--out", "-", "--hist", "-"]) == 0
    out = capsys.readouterr().out
    assert "Luby-1,1,0,1,1" in out


def test_bench_empty_dir(tmp_path, capsys):
    assert main(["bench", str(tmp_path), "--restarts", "luby:1"]) == 1


def test_corpus(tmp_path, capsys):
    assert main(["corpus"]) == 0
    assert capsys.readouterr().out.strip() == str(bundled_corpus())
    assert main(["corpus", "--out", str(tmp_path / "c")]) == 0
    written = sorted(p.name for p in (tmp_path / "c").iterdir())
    assert written == sorted(p.name for p in bundled_corpus().glob("*.cnf"))
    for name in written[:5]:
        assert (tmp_path / "c" / name).read_text() == (bundled_corpus() / name).read_text()


def test_module_entry_point(sat_file):
    out = subprocess.run([sys.executable, "-m", "rapidsat", "solve", str(sat_file)],
                         capture_output=True, text=True)
    assert out.returncode == 10
    assert "s SATISFIABLE" in out.stdout
