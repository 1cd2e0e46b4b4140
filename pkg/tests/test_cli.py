import csv
import io
import json

import pytest

from commonperm.cli import BENCH_HEADER, main
from commonperm.io import parse_cp_instance

from conftest import GOLDEN

CNF = str(GOLDEN / "worked_example.cnf")
EX1 = str(GOLDEN / "example1.cp")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestReduce:
    def test_worked_example_sizes(self, capsys, tmp_path):
        target = tmp_path / "w.cp"
        code, out, _ = run(capsys, "reduce", CNF, "--out", str(target))
        assert code == 0 and out.strip() == "13 25 27"
        golden = parse_cp_instance((GOLDEN / "worked_example_theorem2.cp").read_text())
        assert parse_cp_instance(target.read_text()).a.names() == golden.a.names()
        assert (tmp_path / "w.cp.symbols").read_text().startswith("# id\tsymbol\trole")

    def test_corollary(self, capsys, tmp_path):
        code, out, _ = run(capsys, "reduce", CNF, "--variant", "corollary", "--out", str(tmp_path / "c.cp"))
        assert out.strip() == "19 37 37"

    def test_stdout_with_sizes_on_stderr(self, capsys, tmp_path):
        empty = tmp_path / "empty.cnf"
        empty.write_text("p cnf 3 0\n")
        code, out, err = run(capsys, "reduce", str(empty))
        assert code == 0 and err.strip() == "1 1 1"
        assert out.splitlines()[-3:] == ["@", "@", "@"]

    def test_parse_error_exit(self, capsys, tmp_path):
        bad = tmp_path / "bad.cnf"
        bad.write_text("p cnf 2 1\n1 -2 0\n")
        code, _, err = run(capsys, "reduce", str(bad))
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "reduce", str(tmp_path / "nope.cnf"))[0] == 2


class TestSolve:
    def test_lrcs(self, capsys):
        code, out, _ = run(capsys, "solve", EX1, "--mode", "lrcs")
        assert code == 0 and out.strip() == "3"

    def test_lcs_with_witness(self, capsys):
        code, out, _ = run(capsys, "solve", EX1, "--mode", "lcs", "--witness")
        assert out.splitlines() == ["4", "b a b a"]

    def test_cp_example1_is_yes(self, capsys):
        code, out, _ = run(capsys, "solve", EX1)
        assert code == 0 and out.strip() == "yes"

    def test_cp_no(self, capsys, tmp_path):
        inst = tmp_path / "no.cp"
        inst.write_text("x y\nx y\ny x\n")
        code, out, _ = run(capsys, "solve", str(inst), "--witness")
        assert code == 1 and out.strip() == "no"

    def test_reduced_worked_example(self, capsys, tmp_path):
        target = tmp_path / "w.cp"
        run(capsys, "reduce", CNF, "--out", str(target))
        code, out, _ = run(capsys, "solve", str(target))
        assert code == 0

    def test_budget_exit(self, capsys, tmp_path):
        target = tmp_path / "w.cp"
        run(capsys, "reduce", CNF, "--out", str(target))
        code, _, err = run(capsys, "solve", str(target), "--max-states", "3")
        assert code == 3 and "budget" in err

    def test_json(self, capsys):
        code, out, _ = run(capsys, "solve", EX1, "--json", "--witness")
        report = json.loads(out)
        assert report["answer"] is True and len(report["witness"]) == 3
        assert report["kept"] >= report["explored"] > 0


class TestVerify:
    def test_reference_alignment(self, capsys, tmp_path):
        al = tmp_path / "al.txt"
        al.write_text("1:1\n2:4\n5:6\n")
        code, out, _ = run(capsys, "verify", EX1, str(al), "--render")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "valid"
        assert lines[1].split() == ["[b]", "[c]", "a", "b", "[a]"]
        assert len(lines[1]) == len(lines[2])

    def test_crossing(self, capsys, tmp_path):
        al = tmp_path / "al.txt"
        al.write_text("1:4\n2:1\n")
        code, out, _ = run(capsys, "verify", EX1, str(al))
        assert code == 1 and out.startswith("invalid")
        assert "pair 2: j-order" in out

    def test_solver_witness_pipes_back(self, capsys, tmp_path):
        _, out, _ = run(capsys, "solve", EX1, "--witness")
        al = tmp_path / "al.txt"
        al.write_text(out)
        assert run(capsys, "verify", EX1, str(al))[0] == 0

    def test_json(self, capsys, tmp_path):
        al = tmp_path / "al.txt"
        al.write_text("1:2\n")
        code, out, _ = run(capsys, "verify", EX1, str(al), "--json")
        rules = {v["rule"] for v in json.loads(out)["violations"]}
        assert {"symbol", "coverage"} <= rules


def test_gadget_check(capsys):
    code, out, _ = run(capsys, "gadget-check")
    assert code == 0
    assert out.count("F F F -> no") == 2
    assert out.count("-> yes") == 14


class TestOracle:
    def test_default_run(self, capsys):
        code, out, _ = run(capsys, "oracle", "--trials", "200")
        assert code == 0 and out.strip() == "200/200 agree"

    def test_zero_trials(self, capsys):
        code, out, _ = run(capsys, "oracle", "--trials", "0")
        assert code == 0 and out.strip() == "0/0 agree"

    def test_mutation_is_caught(self, capsys):
        code, out, _ = run(capsys, "oracle", "--trials", "20", "--mutate", "--variant", "theorem2")
        assert code == 1
        assert "p cnf" in out  # the reproducer carries the formula

    def test_parallel_matches_serial(self, capsys):
        serial = run(capsys, "oracle", "--trials", "30", "--json")[1]
        parallel = run(capsys, "oracle", "--trials", "30", "--json", "--jobs", "2")[1]
        assert json.loads(serial) == json.loads(parallel)


class TestGen:
    def test_deterministic(self, capsys):
        first = run(capsys, "gen", "3sat", "--vars", "5", "--clauses", "4", "--seed", "9")[1]
        second = run(capsys, "gen", "3sat", "--vars", "5", "--clauses", "4", "--seed", "9")[1]
        assert first == second and "p cnf 5 4" in first

    def test_out_dir(self, capsys, tmp_path):
        code, _, _ = run(capsys, "gen", "cp", "--symbols", "4", "--len-a", "6", "--len-b", "6",
                         "--count", "3", "--out-dir", str(tmp_path))
        files = sorted(tmp_path.iterdir())
        assert code == 0 and len(files) == 3
        for f in files:
            parse_cp_instance(f.read_text())

    def test_count_without_dir(self, capsys):
        assert run(capsys, "gen", "3sat", "--vars", "3", "--clauses", "1", "--count", "2")[0] == 2


class TestBench:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "bench", "--max-clauses", "2", "--per-size", "2")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == BENCH_HEADER
        assert out.splitlines()[0] == "variant,n_clauses,sigma,len_a,len_b,answer,states,millis"
        assert len(rows) == 1 + 3 * 2 * 2
        for row in rows[1:]:
            n = int(row[1])
            if row[0] == "theorem2":
                assert row[2:5] == [str(6 * n + 1), str(12 * n + 1), str(13 * n + 1)]

    def test_brute_force_columns(self, capsys, tmp_path):
        target = tmp_path / "b.csv"
        run(capsys, "bench", "--max-clauses", "1", "--per-size", "1", "--brute-force", "--out", str(target))
        rows = list(csv.DictReader(target.read_text().splitlines()))
        for row in rows:
            if int(row["sigma"]) <= 8:
                assert row["bf_answer"] == row["answer"]
            else:
                assert row["bf_answer"] == row["bf_millis"] == ""


@pytest.mark.parametrize("argv", [[], ["solve"], ["gadget-check", "--variant", "lemma"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2
