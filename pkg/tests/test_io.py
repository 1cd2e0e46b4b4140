import pytest
from hypothesis import given
from hypothesis import strategies as st

from commonperm.core import Alignment, CnfFormula, CpInstance
from commonperm.gen import gen_random_3sat, harness_cp_instance
from commonperm.io import (
    ParseError,
    parse_alignment,
    parse_cp_instance,
    parse_dimacs,
    render_alignment,
    serialize_alignment,
    serialize_cp_instance,
    serialize_dimacs,
    serialize_symbol_table,
)
from commonperm.reduction import reduce_corollary

from conftest import GOLDEN


class TestDimacs:
    def test_canonical(self):
        f = parse_dimacs("p cnf 3 1\n1 -2 3 0")
        assert f == CnfFormula(3, ((1, -2, 3),))

    def test_two_literals(self):
        with pytest.raises(ParseError, match="not 3SAT") as err:
            parse_dimacs("p cnf 2 1\n1 -2 0")
        assert (err.value.line, err.value.column) == (2, 6)

    def test_repeated_variable(self):
        with pytest.raises(ParseError, match="repeated") as err:
            parse_dimacs("p cnf 2 1\n1 -1 2 0")
        assert err.value.token == "-1"

    def test_out_of_range(self):
        with pytest.raises(ParseError, match="out of range") as err:
            parse_dimacs("p cnf 3 1\n1 2 4 0\n")
        assert err.value.column == 5

    def test_header_mismatch(self):
        with pytest.raises(ParseError, match="declares 2"):
            parse_dimacs("p cnf 3 2\n1 2 3 0\n")

    @pytest.mark.parametrize(
        "text",
        ["1 2 3 0\n", "p cnf 3 1\n1 2 3\n", "p cnf 3 1\n1 x 3 0\n", "p dnf 3 1\n", "p cnf 3 0\np cnf 3 0\n", ""],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_dimacs(text)

    def test_comments_multiline_clauses_and_percent(self):
        text = "c hello\nc\np cnf 4 2\n 1 -2\n 3 0 -4 2 -3\n0\n%\n0\n"
        assert parse_dimacs(text).clauses == ((1, -2, 3), (-4, 2, -3))

    def test_golden_file(self, worked_formula):
        assert parse_dimacs((GOLDEN / "worked_example.cnf").read_text()) == worked_formula

    @pytest.mark.parametrize("seed", range(20))
    def test_round_trip(self, seed):
        f = gen_random_3sat(7, seed % 6, seed)
        assert parse_dimacs(serialize_dimacs(f, ("generated",))) == f


class TestCpFormat:
    def test_example1(self, example1):
        assert parse_cp_instance("a b c\nb c a b a\nb a b c c a") == example1

    def test_character_convenience(self, example1):
        assert parse_cp_instance("# the first example\na b c\nbcaba\nbabcca\n") == example1
        assert parse_cp_instance((GOLDEN / "example1.cp").read_text()) == example1

    def test_empty_instance(self):
        inst = parse_cp_instance("\n\n\n")
        assert len(inst.alphabet) == 0 and len(inst.a) == 0 and len(inst.b) == 0
        assert serialize_cp_instance(inst) == "\n\n\n"

    def test_unknown_token(self):
        with pytest.raises(ParseError, match="not in alphabet") as err:
            parse_cp_instance("a b\na b\na z\n")
        assert (err.value.line, err.value.column, err.value.token) == (3, 3, "z")

    def test_duplicate_alphabet_token(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_cp_instance("a b a\na\nb\n")

    @pytest.mark.parametrize("text", ["a b\na b\n", "", "# only a comment\n"])
    def test_missing_line(self, text):
        with pytest.raises(ParseError, match="missing"):
            parse_cp_instance(text)

    def test_trailing_content(self):
        with pytest.raises(ParseError, match="unexpected"):
            parse_cp_instance("a\na\na\na\n")

    def test_multi_token_names_not_split(self):
        text = serialize_cp_instance(reduce_corollary(CnfFormula(3, ((1, 2, 3),))).instance)
        assert serialize_cp_instance(parse_cp_instance(text)) == text

    @pytest.mark.parametrize("seed", range(100))
    def test_round_trip(self, seed):
        inst = harness_cp_instance(seed, max_symbols=30, max_len=40)
        text = serialize_cp_instance(inst)
        parsed = parse_cp_instance(text)
        assert parsed == inst
        assert serialize_cp_instance(parsed) == text


class TestAlignmentFormat:
    def test_reference_alignment(self, example1):
        al = Alignment(((0, 0), (1, 3), (4, 5)))
        assert serialize_alignment(al) == "1:1\n2:4\n5:6\n"
        assert parse_alignment("1:1\n2:4\n5:6") == al

    def test_empty(self):
        assert serialize_alignment(Alignment(())) == ""
        assert parse_alignment("") == Alignment(())

    def test_rendering(self, example1):
        al = Alignment(((0, 0), (1, 3), (4, 5)))
        row_a, row_b = render_alignment(al, example1)
        assert row_a.count("[") == row_b.count("[") == len(example1.alphabet)
        text = serialize_alignment(al, example1, render=True)
        assert parse_alignment(text) == al
        assert "# a: [b]" in text

    def test_solver_output_accepted(self):
        assert parse_alignment("yes\n1:2\n") == Alignment(((0, 1),))

    @pytest.mark.parametrize("text", ["1-2\n", "0:1\n", "1:x\n", "no\n"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_alignment(text)

    @given(st.lists(st.tuples(st.integers(0, 500), st.integers(0, 500)), max_size=20))
    def test_round_trip(self, pairs):
        al = Alignment(pairs)
        assert parse_alignment(serialize_alignment(al)) == al


def test_symbol_table_sidecar(worked_formula):
    text = serialize_symbol_table(reduce_corollary(worked_formula).table)
    lines = text.splitlines()
    assert lines[1] == "0\t1.1+\tliteral var=1 clause=1 polarity=+"
    assert "12\t@\tboundary" in lines
    assert lines[-1] == "18\t2.c\thelper clause=2 tag=c"
