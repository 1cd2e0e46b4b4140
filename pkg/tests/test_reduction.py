import itertools

import pytest

from commonperm.core import Alignment, CnfFormula, TruthAssignment, UsageError, occurrence_counts, verify_alignment
from commonperm.gen import gen_random_3sat
from commonperm.io import parse_cp_instance
from commonperm.oracle import complete_formula, crosses_boundary, small_formulas
from commonperm.reduction import (
    BoundaryRole,
    ConstructionError,
    HelperRole,
    LiteralRole,
    SymbolTable,
    alignment_to_assignment,
    all_satisfying_assignments,
    assignment_to_alignment,
    gadget_check,
    gadget_table,
    reduce,
    reduce_corollary,
    reduce_theorem2,
    role_of_name,
    solve_3sat_bruteforce,
)
from commonperm.solver import solve_cp_exact

from conftest import GOLDEN


class TestConstruction:
    def test_worked_example_matches_golden(self, worked_formula):
        out = reduce_theorem2(worked_formula)
        golden = parse_cp_instance((GOLDEN / "worked_example_theorem2.cp").read_text())
        assert out.instance.alphabet.symbols == golden.alphabet.symbols
        assert out.instance.a.names() == golden.a.names()
        assert out.instance.b.names() == golden.b.names()
        assert out.sizes() == (13, 25, 27)

    def test_corollary_matches_golden(self, worked_formula):
        out = reduce_corollary(worked_formula)
        golden = parse_cp_instance((GOLDEN / "worked_example_corollary.cp").read_text())
        assert out.instance == golden
        assert out.sizes() == (19, 37, 37)

    @pytest.mark.parametrize("variant", ["theorem2", "corollary"])
    def test_no_clauses(self, variant):
        out = reduce(CnfFormula(3, ()), variant)
        assert out.instance.alphabet.symbols == ("@",)
        assert out.instance.a.names() == out.instance.b.names() == ["@"]
        assert solve_cp_exact(out.instance).answer

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("seed", range(5))
    def test_size_laws(self, n, seed):
        f = gen_random_3sat(6, n, seed)
        t2 = reduce_theorem2(f)
        co = reduce_corollary(f)
        assert t2.sizes() == (6 * n + 1, 12 * n + 1, 13 * n + 1)
        assert co.sizes() == (9 * n + 1, 18 * n + 1, 18 * n + 1)
        at = t2.table.boundary
        assert max(occurrence_counts(t2.instance.a).values()) <= 2
        assert max(occurrence_counts(t2.instance.b).values()) <= 3
        for s in (co.instance.a, co.instance.b):
            counts = occurrence_counts(s)
            assert counts.pop(co.table.boundary) == 1
            assert set(counts.values()) <= {2}
        assert occurrence_counts(t2.instance.a)[at] == occurrence_counts(t2.instance.b)[at] == 1

    def test_b_string_reaches_three_occurrences(self):
        # the theorem2 b block repeats one complemented literal symbol
        out = reduce_theorem2(CnfFormula(3, ((1, 2, 3),)))
        assert max(occurrence_counts(out.instance.b).values()) == 3

    def test_boundary_positions(self, worked_formula):
        out = reduce_theorem2(worked_formula)
        assert out.instance.a[out.boundary_a] == out.table.boundary
        assert out.instance.b[out.boundary_b] == out.table.boundary
        assert out.boundary_a == out.boundary_b == 12

    def test_symbol_table(self, worked_formula):
        out = reduce_corollary(worked_formula)
        table = out.table
        assert sum(isinstance(r, BoundaryRole) for r in table.roles) == 1
        assert len(table.helpers()) == 3 * len(worked_formula)
        sid = table.literal(4, 2, False)
        assert out.instance.alphabet.name_of(sid) == "4.2-"
        rebuilt = SymbolTable.from_alphabet(out.instance.alphabet)
        assert rebuilt.roles == table.roles

    def test_role_names(self):
        assert role_of_name("12.3+") == LiteralRole(12, 3, True)
        assert role_of_name("2.c") == HelperRole(2, "c")
        assert role_of_name("@") == BoundaryRole()
        with pytest.raises(UsageError):
            role_of_name("x")

    def test_unknown_variant(self, worked_formula):
        with pytest.raises(UsageError):
            reduce(worked_formula, "lemma")


class TestGadget:
    @pytest.mark.parametrize("variant", ["theorem2", "corollary"])
    def test_only_all_false_fails(self, variant):
        table = dict(gadget_table(variant))
        assert table.pop((False, False, False)) is False
        assert len(table) == 7 and all(table.values())

    def test_theorem2_extremes(self):
        assert gadget_check("theorem2", (False, False, False)) is False
        assert gadget_check("theorem2", (True, True, True)) is True


class TestWitnessMaps:
    def test_worked_example_all_true(self, worked_formula):
        out = reduce_theorem2(worked_formula)
        t = TruthAssignment({1: True, 2: True, 3: True, 4: True})
        al = assignment_to_alignment(worked_formula, t, out)
        assert verify_alignment(out.instance, al).valid
        assert alignment_to_assignment(out, al).satisfies(worked_formula)

    def test_no_clauses(self):
        f = CnfFormula(0, ())
        out = reduce_theorem2(f)
        al = assignment_to_alignment(f, TruthAssignment({}), out)
        assert al.pairs == ((0, 0),)
        assert alignment_to_assignment(out, al).values == {}

    def test_rejects_non_satisfying(self, worked_formula):
        out = reduce_theorem2(worked_formula)
        with pytest.raises(UsageError):
            assignment_to_alignment(worked_formula, TruthAssignment({1: False, 2: True, 3: False, 4: True}), out)

    def test_rejects_invalid_alignment(self, worked_formula):
        out = reduce_theorem2(worked_formula)
        with pytest.raises(UsageError):
            alignment_to_assignment(out, Alignment(((0, 0),)))

    @pytest.mark.parametrize("variant", ["theorem2", "corollary"])
    def test_every_satisfying_assignment_of_small_formulas(self, variant):
        checked = 0
        for f in small_formulas():
            out = reduce(f, variant)
            for t in all_satisfying_assignments(f):
                al = assignment_to_alignment(f, t, out)
                assert verify_alignment(out.instance, al).valid
                assert not crosses_boundary(out, al)
                assert alignment_to_assignment(out, al).satisfies(f)
                checked += 1
        assert checked > 0

    def test_unaligned_variable_defaults_true(self):
        # variable 4 appears nowhere, so it has no truth-setting block
        f = CnfFormula(4, ((1, 2, 3),))
        out = reduce_theorem2(f)
        al = solve_cp_exact(out.instance).witness
        assert alignment_to_assignment(out, al)[4] is True

    def test_construction_error_on_broken_block(self, worked_formula):
        from commonperm.oracle import mutate_output

        out = mutate_output(reduce_theorem2(worked_formula))
        # w=T, x=F makes the first two literals of clause 1 true, so the block must
        # align both of their symbols, and the swap has crossed them
        t = TruthAssignment({1: True, 2: False, 3: False, 4: False})
        with pytest.raises(ConstructionError):
            assignment_to_alignment(worked_formula, t, out)


class TestSatOracle:
    def test_worked_example(self, worked_formula):
        assert solve_3sat_bruteforce(worked_formula) is not None

    def test_complete_formula_unsat(self):
        assert solve_3sat_bruteforce(complete_formula()) is None
        assert all_satisfying_assignments(complete_formula()) == []

    def test_lexicographic_first(self):
        t = solve_3sat_bruteforce(CnfFormula(3, ((1, 2, 3),)))
        assert t.values == {1: False, 2: False, 3: True}

    def test_matches_enumeration(self):
        for f in small_formulas():
            direct = [
                values for values in itertools.product((False, True), repeat=3)
                if all(any(values[abs(l) - 1] == (l > 0) for l in c) for c in f.clauses)
            ]
            got = solve_3sat_bruteforce(f)
            assert (got is None) == (not direct)
            if direct:
                assert tuple(got.values.values()) == direct[0]

    def test_guard(self):
        with pytest.raises(UsageError):
            solve_3sat_bruteforce(CnfFormula(26, ()))
