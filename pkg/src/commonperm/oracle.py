"""Empirical check that the reductions preserve satisfiability.

For each formula: brute-force 3SAT against the exact CP solver on the
reduced instance, plus witness round-trips in both directions.
"""

from __future__ import annotations

import dataclasses
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from commonperm.core import Alignment, CnfFormula, CpInstance, SymbolString, verify_alignment
from commonperm.gen import harness_formula
from commonperm.io import serialize_alignment, serialize_cp_instance, serialize_dimacs
from commonperm.reduction import (
    ConstructionError,
    ReductionOutput,
    Variant,
    alignment_to_assignment,
    all_satisfying_assignments,
    assignment_to_alignment,
    reduce,
    solve_3sat_bruteforce,
)
from commonperm.solver import Budget, solve_cp_exact

ALL_ASSIGNMENTS_UP_TO = 10  # round-trip every satisfying assignment below this many variables


@dataclass
class TrialResult:
    index: int
    variant: str
    formula: CnfFormula
    satisfiable: bool
    cp_answer: bool | None
    problems: list[str] = field(default_factory=list)
    reproducer: str = ""

    @property
    def ok(self) -> bool:
        return not self.problems


def mutate_output(out: ReductionOutput) -> ReductionOutput:
    """Swap the first two tokens of the first clause block in ``a``.

    Used to confirm the harness notices a broken gadget.
    """
    if not out.clause_spans_a:
        return out
    start = out.clause_spans_a[0][0]
    tokens = list(out.instance.a.tokens)
    tokens[start], tokens[start + 1] = tokens[start + 1], tokens[start]
    inst = CpInstance(out.instance.alphabet, SymbolString(out.instance.alphabet, tuple(tokens)), out.instance.b)
    return dataclasses.replace(out, instance=inst)


def crosses_boundary(out: ReductionOutput, al: Alignment) -> bool:
    return any((i < out.boundary_a) != (j < out.boundary_b) for i, j in al.pairs)


def _backward(out: ReductionOutput, al: Alignment, label: str, problems: list[str]) -> None:
    if crosses_boundary(out, al):
        problems.append(f"{label}: alignment pairs positions across the boundary")
    try:
        t = alignment_to_assignment(out, al)
    except ConstructionError as exc:
        problems.append(f"{label}: {exc}")
        return
    if not t.satisfies(out.formula):
        problems.append(f"{label}: extracted assignment {t} does not satisfy the formula")


def check_formula(
    formula: CnfFormula,
    variant: Variant,
    *,
    index: int = 0,
    mutate: bool = False,
    budget: Budget | None = None,
) -> TrialResult:
    out = reduce(formula, variant)
    if mutate:
        out = mutate_output(out)
    sat = solve_3sat_bruteforce(formula)
    report = solve_cp_exact(out.instance, budget)
    result = TrialResult(index, variant, formula, sat is not None, report.answer)
    problems = result.problems
    witnesses: list[tuple[str, Alignment]] = []

    if result.satisfiable != report.answer:
        problems.append(
            f"equivalence: 3SAT says {'sat' if result.satisfiable else 'unsat'}, "
            f"CP solver says {'yes' if report.answer else 'no'}"
        )
    if report.witness is not None:
        witnesses.append(("solver witness", report.witness))
        _backward(out, report.witness, "solver witness", problems)

    if sat is not None:
        if formula.n_vars <= ALL_ASSIGNMENTS_UP_TO:
            assignments = all_satisfying_assignments(formula)
        else:
            assignments = [sat]
        for t in assignments:
            label = f"forward witness for {t}"
            try:
                al = assignment_to_alignment(formula, t, out)
            except ConstructionError as exc:
                problems.append(f"{label}: {exc}")
                continue
            if not verify_alignment(out.instance, al).valid:
                problems.append(f"{label}: alignment does not verify")
                continue
            witnesses.append((label, al))
            _backward(out, al, label, problems)

    if problems:
        parts = [
            f"# trial {index} ({variant}) FAILED",
            "# formula (DIMACS):",
            serialize_dimacs(formula).rstrip("\n"),
            "# instance:",
            serialize_cp_instance(out.instance).rstrip("\n"),
        ]
        for label, al in witnesses:
            parts += [f"# {label}:", serialize_alignment(al).rstrip("\n")]
        result.reproducer = "\n".join(parts) + "\n"
    return result


def small_formulas(n_vars: int = 3, max_clauses: int = 2) -> list[CnfFormula]:
    """Every formula over ``n_vars`` variables with up to ``max_clauses`` clauses,
    up to clause order (repeated clauses included)."""
    clauses = [
        tuple(v if positive else -v for v, positive in zip(vars_, signs))
        for vars_ in itertools.combinations(range(1, n_vars + 1), 3)
        for signs in itertools.product((True, False), repeat=3)
    ]
    return [
        CnfFormula(n_vars, combo)
        for size in range(max_clauses + 1)
        for combo in itertools.combinations_with_replacement(clauses, size)
    ]


def complete_formula() -> CnfFormula:
    """All 8 sign patterns over variables 1, 2, 3; unsatisfiable."""
    return CnfFormula(
        3,
        tuple(
            tuple(v if positive else -v for v, positive in zip((1, 2, 3), signs))
            for signs in itertools.product((True, False), repeat=3)
        ),
    )


def _run_one(args):
    index, formula, variant, mutate = args
    return check_formula(formula, variant, index=index, mutate=mutate)


def run_trials(
    formulas: Sequence[CnfFormula],
    variants: Iterable[Variant],
    *,
    mutate: bool = False,
    jobs: int = 1,
) -> list[TrialResult]:
    """Check every (formula, variant); results come back in input order."""
    work = [(n, f, v, mutate) for n, f in enumerate(formulas) for v in variants]
    if jobs <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work, chunksize=8))


def random_formulas(trials: int, seed: int, max_vars: int, max_clauses: int) -> list[CnfFormula]:
    return [harness_formula(seed + n, max_vars, max_clauses) for n in range(trials)]
