"""3SAT to Common Permutation reductions and witness translation.

Symbol names are fixed so reduced instances can be diffed against golden
files and decoded without a sidecar:

* ``v.i+`` / ``v.i-``: positive / negative literal symbol of variable ``v``
  for clause ``i`` (clauses are numbered from 1 in input order);
* ``@``: the boundary symbol;
* ``i.a``, ``i.b``, ``i.c``: helper symbols of clause ``i`` (corollary only).

The alphabet lists literal symbols ordered by (variable, clause, ``+`` before
``-``), then ``@``, then helpers by clause.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Literal as Lit, Sequence, Union

from commonperm.core import (
    Alignment,
    Alphabet,
    CnfFormula,
    CpInstance,
    SymbolString,
    TruthAssignment,
    UsageError,
    verify_alignment,
)
from commonperm.solver import solve_cp_bruteforce

Variant = Lit["theorem2", "corollary"]
VARIANTS: tuple[Variant, ...] = ("theorem2", "corollary")
BOUNDARY = "@"
SAT_BRUTE_FORCE_LIMIT = 25


class ConstructionError(RuntimeError):
    """A step that the construction guarantees to succeed did not."""


@dataclass(frozen=True)
class LiteralRole:
    var: int
    clause: int
    positive: bool

    @property
    def name(self) -> str:
        return f"{self.var}.{self.clause}{'+' if self.positive else '-'}"


@dataclass(frozen=True)
class BoundaryRole:
    name: str = BOUNDARY


@dataclass(frozen=True)
class HelperRole:
    clause: int
    tag: str  # "a", "b" or "c"

    @property
    def name(self) -> str:
        return f"{self.clause}.{self.tag}"


Role = Union[LiteralRole, BoundaryRole, HelperRole]

_LITERAL_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)([+-])$")
_HELPER_RE = re.compile(r"^([1-9][0-9]*)\.([abc])$")


def role_of_name(name: str) -> Role:
    if name == BOUNDARY:
        return BoundaryRole()
    m = _LITERAL_RE.match(name)
    if m:
        return LiteralRole(int(m[1]), int(m[2]), m[3] == "+")
    m = _HELPER_RE.match(name)
    if m:
        return HelperRole(int(m[1]), m[2])
    raise UsageError(f"{name!r} is not a reduction symbol name")


class SymbolTable:
    """Bidirectional map between symbol ids and their roles."""

    def __init__(self, alphabet: Alphabet, roles: Sequence[Role]):
        if len(roles) != len(alphabet):
            raise UsageError("one role per symbol required")
        self.alphabet = alphabet
        self.roles: tuple[Role, ...] = tuple(roles)
        self._ids = {role: sid for sid, role in enumerate(self.roles)}
        if len(self._ids) != len(self.roles):
            raise UsageError("roles must be distinct")
        if sum(isinstance(r, BoundaryRole) for r in self.roles) != 1:
            raise UsageError("exactly one boundary symbol required")

    @classmethod
    def from_alphabet(cls, alphabet: Alphabet) -> SymbolTable:
        return cls(alphabet, [role_of_name(n) for n in alphabet.symbols])

    def __len__(self) -> int:
        return len(self.roles)

    def role(self, sid: int) -> Role:
        return self.roles[sid]

    def id_of(self, role: Role) -> int:
        return self._ids[role]

    def literal(self, var: int, clause: int, positive: bool) -> int:
        return self._ids[LiteralRole(var, clause, positive)]

    @property
    def boundary(self) -> int:
        return self._ids[BoundaryRole()]

    def helpers(self) -> list[HelperRole]:
        return [r for r in self.roles if isinstance(r, HelperRole)]

    def describe(self, sid: int) -> str:
        r = self.roles[sid]
        if isinstance(r, LiteralRole):
            return f"literal var={r.var} clause={r.clause} polarity={'+' if r.positive else '-'}"
        if isinstance(r, HelperRole):
            return f"helper clause={r.clause} tag={r.tag}"
        return "boundary"


@dataclass(frozen=True)
class ReductionOutput:
    instance: CpInstance
    table: SymbolTable
    variant: Variant
    formula: CnfFormula
    boundary_a: int
    boundary_b: int
    clause_spans_a: tuple[tuple[int, int], ...]  # [start, stop) of each clause block
    clause_spans_b: tuple[tuple[int, int], ...]

    def sizes(self) -> tuple[int, int, int]:
        inst = self.instance
        return len(inst.alphabet), len(inst.a), len(inst.b)


def _clause_block(variant: Variant, clause: int, lits: Sequence[int]) -> tuple[list, list]:
    """Token roles of one clause block, as (a_part, b_part)."""

    def sym(lit: int, negated: bool) -> LiteralRole:
        return LiteralRole(abs(lit), clause, (lit > 0) != negated)

    x, y, z = lits
    X, Y, Z = sym(x, False), sym(y, False), sym(z, False)
    nX, nY, nZ = sym(x, True), sym(y, True), sym(z, True)
    if variant == "theorem2":
        return [X, Y, Z, nX, nY, nZ], [X, Y, Z, nY, nX, nZ, nY]
    A, B, C = (HelperRole(clause, t) for t in "abc")
    return (
        [nX, X, A, B, Y, nY, A, C, B, nZ, C, Z],
        [X, A, nX, nY, B, Y, C, A, B, C, Z, nZ],
    )


def reduce(formula: CnfFormula, variant: Variant = "theorem2") -> ReductionOutput:
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}")
    incidences: dict[int, list[int]] = {}
    for idx, clause in enumerate(formula.clauses, start=1):
        for lit in clause:
            incidences.setdefault(abs(lit), []).append(idx)

    roles: list[Role] = []
    for var in sorted(incidences):
        for idx in incidences[var]:
            roles += [LiteralRole(var, idx, True), LiteralRole(var, idx, False)]
    roles.append(BoundaryRole())
    if variant == "corollary":
        for idx in range(1, len(formula) + 1):
            roles += [HelperRole(idx, t) for t in "abc"]
    alphabet = Alphabet(tuple(r.name for r in roles))
    table = SymbolTable(alphabet, roles)

    a_roles: list[Role] = []
    b_roles: list[Role] = []
    for var in sorted(incidences):
        pos = [LiteralRole(var, idx, True) for idx in incidences[var]]
        neg = [LiteralRole(var, idx, False) for idx in incidences[var]]
        a_roles += pos + neg
        b_roles += neg + pos
    boundary_a, boundary_b = len(a_roles), len(b_roles)
    a_roles.append(BoundaryRole())
    b_roles.append(BoundaryRole())

    spans_a, spans_b = [], []
    for idx, clause in enumerate(formula.clauses, start=1):
        part_a, part_b = _clause_block(variant, idx, clause)
        spans_a.append((len(a_roles), len(a_roles) + len(part_a)))
        spans_b.append((len(b_roles), len(b_roles) + len(part_b)))
        a_roles += part_a
        b_roles += part_b

    inst = CpInstance(
        alphabet,
        SymbolString(alphabet, tuple(table.id_of(r) for r in a_roles)),
        SymbolString(alphabet, tuple(table.id_of(r) for r in b_roles)),
    )
    return ReductionOutput(
        inst, table, variant, formula, boundary_a, boundary_b, tuple(spans_a), tuple(spans_b)
    )


def reduce_theorem2(formula: CnfFormula) -> ReductionOutput:
    return reduce(formula, "theorem2")


def reduce_corollary(formula: CnfFormula) -> ReductionOutput:
    return reduce(formula, "corollary")


def _align_within(
    a: Sequence[int], b: Sequence[int], required: Sequence[int]
) -> list[tuple[int, int]] | None:
    """Exhaustively align exactly ``required`` inside the token windows a, b.

    Returns window-relative pairs, or None when no alignment exists.
    """
    wanted = set(required)
    idx_a = [p for p, t in enumerate(a) if t in wanted]
    idx_b = [p for p, t in enumerate(b) if t in wanted]
    local = {sid: n for n, sid in enumerate(sorted(wanted))}
    names = tuple(str(n) for n in range(len(local)))
    alphabet = Alphabet(names)
    sub = CpInstance(
        alphabet,
        SymbolString(alphabet, tuple(local[a[p]] for p in idx_a)),
        SymbolString(alphabet, tuple(local[b[p]] for p in idx_b)),
    )
    report = solve_cp_bruteforce(sub)
    if not report.answer:
        return None
    return [(idx_a[i], idx_b[j]) for i, j in report.witness.pairs]


def assignment_to_alignment(
    formula: CnfFormula, t: TruthAssignment, out: ReductionOutput
) -> Alignment:
    """Build the alignment a satisfying assignment induces on a reduced instance."""
    if not t.satisfies(formula):
        raise UsageError("assignment does not satisfy the formula")
    inst, table = out.instance, out.table

    def in_truth_part(sid: int) -> bool:
        # a variable set true gives up its negative symbols here, and vice versa
        role = table.role(sid)
        return isinstance(role, LiteralRole) and role.positive != t[role.var]

    left_a = [p for p in range(out.boundary_a) if in_truth_part(inst.a[p])]
    left_b = [p for p in range(out.boundary_b) if in_truth_part(inst.b[p])]
    if [inst.a[p] for p in left_a] != [inst.b[p] for p in left_b]:
        raise ConstructionError("truth-setting blocks do not align")
    pairs = list(zip(left_a, left_b))
    pairs.append((out.boundary_a, out.boundary_b))

    for (sa, ea), (sb, eb) in zip(out.clause_spans_a, out.clause_spans_b):
        window_a = inst.a.tokens[sa:ea]
        window_b = inst.b.tokens[sb:eb]
        required = sorted({sid for sid in window_a if not in_truth_part(sid)})
        local = _align_within(window_a, window_b, required)
        if local is None:
            raise ConstructionError(f"clause block at a[{sa}:{ea}] cannot be aligned")
        pairs += [(sa + i, sb + j) for i, j in local]

    al = Alignment(tuple(pairs))
    verdict = verify_alignment(inst, al)
    if not verdict.valid:
        raise ConstructionError(f"assembled alignment is invalid: {verdict.violations[0].message}")
    return al


def alignment_to_assignment(out: ReductionOutput, al: Alignment) -> TruthAssignment:
    """Read a truth assignment off the truth-setting part of an alignment."""
    inst, table = out.instance, out.table
    verdict = verify_alignment(inst, al)
    if not verdict.valid:
        raise UsageError(f"invalid alignment: {verdict.violations[0].message}")
    votes: dict[int, bool] = {}
    for i, _ in al.pairs:
        if i >= out.boundary_a:
            continue
        role = table.role(inst.a[i])
        assert isinstance(role, LiteralRole)
        value = not role.positive
        if votes.setdefault(role.var, value) != value:
            raise ConstructionError(
                f"variable {role.var} has both polarities aligned before the boundary"
            )
    n_vars = out.formula.n_vars
    return TruthAssignment({v: votes.get(v, True) for v in range(1, n_vars + 1)})


def gadget_check(variant: Variant, pattern: Sequence[bool]) -> bool:
    """Can one isolated clause block align the symbols a truth pattern leaves it?

    ``pattern[k]`` is the truth value of the k-th literal. A true literal
    leaves its own symbol to the block, a false one its complement.
    """
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}")
    part_a, part_b = _clause_block(variant, 1, (1, 2, 3))
    roles = sorted(set(part_a), key=lambda r: (isinstance(r, HelperRole), str(r)))
    ids = {r: n for n, r in enumerate(roles)}
    required = [ids[LiteralRole(k + 1, 1, bool(v))] for k, v in enumerate(pattern)]
    required += [ids[r] for r in roles if isinstance(r, HelperRole)]
    local = _align_within([ids[r] for r in part_a], [ids[r] for r in part_b], required)
    return local is not None


def gadget_table(variant: Variant) -> list[tuple[tuple[bool, bool, bool], bool]]:
    patterns = itertools.product((False, True), repeat=3)
    return [(p, gadget_check(variant, p)) for p in patterns]


def solve_3sat_bruteforce(formula: CnfFormula) -> TruthAssignment | None:
    """First satisfying assignment, counting F < T with variable 1 most significant."""
    n = formula.n_vars
    if n > SAT_BRUTE_FORCE_LIMIT:
        raise UsageError(f"brute force limited to {SAT_BRUTE_FORCE_LIMIT} variables, got {n}")
    for values in itertools.product((False, True), repeat=n):
        if all(any(values[abs(l) - 1] == (l > 0) for l in c) for c in formula.clauses):
            return TruthAssignment(dict(enumerate(values, start=1)))
    return None


def all_satisfying_assignments(formula: CnfFormula) -> list[TruthAssignment]:
    n = formula.n_vars
    if n > SAT_BRUTE_FORCE_LIMIT:
        raise UsageError(f"brute force limited to {SAT_BRUTE_FORCE_LIMIT} variables, got {n}")
    return [
        TruthAssignment(dict(enumerate(values, start=1)))
        for values in itertools.product((False, True), repeat=n)
        if all(any(values[abs(l) - 1] == (l > 0) for l in c) for c in formula.clauses)
    ]


def output_from_instance(inst: CpInstance, formula: CnfFormula, variant: Variant) -> ReductionOutput:
    """Rebuild a ReductionOutput for ``formula`` and check ``inst`` matches it."""
    out = reduce(formula, variant)
    if out.instance != inst:
        raise UsageError("instance is not the reduction of the given formula")
    return out
