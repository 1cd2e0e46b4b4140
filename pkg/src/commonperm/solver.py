"""Exact solvers for Common Permutation, LRCS and LCS, plus brute-force oracles.

The exact solvers share one search kernel. A compiled build of it is used
when available; set ``COMMONPERM_BACKEND=python`` to force the pure-Python
kernel, or pass ``backend=`` explicitly.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field

from commonperm import _engine_py
from commonperm.core import (
    Alignment,
    CpInstance,
    SymbolString,
    UsageError,
    greedy_embedding,
    verify_alignment,
)

try:
    from commonperm import _engine as _engine_c
except ImportError:  # pragma: no cover - depends on build environment
    _engine_c = None

BACKENDS = {"python": _engine_py}
if _engine_c is not None:
    BACKENDS["compiled"] = _engine_c


def default_backend() -> str:
    wanted = os.environ.get("COMMONPERM_BACKEND", "auto")
    if wanted == "auto":
        return "compiled" if "compiled" in BACKENDS else "python"
    if wanted not in BACKENDS:
        raise UsageError(f"backend {wanted!r} unavailable (have: {', '.join(sorted(BACKENDS))})")
    return wanted


def _kernel(backend: str | None):
    name = backend or default_backend()
    if name == "auto":
        name = default_backend()
    try:
        return BACKENDS[name]
    except KeyError:
        raise UsageError(f"backend {name!r} unavailable") from None


BRUTE_FORCE_CP_LIMIT = 8
BRUTE_FORCE_LRCS_LIMIT = 6


class BudgetExceeded(RuntimeError):
    """The search hit its state or time limit before reaching an answer."""

    def __init__(self, message: str, stats: SearchStats):
        super().__init__(message)
        self.stats = stats


@dataclass(frozen=True)
class Budget:
    max_states: int = 50_000_000
    time_limit: float | None = None  # seconds


@dataclass(frozen=True)
class SearchStats:
    explored: int = 0
    kept: int = 0
    peak_frontier: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class SolveReport:
    answer: bool
    witness: Alignment | None
    stats: SearchStats = field(default_factory=SearchStats)

    def __post_init__(self) -> None:
        if self.answer != (self.witness is not None):
            raise ValueError("witness must be present exactly when the answer is yes")


@dataclass(frozen=True)
class LrcsResult:
    length: int
    witness: SymbolString
    alignment: Alignment | None = None
    stats: SearchStats = field(default_factory=SearchStats)


def _run(inst: CpInstance, mode: int, budget: Budget | None, backend: str | None):
    budget = budget or Budget()
    kernel = _kernel(backend)
    started = time.monotonic()
    deadline = started + budget.time_limit if budget.time_limit is not None else None
    status, pairs, explored, kept, peak = kernel.search(
        inst.a.tokens, inst.b.tokens, len(inst.alphabet), mode, budget.max_states, deadline
    )
    stats = SearchStats(explored, kept, peak, time.monotonic() - started)
    if status < 0:
        raise BudgetExceeded(
            f"search budget exceeded after {kept} kept states ({stats.elapsed:.1f}s)", stats
        )
    return status, Alignment(tuple(pairs)), stats


def solve_cp_exact(
    inst: CpInstance, budget: Budget | None = None, *, backend: str | None = None
) -> SolveReport:
    """Decide whether a permutation of the alphabet is a common subsequence.

    Raises :class:`BudgetExceeded` rather than answering "no" on timeout.
    """
    status, witness, stats = _run(inst, _engine_py.MODE_CP, budget, backend)
    if status == 0:
        return SolveReport(False, None, stats)
    assert verify_alignment(inst, witness).valid, "solver produced an invalid witness"
    return SolveReport(True, witness, stats)


def solve_lrcs_exact(
    inst: CpInstance, budget: Budget | None = None, *, backend: str | None = None
) -> LrcsResult:
    _, al, stats = _run(inst, _engine_py.MODE_LRCS, budget, backend)
    witness = SymbolString(inst.alphabet, tuple(inst.a[i] for i, _ in al.pairs))
    return LrcsResult(len(al), witness, al, stats)


def solve_cp_bruteforce(inst: CpInstance) -> SolveReport:
    """Try every permutation of the alphabet in lexicographic id order."""
    k = len(inst.alphabet)
    if k > BRUTE_FORCE_CP_LIMIT:
        raise UsageError(f"brute force limited to {BRUTE_FORCE_CP_LIMIT} symbols, got {k}")
    started = time.monotonic()
    tried = 0
    for perm in itertools.permutations(range(k)):
        tried += 1
        pos_a = greedy_embedding(perm, inst.a.tokens)
        if pos_a is None:
            continue
        pos_b = greedy_embedding(perm, inst.b.tokens)
        if pos_b is None:
            continue
        stats = SearchStats(tried, tried, 0, time.monotonic() - started)
        return SolveReport(True, Alignment(tuple(zip(pos_a, pos_b))), stats)
    return SolveReport(False, None, SearchStats(tried, tried, 0, time.monotonic() - started))


def solve_lrcs_bruteforce(inst: CpInstance) -> LrcsResult:
    """Largest subset first; the first duplicate-free common string found wins."""
    k = len(inst.alphabet)
    if k > BRUTE_FORCE_LRCS_LIMIT:
        raise UsageError(f"brute force limited to {BRUTE_FORCE_LRCS_LIMIT} symbols, got {k}")
    for size in range(k, 0, -1):
        for subset in itertools.combinations(range(k), size):
            for perm in itertools.permutations(subset):
                pos_a = greedy_embedding(perm, inst.a.tokens)
                if pos_a is None:
                    continue
                pos_b = greedy_embedding(perm, inst.b.tokens)
                if pos_b is None:
                    continue
                return LrcsResult(
                    size, SymbolString(inst.alphabet, perm), Alignment(tuple(zip(pos_a, pos_b)))
                )
    return LrcsResult(0, SymbolString(inst.alphabet, ()), Alignment(()))


def solve_lcs(a: SymbolString, b: SymbolString) -> tuple[int, SymbolString]:
    """Classic quadratic LCS table with a traceback (prefers skipping in ``a``)."""
    if a.alphabet != b.alphabet:
        raise UsageError("strings are over different alphabets")
    x, y = a.tokens, b.tokens
    n, m = len(x), len(y)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = dp[i], dp[i + 1]
        for j in range(m - 1, -1, -1):
            if x[i] == y[j]:
                row[j] = below[j + 1] + 1
            else:
                row[j] = max(below[j], row[j + 1])
    out = []
    i = j = 0
    while i < n and j < m:
        if x[i] == y[j]:
            out.append(x[i])
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return dp[0][0], SymbolString(a.alphabet, tuple(out))
