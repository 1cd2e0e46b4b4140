"""Common Permutation and restricted common subsequence tools.

Exact solvers with brute-force oracles, two 3SAT reductions with witness
translation, and a harness that checks the reductions on small formulas.
"""

__version__ = "0.1.0"

from commonperm.core import (
    Alignment,
    Alphabet,
    CnfFormula,
    CpInstance,
    SymbolString,
    TruthAssignment,
    UsageError,
    Verdict,
    is_permutation_of_alphabet,
    is_subsequence,
    occurrence_counts,
    verify_alignment,
)
from commonperm.solver import (
    Budget,
    BudgetExceeded,
    LrcsResult,
    SolveReport,
    solve_cp_bruteforce,
    solve_cp_exact,
    solve_lcs,
    solve_lrcs_bruteforce,
    solve_lrcs_exact,
)
