"""Seeded, platform-independent instance generators built on splitmix64."""

from __future__ import annotations

import string

from commonperm.core import Alphabet, CnfFormula, CpInstance, SymbolString, UsageError

MASK64 = (1 << 64) - 1


class Rng:
    """splitmix64. All arithmetic wraps at 64 bits."""

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """``next() mod n``; the tiny modulo bias is accepted for reproducibility."""
        return self.next() % n


def gen_random_3sat(n_vars: int, n_clauses: int, seed: int) -> CnfFormula:
    """Per clause: three distinct variables by rejection, then one polarity bit each.

    A set least significant bit makes the literal positive.
    """
    if n_vars < 3:
        raise UsageError("need at least 3 variables for 3SAT clauses")
    if n_clauses < 0:
        raise UsageError("clause count must be non-negative")
    rng = Rng(seed)
    clauses = []
    for _ in range(n_clauses):
        vars_: list[int] = []
        while len(vars_) < 3:
            v = rng.below(n_vars) + 1
            if v not in vars_:
                vars_.append(v)
        clauses.append(tuple(v if rng.next() & 1 else -v for v in vars_))
    return CnfFormula(n_vars, tuple(clauses))


def symbol_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"s{n}" for n in range(k))


def gen_random_cp(alphabet_size: int, len_a: int, len_b: int, max_occ: int, seed: int) -> CpInstance:
    """Uniform symbol draws, redrawing any symbol already used ``max_occ`` times.

    ``a`` is drawn first, then ``b``, from one generator. Symbols are named
    ``a``..``z`` for alphabets up to 26 symbols and ``s0``, ``s1``, ... beyond.
    """
    if alphabet_size < 0 or len_a < 0 or len_b < 0:
        raise UsageError("sizes must be non-negative")
    cap = max_occ * alphabet_size
    if len_a > cap or len_b > cap:
        raise UsageError(f"cannot place {max(len_a, len_b)} tokens with {alphabet_size} symbols x {max_occ}")
    alphabet = Alphabet(symbol_names(alphabet_size))
    rng = Rng(seed)
    strings = []
    for length in (len_a, len_b):
        counts = [0] * alphabet_size
        tokens = []
        while len(tokens) < length:
            x = rng.below(alphabet_size)
            if counts[x] < max_occ:
                counts[x] += 1
                tokens.append(x)
        strings.append(SymbolString(alphabet, tuple(tokens)))
    return CpInstance(alphabet, strings[0], strings[1])


def harness_cp_instance(seed: int, max_symbols: int = 7, max_len: int = 12) -> CpInstance:
    """Random CP instance with its shape also drawn from ``seed``.

    Shapes are biased toward yes-instances: both strings get at least one
    slot per symbol when the cap allows it.
    """
    rng = Rng(seed ^ 0x5EED)
    k = 1 + rng.below(max_symbols)
    max_occ = 1 + rng.below(3)
    top = min(max_len, k * max_occ)

    def length() -> int:
        if top < k or rng.below(4) == 0:
            return rng.below(top + 1)
        return k + rng.below(top - k + 1)

    len_a = length()
    len_b = length()
    return gen_random_cp(k, len_a, len_b, max_occ, seed)


def harness_formula(seed: int, max_vars: int = 6, max_clauses: int = 3) -> CnfFormula:
    """Random 3SAT formula whose variable and clause counts also come from ``seed``."""
    if max_vars < 3:
        raise UsageError("max_vars must be at least 3")
    rng = Rng(seed)
    n_vars = 3 + rng.below(max_vars - 2)
    n_clauses = rng.below(max_clauses + 1)
    return gen_random_3sat(n_vars, n_clauses, rng.next())
