"""Domain types: alphabets, symbol strings, instances, alignments, CNF formulas.

Positions are 0-based everywhere in this module. Serialized forms (see
:mod:`commonperm.io`) shift them to 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class UsageError(ValueError):
    """Raised when inputs violate an operation's preconditions."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        index: dict[str, int] = {}
        for pos, name in enumerate(symbols):
            if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
                raise UsageError(f"invalid symbol name {name!r}")
            if name in index:
                raise UsageError(f"duplicate symbol {name!r}")
            index[name] = pos
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"symbol {name!r} not in alphabet") from None

    def name_of(self, sid: int) -> str:
        return self.symbols[sid]


@dataclass(frozen=True)
class SymbolString:
    """A sequence of symbol ids over a fixed alphabet."""

    alphabet: Alphabet
    tokens: tuple[int, ...]

    def __post_init__(self) -> None:
        tokens = tuple(self.tokens)
        object.__setattr__(self, "tokens", tokens)
        k = len(self.alphabet)
        for t in tokens:
            if not (0 <= t < k):
                raise UsageError(f"symbol id {t} out of range for alphabet of size {k}")

    @classmethod
    def from_names(cls, alphabet: Alphabet, names: Iterable[str]) -> SymbolString:
        return cls(alphabet, tuple(alphabet.id_of(n) for n in names))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[int]:
        return iter(self.tokens)

    def __getitem__(self, pos: int) -> int:
        return self.tokens[pos]

    def names(self) -> list[str]:
        return [self.alphabet.symbols[t] for t in self.tokens]

    def reversed(self) -> SymbolString:
        return SymbolString(self.alphabet, self.tokens[::-1])

    def __str__(self) -> str:
        return " ".join(self.names())


@dataclass(frozen=True)
class CpInstance:
    alphabet: Alphabet
    a: SymbolString
    b: SymbolString

    def __post_init__(self) -> None:
        if self.a.alphabet != self.alphabet or self.b.alphabet != self.alphabet:
            raise UsageError("instance strings must share the instance alphabet")

    @classmethod
    def from_names(
        cls, symbols: Iterable[str], a: Iterable[str], b: Iterable[str]
    ) -> CpInstance:
        """Build an instance from symbol names.

        Plain ``str`` arguments are split into characters, so
        ``CpInstance.from_names("abc", "bcaba", "babcca")`` works.
        """
        alphabet = Alphabet(tuple(symbols))
        return cls(
            alphabet,
            SymbolString.from_names(alphabet, a),
            SymbolString.from_names(alphabet, b),
        )

    def swapped(self) -> CpInstance:
        return CpInstance(self.alphabet, self.b, self.a)

    def reversed(self) -> CpInstance:
        return CpInstance(self.alphabet, self.a.reversed(), self.b.reversed())


@dataclass(frozen=True)
class Alignment:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(i), int(j)) for i, j in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def swapped(self) -> Alignment:
        return Alignment(tuple((j, i) for i, j in self.pairs))

    def reversed(self, len_a: int, len_b: int) -> Alignment:
        """Map onto the reversed strings (position p becomes len - 1 - p)."""
        return Alignment(tuple((len_a - 1 - i, len_b - 1 - j) for i, j in reversed(self.pairs)))


@dataclass(frozen=True)
class Violation:
    index: int  # pair index, or -1 for whole-alignment rules
    rule: str
    message: str


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def is_subsequence(s: SymbolString, t: SymbolString) -> bool:
    """True iff ``s`` is obtained from ``t`` by deleting tokens."""
    if s.alphabet != t.alphabet:
        raise UsageError("strings are over different alphabets")
    it = iter(t.tokens)
    return all(tok in it for tok in s.tokens)


def is_permutation_of_alphabet(s: SymbolString, alphabet: Alphabet) -> bool:
    if len(s) != len(alphabet):
        return False
    return sorted(s.tokens) == list(range(len(alphabet)))


def occurrence_counts(s: SymbolString) -> dict[int, int]:
    """Occurrences of every alphabet symbol in ``s`` (absent symbols map to 0)."""
    counts = Counter(s.tokens)
    return {sid: counts.get(sid, 0) for sid in range(len(s.alphabet))}


def verify_alignment(inst: CpInstance, al: Alignment) -> Verdict:
    """Check ``al`` against the three alignment rules.

    Bad positions are reported as ``range`` violations; they never raise.
    """
    out: list[Violation] = []
    n_a, n_b = len(inst.a), len(inst.b)
    seen: dict[int, int] = {}
    prev: tuple[int, int] | None = None
    for k, (i, j) in enumerate(al.pairs):
        in_range = True
        if not (0 <= i < n_a):
            out.append(Violation(k, "range", f"position {i} outside a (length {n_a})"))
            in_range = False
        if not (0 <= j < n_b):
            out.append(Violation(k, "range", f"position {j} outside b (length {n_b})"))
            in_range = False
        if prev is not None:
            if i <= prev[0]:
                out.append(Violation(k, "i-order", f"i={i} does not increase (previous {prev[0]})"))
            if j <= prev[1]:
                out.append(Violation(k, "j-order", f"j={j} does not increase (previous {prev[1]})"))
        prev = (i, j)
        if not in_range:
            continue
        x, y = inst.a[i], inst.b[j]
        if x != y:
            names = inst.alphabet.symbols
            out.append(Violation(k, "symbol", f"a[{i}]={names[x]} differs from b[{j}]={names[y]}"))
            continue
        if x in seen:
            out.append(
                Violation(k, "duplicate", f"symbol {inst.alphabet.symbols[x]} already aligned by pair {seen[x]}")
            )
        else:
            seen[x] = k
    missing = [name for sid, name in enumerate(inst.alphabet.symbols) if sid not in seen]
    if missing:
        shown = " ".join(missing[:10]) + (" ..." if len(missing) > 10 else "")
        out.append(Violation(-1, "coverage", f"{len(missing)} symbol(s) not aligned: {shown}"))
    return Verdict(tuple(out))


def aligned_symbols(inst: CpInstance, al: Alignment) -> SymbolString:
    """The symbol sequence read off the a-side of an alignment."""
    return SymbolString(inst.alphabet, tuple(inst.a[i] for i, _ in al.pairs))


def greedy_embedding(pattern: Sequence[int], text: Sequence[int]) -> list[int] | None:
    """Leftmost positions of ``pattern`` inside ``text``, or None."""
    out = []
    p = 0
    for tok in pattern:
        while p < len(text) and text[p] != tok:
            p += 1
        if p == len(text):
            return None
        out.append(p)
        p += 1
    return out


# --- CNF -------------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables ``1..n_vars``.

    Literals are signed ints, DIMACS style: ``v`` is positive, ``-v`` negative.
    """

    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vars < 0:
            raise UsageError("n_vars must be non-negative")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for idx, clause in enumerate(clauses, start=1):
            if len(clause) != 3:
                raise UsageError(f"clause {idx} has {len(clause)} literals, expected 3")
            vars_ = [abs(l) for l in clause]
            if any(v < 1 or v > self.n_vars for v in vars_) or 0 in clause:
                raise UsageError(f"clause {idx} uses a variable outside 1..{self.n_vars}")
            if len(set(vars_)) != 3:
                raise UsageError(f"clause {idx} repeats a variable")
        object.__setattr__(self, "clauses", clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def variables_in_use(self) -> list[int]:
        return sorted({abs(l) for c in self.clauses for l in c})


@dataclass(frozen=True)
class TruthAssignment:
    values: Mapping[int, bool]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", dict(sorted(self.values.items())))

    def __getitem__(self, var: int) -> bool:
        return self.values[var]

    def literal(self, lit: int) -> bool:
        value = self.values[abs(lit)]
        return value if lit > 0 else not value

    def is_total_for(self, formula: CnfFormula) -> bool:
        return set(self.values) == set(range(1, formula.n_vars + 1))

    def satisfies(self, formula: CnfFormula) -> bool:
        if not self.is_total_for(formula):
            return False
        return all(any(self.literal(l) for l in c) for c in formula.clauses)

    def __str__(self) -> str:
        return " ".join(f"{v}={'T' if val else 'F'}" for v, val in self.values.items())
