"""Text formats: DIMACS CNF, CP instances, alignments and symbol tables.

All serializers emit UTF-8 text with ``\\n`` line endings. Positions in
alignment files are 1-based.
"""

from __future__ import annotations

import re
from typing import Iterator

from commonperm.core import (
    Alignment,
    Alphabet,
    CnfFormula,
    CpInstance,
    SymbolString,
    UsageError,
)

_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based."""

    def __init__(self, line: int, column: int, message: str, token: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.token = token
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}"
        if self.token:
            return f"{where}: {self.message} (at {self.token!r})"
        return f"{where}: {self.message}"


def _tokens(line: str) -> Iterator[tuple[int, str]]:
    for m in _TOKEN.finditer(line):
        yield m.start() + 1, m.group()


# --- DIMACS -----------------------------------------------------------------


def parse_dimacs(text: str) -> CnfFormula:
    """Parse strict DIMACS 3-CNF.

    Clauses may span lines. A ``%`` line (SATLIB style) ends the clause data.
    """
    header: tuple[int, int] | None = None
    clauses: list[tuple[int, int, int]] = []
    current: list[tuple[int, int, int, str]] = []  # (literal, line, column, token)
    last = (1, 1)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = list(_tokens(raw))
            if header is not None:
                raise ParseError(lineno, parts[0][0], "duplicate problem line", line)
            if len(parts) != 4 or parts[0][1] != "p" or parts[1][1] != "cnf":
                raise ParseError(lineno, parts[0][0], "expected 'p cnf <vars> <clauses>'", line)
            try:
                n_vars, n_clauses = int(parts[2][1]), int(parts[3][1])
            except ValueError:
                raise ParseError(lineno, parts[2][0], "header counts must be integers", line) from None
            if n_vars < 0 or n_clauses < 0:
                raise ParseError(lineno, parts[2][0], "header counts must be non-negative", line)
            header = (n_vars, n_clauses)
            continue
        for col, tok in _tokens(raw):
            last = (lineno, col)
            if header is None:
                raise ParseError(lineno, col, "clause data before problem line", tok)
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(lineno, col, "expected an integer literal", tok) from None
            if lit != 0:
                if abs(lit) > header[0]:
                    raise ParseError(lineno, col, f"variable out of range 1..{header[0]}", tok)
                current.append((lit, lineno, col, tok))
                continue
            if len(current) != 3:
                raise ParseError(lineno, col, f"not 3SAT: clause has {len(current)} literals", tok)
            seen: set[int] = set()
            for l, ln, cl, t in current:
                if abs(l) in seen:
                    raise ParseError(ln, cl, "variable repeated within clause", t)
                seen.add(abs(l))
            clauses.append((current[0][0], current[1][0], current[2][0]))
            current = []
    if header is None:
        raise ParseError(1, 1, "missing problem line")
    if current:
        lit, ln, cl, tok = current[-1]
        raise ParseError(ln, cl, "clause not terminated by 0", tok)
    if len(clauses) != header[1]:
        raise ParseError(last[0], last[1], f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def serialize_dimacs(formula: CnfFormula, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.n_vars} {len(formula.clauses)}")
    lines += [" ".join(str(l) for l in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


# --- CP instances -------------------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [(n, ln.rstrip("\r")) for n, ln in enumerate(lines, start=1) if not ln.startswith("#")]


def parse_cp_instance(text: str) -> CpInstance:
    """Three content lines: alphabet tokens, tokens of a, tokens of b.

    When every alphabet symbol is a single character, a string line holding
    one unknown token is read character by character (``bcaba``).
    """
    lines = _content_lines(text)
    names = ("alphabet", "string a", "string b")
    if len(lines) < 3:
        where = lines[-1][0] + 1 if lines else 1
        raise ParseError(where, 1, f"missing {names[len(lines)]} line")
    for lineno, extra in lines[3:]:
        if extra.strip():
            raise ParseError(lineno, 1, "unexpected content after string b", extra.strip())

    lineno, alpha_line = lines[0]
    symbols: list[str] = []
    seen: set[str] = set()
    for col, tok in _tokens(alpha_line):
        if tok in seen:
            raise ParseError(lineno, col, "duplicate alphabet symbol", tok)
        seen.add(tok)
        symbols.append(tok)
    alphabet = Alphabet(tuple(symbols))
    single_chars = bool(symbols) and all(len(s) == 1 for s in symbols)

    strings = []
    for lineno, line in lines[1:3]:
        toks = list(_tokens(line))
        if single_chars and len(toks) == 1 and toks[0][1] not in alphabet:
            col0, word = toks[0]
            toks = [(col0 + n, ch) for n, ch in enumerate(word)]
        ids = []
        for col, tok in toks:
            if tok not in alphabet:
                raise ParseError(lineno, col, "token not in alphabet", tok)
            ids.append(alphabet.id_of(tok))
        strings.append(SymbolString(alphabet, tuple(ids)))
    return CpInstance(alphabet, strings[0], strings[1])


def serialize_cp_instance(inst: CpInstance, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [" ".join(inst.alphabet.symbols), str(inst.a), str(inst.b)]
    return "\n".join(lines) + "\n"


# --- alignments -----------------------------------------------------------------


def render_alignment(al: Alignment, inst: CpInstance) -> tuple[str, str]:
    """Two rows with aligned occurrences in brackets, aligned pairs stacked."""
    names = inst.alphabet.symbols
    cols: list[tuple[str, str]] = []
    pi = pj = 0
    for i, j in list(al.pairs) + [(len(inst.a), len(inst.b))]:
        cols += [(names[inst.a[p]], "") for p in range(pi, i)]
        cols += [("", names[inst.b[p]]) for p in range(pj, j)]
        if i < len(inst.a):
            cols.append((f"[{names[inst.a[i]]}]", f"[{names[inst.b[j]]}]"))
        pi, pj = i + 1, j + 1
    widths = [max(len(x), len(y)) for x, y in cols]
    row_a = " ".join(x.ljust(w) for (x, _), w in zip(cols, widths)).rstrip()
    row_b = " ".join(y.ljust(w) for (_, y), w in zip(cols, widths)).rstrip()
    return row_a, row_b


def serialize_alignment(al: Alignment, inst: CpInstance | None = None, render: bool = False) -> str:
    """One ``i:j`` line per pair (1-based); the optional rendering is commented out."""
    lines = [f"{i + 1}:{j + 1}" for i, j in al.pairs]
    if render:
        if inst is None:
            raise UsageError("rendering needs the instance")
        row_a, row_b = render_alignment(al, inst)
        lines += ["#", f"# a: {row_a}", f"# b: {row_b}"]
    return "".join(line + "\n" for line in lines)


def parse_alignment(text: str) -> Alignment:
    """Read ``i:j`` lines. A leading ``yes`` line (``solve --witness`` output) is skipped."""
    pairs = []
    first = True
    for lineno, line in _content_lines(text):
        stripped = line.strip()
        if not stripped:
            continue
        if first and stripped == "yes":
            first = False
            continue
        first = False
        m = re.fullmatch(r"(-?\d+):(-?\d+)", stripped)
        if m is None:
            raise ParseError(lineno, 1, "expected 'i:j'", stripped)
        i, j = int(m[1]), int(m[2])
        if i < 1 or j < 1:
            raise ParseError(lineno, 1, "positions are 1-based", stripped)
        pairs.append((i - 1, j - 1))
    return Alignment(tuple(pairs))


# --- symbol tables ----------------------------------------------------------------


def serialize_symbol_table(table) -> str:
    """Tab-separated ``id, name, role`` listing of a reduction's alphabet."""
    lines = ["# id\tsymbol\trole"]
    for sid, name in enumerate(table.alphabet.symbols):
        lines.append(f"{sid}\t{name}\t{table.describe(sid)}")
    return "\n".join(lines) + "\n"
