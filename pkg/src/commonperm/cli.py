"""Command-line interface.

Exit codes: 0 yes/success, 1 no (or a failed check), 2 usage or parse
error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import sys
import time
from pathlib import Path

from commonperm import __version__
from commonperm.core import UsageError, verify_alignment
from commonperm.gen import gen_random_3sat, gen_random_cp
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
from commonperm.oracle import random_formulas, run_trials, small_formulas
from commonperm.reduction import VARIANTS, gadget_table, reduce
from commonperm.solver import (
    BRUTE_FORCE_CP_LIMIT,
    Budget,
    BudgetExceeded,
    solve_cp_bruteforce,
    solve_cp_exact,
    solve_lcs,
    solve_lrcs_exact,
)

BENCH_HEADER = ["variant", "n_clauses", "sigma", "len_a", "len_b", "answer", "states", "millis"]


class ExitStatus(enum.IntEnum):
    YES = 0
    NO = 1
    USAGE = 2
    BUDGET = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _budget(args) -> Budget:
    return Budget(max_states=args.max_states, time_limit=args.time_limit)


def _variants(choice: str) -> tuple[str, ...]:
    return VARIANTS if choice == "both" else (choice,)


def cmd_reduce(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    out = reduce(formula, args.variant)
    sigma, len_a, len_b = out.sizes()
    comments = (f"{args.variant} reduction of {args.cnf}: {len(formula)} clauses, {formula.n_vars} variables",)
    _write(args.out, serialize_cp_instance(out.instance, comments))
    if args.out and args.out != "-":
        Path(args.out + ".symbols").write_text(serialize_symbol_table(out.table), encoding="utf-8", newline="\n")
    payload = {"variant": args.variant, "sigma": sigma, "len_a": len_a, "len_b": len_b}
    if args.json:
        print(json.dumps(payload, sort_keys=True), file=sys.stdout if args.out else sys.stderr)
    else:
        print(f"{sigma} {len_a} {len_b}", file=sys.stdout if args.out else sys.stderr)
    return ExitStatus.YES


def cmd_solve(args) -> int:
    inst = parse_cp_instance(_read(args.instance))
    if args.mode == "cp":
        report = solve_cp_exact(inst, _budget(args), backend=args.backend)
        lines = ["yes" if report.answer else "no"]
        if args.witness and report.witness is not None:
            lines.append(serialize_alignment(report.witness, inst, render=True).rstrip("\n"))
        payload = {
            "answer": report.answer,
            "witness": [[i + 1, j + 1] for i, j in report.witness.pairs] if report.witness else None,
            "explored": report.stats.explored,
            "kept": report.stats.kept,
            "peak_frontier": report.stats.peak_frontier,
            "seconds": report.stats.elapsed,
        }
        _emit(args, payload, "\n".join(lines))
        return ExitStatus.YES if report.answer else ExitStatus.NO

    if args.mode == "lrcs":
        res = solve_lrcs_exact(inst, _budget(args), backend=args.backend)
        lines = [str(res.length)]
        if args.witness:
            lines.append(str(res.witness))
            lines.append(serialize_alignment(res.alignment).rstrip("\n"))
        payload = {"length": res.length, "witness": res.witness.names(), "explored": res.stats.explored}
    else:
        length, witness = solve_lcs(inst.a, inst.b)
        lines = [str(length)]
        if args.witness:
            lines.append(str(witness))
        payload = {"length": length, "witness": witness.names()}
    _emit(args, payload, "\n".join(l for l in lines if l))
    return ExitStatus.YES


def cmd_verify(args) -> int:
    inst = parse_cp_instance(_read(args.instance))
    al = parse_alignment(_read(args.alignment))
    verdict = verify_alignment(inst, al)
    if verdict.valid:
        row_a, row_b = render_alignment(al, inst)
        text = f"valid\n{row_a}\n{row_b}" if args.render else "valid"
    else:
        lines = ["invalid"]
        for v in verdict.violations:
            where = f"pair {v.index + 1}" if v.index >= 0 else "alignment"
            lines.append(f"{where}: {v.rule}: {v.message}")
        text = "\n".join(lines)
    payload = {
        "valid": verdict.valid,
        "violations": [{"pair": v.index + 1 if v.index >= 0 else None, "rule": v.rule, "message": v.message}
                       for v in verdict.violations],
    }
    _emit(args, payload, text)
    return ExitStatus.YES if verdict.valid else ExitStatus.NO


def cmd_gadget_check(args) -> int:
    payload = {}
    lines = []
    for variant in _variants(args.variant):
        rows = gadget_table(variant)
        payload[variant] = [{"pattern": "".join("T" if v else "F" for v in p), "alignable": ok} for p, ok in rows]
        lines.append(f"{variant}: x y z -> alignable")
        for pattern, ok in rows:
            lines.append("  " + " ".join("T" if v else "F" for v in pattern) + f" -> {'yes' if ok else 'no'}")
    _emit(args, payload, "\n".join(lines))
    expected = all(ok == any(p) for v in _variants(args.variant) for p, ok in gadget_table(v))
    return ExitStatus.YES if expected else ExitStatus.NO


def cmd_oracle(args) -> int:
    formulas = random_formulas(args.trials, args.seed, args.max_vars, args.max_clauses)
    if args.exhaustive:
        formulas = small_formulas() + formulas
    variants = _variants(args.variant)
    results = run_trials(formulas, variants, mutate=args.mutate, jobs=args.jobs)
    failed_idx = sorted({r.index for r in results if not r.ok})
    agree = len(formulas) - len(failed_idx)
    if not args.json:
        for r in results:
            if not r.ok:
                sys.stdout.write(r.reproducer)
                for p in r.problems:
                    print(f"#   {p}")
    payload = {
        "formulas": len(formulas),
        "variants": list(variants),
        "agree": agree,
        "failed": failed_idx,
        "reproducers": [r.reproducer for r in results if not r.ok],
    }
    _emit(args, payload, f"{agree}/{len(formulas)} agree")
    return ExitStatus.YES if not failed_idx else ExitStatus.NO


def cmd_gen(args) -> int:
    count = args.count
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir is None and count != 1:
        raise UsageError("--count other than 1 needs --out-dir")
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(count):
        seed = args.seed + n
        if args.kind == "3sat":
            f = gen_random_3sat(args.vars, args.clauses, seed)
            text = serialize_dimacs(f, (f"gen_random_3sat vars={args.vars} clauses={args.clauses} seed={seed}",))
            name = f"3sat_v{args.vars}_c{args.clauses}_s{seed}.cnf"
        else:
            inst = gen_random_cp(args.symbols, args.len_a, args.len_b, args.max_occ, seed)
            text = serialize_cp_instance(
                inst,
                (f"gen_random_cp symbols={args.symbols} len_a={args.len_a} len_b={args.len_b} "
                 f"max_occ={args.max_occ} seed={seed}",),
            )
            name = f"cp_k{args.symbols}_s{seed}.cp"
        if out_dir is None:
            sys.stdout.write(text)
        else:
            (out_dir / name).write_text(text, encoding="utf-8", newline="\n")
    return ExitStatus.YES


def cmd_bench(args) -> int:
    header = list(BENCH_HEADER)
    if args.brute_force:
        header += ["bf_answer", "bf_millis"]
    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(header)
        for n_clauses in range(args.min_clauses, args.max_clauses + 1):
            for rep in range(args.per_size):
                formula = gen_random_3sat(args.vars, n_clauses, args.seed + 1000 * n_clauses + rep)
                for variant in _variants(args.variant):
                    out = reduce(formula, variant)
                    sigma, len_a, len_b = out.sizes()
                    started = time.perf_counter()
                    report = solve_cp_exact(out.instance, _budget(args), backend=args.backend)
                    millis = (time.perf_counter() - started) * 1000
                    row = [variant, n_clauses, sigma, len_a, len_b,
                           "yes" if report.answer else "no", report.stats.explored, f"{millis:.3f}"]
                    if args.brute_force:
                        if sigma <= BRUTE_FORCE_CP_LIMIT:
                            started = time.perf_counter()
                            bf = solve_cp_bruteforce(out.instance)
                            row += ["yes" if bf.answer else "no", f"{(time.perf_counter() - started) * 1000:.3f}"]
                        else:
                            row += ["", ""]
                    writer.writerow(row)
    finally:
        if sink is not sys.stdout:
            sink.close()
    return ExitStatus.YES


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--max-states", type=int, default=Budget.max_states, help="kept-state budget")
    search.add_argument("--time-limit", type=float, default=None, help="wall-clock budget in seconds")
    search.add_argument("--backend", choices=["auto", "compiled", "python"], default=None)

    parser = argparse.ArgumentParser(prog="commonperm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce a DIMACS 3-CNF to a CP instance")
    p.add_argument("cnf")
    p.add_argument("--variant", choices=VARIANTS, default="theorem2")
    p.add_argument("--out", help="instance file (a .symbols sidecar is written next to it)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common, search], help="solve a CP instance")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["cp", "lrcs", "lcs"], default="cp")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check an alignment against an instance")
    p.add_argument("instance")
    p.add_argument("alignment")
    p.add_argument("--render", action="store_true", help="show the two-row picture when valid")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget-check", parents=[common], help="truth table of one isolated clause block")
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.set_defaults(func=cmd_gadget_check)

    p = sub.add_parser("oracle", parents=[common], help="3SAT vs CP agreement on seeded formulas")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vars", type=int, default=6)
    p.add_argument("--max-clauses", type=int, default=3)
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.add_argument("--exhaustive", action="store_true",
                   help="also run every formula over 3 variables with at most 2 clauses")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="emit seeded random instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("3sat")
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--clauses", type=int, required=True)
    g2 = gsub.add_parser("cp")
    g2.add_argument("--symbols", type=int, required=True)
    g2.add_argument("--len-a", type=int, required=True)
    g2.add_argument("--len-b", type=int, required=True)
    g2.add_argument("--max-occ", type=int, default=2)
    for g_ in (g, g2):
        g_.add_argument("--seed", type=int, default=0)
        g_.add_argument("--count", type=int, default=1)
        g_.add_argument("--out-dir")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common, search], help="CSV of solver effort on reduced formulas")
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.add_argument("--vars", type=int, default=6)
    p.add_argument("--min-clauses", type=int, default=0)
    p.add_argument("--max-clauses", type=int, default=8)
    p.add_argument("--per-size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--brute-force", action="store_true", help="add brute-force columns where feasible")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return int(args.func(args))
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return ExitStatus.BUDGET


if __name__ == "__main__":
    sys.exit(main())
