"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_backends.py [--repeat 3] [--csv out.csv]

Each instance is solved on both backends; the answers and state counts must
match, and the best-of-N wall time is reported for each.
"""

import argparse
import csv
import sys
import time

from commonperm import solver
from commonperm.gen import gen_random_3sat, gen_random_cp
from commonperm.oracle import complete_formula
from commonperm.reduction import reduce


def instances():
    for variant in ("theorem2", "corollary"):
        yield f"unsat-complete/{variant}", reduce(complete_formula(), variant).instance
        for n in (4, 8, 12, 16):
            f = gen_random_3sat(8, n, 100 + n)
            yield f"3sat-v8-c{n}/{variant}", reduce(f, variant).instance
    for k in (8, 12, 16, 20):
        yield f"random-cp-k{k}", gen_random_cp(k, 3 * k, 3 * k, 3, k)


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        started = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - started)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--csv")
    args = parser.parse_args(argv)
    if "compiled" not in solver.BACKENDS:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
        return 1

    rows = []
    for name, inst in instances():
        times = {}
        reports = {}
        for backend in ("compiled", "python"):
            times[backend], reports[backend] = best_of(
                lambda: solver.solve_cp_exact(inst, backend=backend), args.repeat)
        c, p = reports["compiled"], reports["python"]
        assert (c.answer, c.stats.explored, c.stats.kept) == (p.answer, p.stats.explored, p.stats.kept), name
        rows.append({
            "instance": name,
            "sigma": len(inst.alphabet),
            "answer": "yes" if c.answer else "no",
            "kept": c.stats.kept,
            "compiled_ms": f"{times['compiled'] * 1000:.2f}",
            "python_ms": f"{times['python'] * 1000:.2f}",
            "speedup": f"{times['python'] / max(times['compiled'], 1e-9):.1f}",
        })

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in rows[0]}
    print("  ".join(k.ljust(w) for k, w in widths.items()))
    for r in rows:
        print("  ".join(str(r[k]).ljust(w) for k, w in widths.items()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
