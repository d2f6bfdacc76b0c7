"""Compare the compiled and pure-Python search kernels on exact-number problems.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

from gowers_lab import kernels, verifier

CASES = [
    # (kind, k, d, m, r, n)
    ("MT", 1, 1, 2, 2, 4),
    ("MT", 1, 1, 2, 2, 5),
    ("G", 1, 1, 2, 2, 5),
    ("G_PM", 1, 1, 1, 2, 2),
    ("G_PM", 1, 1, 1, 3, 3),
    ("MG_PM", 1, 1, 1, 2, 2),
    ("MT", 2, 2, 3, 2, 5),
]


def bench(problem, r, backend, repeat):
    compiled = problem.compile()
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.search_bad_coloring(problem, r, backend=backend, compiled=compiled)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    header = f"{'case':<26}{'elems':>7}{'cands':>8}{'nodes':>10}" + "".join(f"{b + ' s':>12}" for b in backends)
    if "compiled" in backends:
        header += f"{'speedup':>9}"
    print(header)
    for kind, k, d, m, r, n in CASES:
        problem = verifier.build_problem(kind, k, d, m, n)
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = bench(problem, r, b, args.repeat)
        statuses = {res[0] for res in results.values()}
        if len(statuses) != 1:
            raise SystemExit(f"backends disagree on {kind}{(k, d, m, r, n)}: {results}")
        label = f"{kind}(k={k},d={d},m={m},r={r}) n={n}"
        row = f"{label:<26}{problem.n_elems:>7}{len(problem.candidates):>8}{results[backends[0]][2]:>10}"
        row += "".join(f"{times[b]:>12.4f}" for b in backends)
        if "compiled" in backends:
            row += f"{times['python'] / max(times['compiled'], 1e-9):>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
