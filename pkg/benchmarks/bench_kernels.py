"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]``.
Each row times one kernel on a batch of seeded random matrices, checks
that both kernel sets return the same answer, and reports the speedup.
"""
from __future__ import annotations

import argparse
import random
import timeit

from tenscat.linalg import kernels

SIZES = (8, 16, 32)


def _matrices(rng: random.Random, n: int, count: int, bound: int) -> list[list[list[int]]]:
    return [[[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)] for _ in range(count)]


def _workloads(seed: int):
    rng = random.Random(seed)
    for n in SIZES:
        ints = _matrices(rng, n, 10, 9)
        yield f"rref_int {n}x{n}", lambda ms=ints, n=n: [kernels.rref_int(m, n) for m in ms]
        yield f"rref_modp {n}x{n} p=10007", lambda ms=ints, n=n: [kernels.rref_modp(m, n, 10007) for m in ms]
        small = _matrices(rng, n, 10, 3)
        yield f"smith {n}x{n}", lambda ms=small, n=n: [kernels.smith_normal_form(m, n, n) for m in ms]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if "compiled" not in kernels.available():
        print("compiled kernels are not built; only the Python timings are meaningful")
    previous = kernels.active()
    print(f"{'workload':<26}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    try:
        for label, work in _workloads(args.seed):
            timings, results = {}, {}
            for name in kernels.available():
                kernels.use(name)
                results[name] = work()
                timings[name] = min(timeit.repeat(work, number=1, repeat=args.repeat)) * 1e3
            if len(results) == 2 and results["python"] != results["compiled"]:
                raise SystemExit(f"{label}: kernel sets disagree")
            comp = timings.get("compiled")
            speed = f"{timings['python'] / comp:9.1f}x" if comp else "      n/a"
            comp_s = f"{comp:14.2f}" if comp else f"{'n/a':>14}"
            print(f"{label:<26}{timings['python']:12.2f}{comp_s}{speed:>10}")
    finally:
        kernels.use(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
