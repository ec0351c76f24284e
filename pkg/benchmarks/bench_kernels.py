"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000 4000 16000] [--repeats 5]

Inputs are random HFO_5 permutations built by point inflation, so every
kernel runs to completion instead of rejecting early.
"""

from __future__ import annotations

import argparse
import random
import timeit

from hfok import kernels
from hfok.perm import Permutation

LABELS = [(1, 2), (2, 1), (4, 1, 3, 5, 2), (2, 5, 3, 1, 4)]


def inflated(n: int, rng: random.Random) -> list[int]:
    p = [1]
    while len(p) < n:
        sigma = rng.choice([s for s in LABELS if len(p) + len(s) - 1 <= n])
        i = rng.randrange(len(p))
        v = p[i]
        grow = len(sigma) - 1
        p = [x + grow if x > v else x for x in p]
        p[i:i + 1] = [v + s - 1 for s in sigma]
    return p


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 4000, 16000])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    rng = random.Random(args.seed)
    inputs = {n: inflated(n, rng) for n in args.sizes}
    tuples = {n: tuple(Permutation(p)) for n, p in inputs.items()}
    calls = {
        "is_baxter": lambda m, p: m.is_baxter(p),
        "hfo_scan(k=5)": lambda m, p: m.hfo_scan(p, 5),
        "min_k_scan": lambda m, p: m.min_k_scan(p),
    }
    print(f"backends: {', '.join(sorted(backends))}  (default: {kernels.BACKEND})")
    header = f"{'kernel':<15}{'n':>8}" + "".join(f"{b + ' ms':>14}" for b in sorted(backends))
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for name, call in calls.items():
        for n, p in tuples.items():
            row = {}
            for b, mod in sorted(backends.items()):
                number = 3 if b == "python" else 50
                t = min(timeit.repeat(lambda: call(mod, p), number=number, repeat=args.repeats)) / number
                row[b] = t
            line = f"{name:<15}{n:>8}" + "".join(f"{row[b] * 1e3:>14.3f}" for b in sorted(row))
            if "python" in row and "cython" in row:
                line += f"{row['python'] / row['cython']:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()
