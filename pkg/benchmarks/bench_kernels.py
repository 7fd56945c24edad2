#!/usr/bin/env python3
"""Benchmark the compiled word kernels against the pure-Python fallback.

Times the three hot primitives (weight, b-boundedness, range compare) on
layered words of increasing length, plus the end-to-end witness pipeline
of one bound configuration. Run from the repository root:

    python benchmarks/bench_kernels.py [--sizes 1000,10000] [--repeat 5]
"""

import argparse
import random
import time
from fractions import Fraction

from orelab import _wordpure
from orelab.wordgen import _base_word, arithmetic_bounds, random_valid_word
from orelab.words import compute_bounds, decreasing_witness

try:
    from orelab import _wordcore
except ImportError:
    _wordcore = None


def timeit(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_primitives(sizes, repeat):
    rows = []
    for n in sizes:
        letters = _base_word(n)
        prefix = tuple(range(2, n + 2))
        cases = [
            ("weight", lambda m: m.weight_letters(letters)),
            ("b_bounded", lambda m: m.b_bounded_letters(letters, prefix, True)),
            ("compare_ranges", lambda m: m.compare_ranges(letters, 0, n // 2, n // 4, n)),
        ]
        for name, call in cases:
            pure = timeit(lambda: call(_wordpure), repeat)
            if _wordcore is not None:
                comp = timeit(lambda: call(_wordcore), repeat)
                assert call(_wordcore) == call(_wordpure)
            else:
                comp = None
            rows.append((name, n, pure, comp))
    return rows


def bench_pipeline(repeat):
    """Sample-and-witness loop of the (d=2, k=1, eps=1) configuration."""
    b = arithmetic_bounds(2048)
    res = compute_bounds(2, b, 1, Fraction(1))
    b = arithmetic_bounds(max(res.N, 2048))

    def run():
        rng = random.Random(9)
        for _ in range(10):
            u = random_valid_word(res.N, 1, rng)
            decreasing_witness(u, 2, b, 1, Fraction(1), bounds=res)

    return res.N, timeit(run, repeat)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1000,10000,50000")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backend = "compiled+pure" if _wordcore is not None else "pure only (extension not built)"
    print(f"kernels available: {backend}")
    print(f"{'primitive':<16}{'n':>8}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>9}")
    for name, n, pure, comp in bench_primitives(sizes, args.repeat):
        if comp is None:
            print(f"{name:<16}{n:>8}{pure * 1e3:>12.3f}{'-':>15}{'-':>9}")
        else:
            print(f"{name:<16}{n:>8}{pure * 1e3:>12.3f}{comp * 1e3:>15.3f}"
                  f"{pure / comp:>9.1f}x")

    n, dt = bench_pipeline(max(1, args.repeat // 2))
    print(f"\nwitness pipeline (10 words of length {n}, current backend): {dt * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
