#!/usr/bin/env python3
"""Timing comparison of the stabilizer-pair counting backends.

The double sum over two Young subgroups is the engine's hot loop.  It has a
compiled (Cython) kernel and a pure-Python fallback; both produce identical
class counts.  This script times each backend over growing pair counts.

Usage: python3 benchmarks/bench_kernel.py [--full] [--pure-cap N]
  --full       run the pure backend on every case, however slow
  --pure-cap   skip the pure backend above this many pairs (default 2e6)
"""
import argparse
import time

from haarmoments import weingarten

CASES = [
    ("single column p=4", (1,) * 4, (1,) * 4, (1, 2, 3, 0)),
    ("single column p=5", (1,) * 5, (1,) * 5, (1, 2, 3, 4, 0)),
    ("two blocks p=8", (1,) * 4 + (2,) * 4, (1,) * 4 + (2,) * 4,
     (0, 1, 2, 3, 4, 5, 6, 7)),
    ("single column p=6", (1,) * 6, (1,) * 6, tuple(range(6))),
    ("two-column Z(3,3,3)", (1,) * 3 + (2,) * 6, (1,) * 6 + (2,) * 3,
     (6, 7, 8, 0, 1, 2, 3, 4, 5)),
    ("single column p=7", (1,) * 7, (1,) * 7, tuple(range(7))),
]


def run_case(I, J, Q, use_kernel):
    saved = weingarten._kernel
    if not use_kernel:
        weingarten._kernel = None
    try:
        start = time.perf_counter()
        counts = weingarten._class_counts_cached.__wrapped__(I, J, Q)
        return dict(counts), time.perf_counter() - start
    finally:
        weingarten._kernel = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true")
    ap.add_argument("--pure-cap", type=float, default=2e6)
    args = ap.parse_args()

    have_kernel = weingarten._kernel is not None
    print(f"compiled kernel available: {have_kernel}")
    header = f"{'case':24} {'pairs':>12} {'compiled':>10} {'pure':>10} {'ratio':>7}"
    print(header)
    print("-" * len(header))

    from haarmoments.stabilizer import stabilizer
    for label, I, J, Q in CASES:
        pairs = stabilizer(I).order * stabilizer(J).order
        fast_s = pure_s = None
        fast_counts = pure_counts = None
        if have_kernel:
            fast_counts, fast_s = run_case(I, J, Q, use_kernel=True)
        if args.full or pairs <= args.pure_cap:
            pure_counts, pure_s = run_case(I, J, Q, use_kernel=False)
        if fast_counts is not None and pure_counts is not None:
            assert fast_counts == pure_counts, f"backend mismatch on {label}"
        ratio = (f"{pure_s / fast_s:7.1f}x"
                 if fast_s and pure_s else "      -")
        fmt = lambda s: f"{s:9.3f}s" if s is not None else "         -"
        print(f"{label:24} {pairs:>12,} {fmt(fast_s)} {fmt(pure_s)} {ratio}")


if __name__ == "__main__":
    main()
