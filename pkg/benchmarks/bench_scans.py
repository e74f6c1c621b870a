"""Benchmark the compiled scan kernels against the pure-Python twins.

Runs the two hot workloads through both backends and prints a comparison
table:

* congruence scans: the Hilbert-symbol oracle's inner loop, on the
  squarefree grid |a|,|b| <= 30 at p in {23, 47} (moduli p^3), including
  the expensive full-miss scans where no solution exists;
* tractability scan: the exhaustive 8^6 sweep over the dyadic square
  classes.

Usage: python benchmarks/bench_scans.py [--quick]
"""

from __future__ import annotations

import sys
import time

from witnesslab import _scan_py
from witnesslab.arith import is_squarefree
from witnesslab.brauer import hilbert
from witnesslab.places import DYADIC, square_classes

try:
    from witnesslab import _fastscan
except ImportError:
    _fastscan = None


def squares_table(m: int) -> bytes:
    table = bytearray(m)
    for t in range(m // 2 + 1):
        table[t * t % m] = 1
    return bytes(table)


def congruence_workload(primes, bound):
    work = []
    for p in primes:
        # units plus multiples of p: the ramified pairs force full-miss scans
        units = [s for n in range(1, bound + 1) if is_squarefree(n) for s in (n, -n)]
        mults = [s * p for s in units[: bound // 2]]
        values = units + mults
        m = p**3
        sq = squares_table(m)
        for a in values:
            for b in values:
                work.append((a % m, b % m, m, sq))
    return work


def run_congruence(kernel, work):
    t0 = time.perf_counter()
    hits = 0
    for a, b, m, sq in work:
        if kernel.exists_square_sum(a, b, m, sq) or kernel.exists_square_sum(b, a, m, sq):
            hits += 1
    return time.perf_counter() - t0, hits


def dyadic_table():
    reps = square_classes(DYADIC)
    n = len(reps)
    table = bytearray(n * n)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i * n + j] = 1 if hilbert(x, y, DYADIC) == 1 else 0
    return bytes(table), n


def run_tractable(kernel, table, n, repeats):
    t0 = time.perf_counter()
    idx = -2
    for _ in range(repeats):
        idx = kernel.first_tractable_violation(table, n)
    return time.perf_counter() - t0, idx


def main() -> int:
    quick = "--quick" in sys.argv
    primes = (23,) if quick else (23, 47)
    bound = 15 if quick else 30
    repeats = 3 if quick else 10

    backends = [("python", _scan_py)]
    if _fastscan is not None:
        backends.append(("cython", _fastscan))
    else:
        print("compiled extension not available; timing the pure backend only")

    work = congruence_workload(primes, bound)
    table, n = dyadic_table()

    print(f"congruence scans: {len(work)} symbol decisions at p in {primes}")
    print(f"tractability scan: 8^6 dyadic sweep x {repeats}")
    print()
    print(f"{'backend':<8} {'congruence':>12} {'tractable':>12}")
    results = {}
    for name, kernel in backends:
        t_cong, hits = run_congruence(kernel, work)
        t_tr, idx = run_tractable(kernel, table, n, repeats)
        results[name] = (t_cong, t_tr, hits, idx)
        print(f"{name:<8} {t_cong:>11.2f}s {t_tr:>11.2f}s")
    if len(results) == 2:
        pc, pt, ph, pi = results["python"]
        cc, ct, ch, ci = results["cython"]
        if (ph, pi) != (ch, ci):
            print("BACKENDS DISAGREE", (ph, pi), (ch, ci))
            return 1
        print()
        print(f"speedup: congruence x{pc / cc:.1f}, tractable x{pt / ct:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
