"""Pure-Python scan kernels.

Fallback twins of the compiled routines in _fastscan.pyx: identical
signatures and results, selected at import time by witnesslab.scans when
the extension is unavailable (or WITNESSLAB_PURE is set).
"""

from __future__ import annotations


def exists_square_sum(a: int, b: int, m: int, squares: bytes) -> bool:
    """True iff a + b*t**2 is congruent to a square mod m for some t.

    `squares` is a length-m table with squares[r] nonzero iff r is a square
    residue mod m.  Scanning t up to m//2 suffices: t and m-t square alike.
    """
    a %= m
    b %= m
    for t in range(m // 2 + 1):
        if squares[(a + b * t * t) % m]:
            return True
    return False


def first_tractable_violation(table: bytes, n: int) -> int:
    """First violating 6-tuple over an n-class local symbol table, or -1.

    table is flat n*n with table[i*n+j] = 1 iff the symbol of the i-th and
    j-th class representatives is +1 (split).  A violation is a tuple
    (a1,a2,a3,b1,b2,b3) of class indices whose six cross symbols split
    while all three diagonal symbols are -1.  Tuples are ordered
    lexicographically; the return value is the flat base-n index.
    """
    rng = range(n)
    for i1 in rng:
        r1 = table[i1 * n : i1 * n + n]
        for i2 in rng:
            r2 = table[i2 * n : i2 * n + n]
            for i3 in rng:
                r3 = table[i3 * n : i3 * n + n]
                for j1 in rng:
                    if r1[j1] or not r2[j1] or not r3[j1]:
                        continue
                    for j2 in rng:
                        if r2[j2] or not r1[j2] or not r3[j2]:
                            continue
                        for j3 in rng:
                            if r3[j3] or not r1[j3] or not r2[j3]:
                                continue
                            return ((((i1 * n + i2) * n + i3) * n + j1) * n + j2) * n + j3
    return -1
