# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels: hot loops behind witnesslab.scans.

Semantics must match _scan_py exactly; the test suite asserts agreement.
"""


def exists_square_sum(long long a, long long b, long long m, const unsigned char[::1] squares):
    """True iff a + b*t**2 is congruent to a square mod m for some t."""
    cdef long long t, v, half
    a %= m
    b %= m
    if a < 0:
        a += m
    if b < 0:
        b += m
    half = m // 2
    for t in range(half + 1):
        v = (a + b * t * t) % m
        if squares[v]:
            return True
    return False


def first_tractable_violation(const unsigned char[::1] table, int n):
    """First violating 6-tuple index over an n-class symbol table, or -1."""
    cdef int i1, i2, i3, j1, j2, j3
    cdef const unsigned char *t = &table[0]
    cdef const unsigned char *r1
    cdef const unsigned char *r2
    cdef const unsigned char *r3
    for i1 in range(n):
        r1 = t + i1 * n
        for i2 in range(n):
            r2 = t + i2 * n
            for i3 in range(n):
                r3 = t + i3 * n
                for j1 in range(n):
                    if r1[j1] or not r2[j1] or not r3[j1]:
                        continue
                    for j2 in range(n):
                        if r2[j2] or not r1[j2] or not r3[j2]:
                            continue
                        for j3 in range(n):
                            if r3[j3] or not r1[j3] or not r2[j3]:
                                continue
                            return ((((i1 * n + i2) * n + i3) * n + j1) * n + j2) * n + j3
    return -1
