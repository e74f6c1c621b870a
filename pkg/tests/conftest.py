"""Shared test helpers: canonical input pools and the explicit-splitting
Witt oracle used to cross-check the invariant-level engine."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from witnesslab.arith import is_squarefree, squarefree_part
from witnesslab.brauer import QuaternionAlgebra, ram_set
from witnesslab.oracle import SearchBudget, isotropy_search
from witnesslab.quadform import DiagonalForm

SEED = 20260809


def squarefree_values(bound: int) -> list[int]:
    """All squarefree values s with 1 <= |s| <= bound, sorted by |s|, positive first."""
    out = []
    for n in range(1, bound + 1):
        if is_squarefree(n):
            out.append(n)
            out.append(-n)
    return out


def division_pool(bound: int) -> list[QuaternionAlgebra]:
    pool = []
    for a in squarefree_values(bound):
        for b in squarefree_values(bound):
            d = QuaternionAlgebra(a, b)
            if not ram_set(d).is_empty:
                pool.append(d)
    return pool


def division_classes(bound: int) -> list[QuaternionAlgebra]:
    """One representative per isomorphism class among slots up to |bound|."""
    seen = {}
    for d in division_pool(bound):
        key = ram_set(d).places
        if key not in seen:
            seen[key] = d
    return [seen[k] for k in sorted(seen, key=lambda places: [v.sort_key() for v in places])]


# ---------------------------------------------------------------------------
# explicit-splitting Witt oracle (independent of the invariant engine)


def _bilinear(entries, x, y) -> Fraction:
    return sum((Fraction(a) * xi * yi for a, xi, yi in zip(entries, x, y)), Fraction(0))


def _diagonalize_gram(gram: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal entries of a symmetric matrix via congruence transformations."""
    m = [row[:] for row in gram]
    n = len(m)
    if n == 0:
        return []
    pivot = next((i for i in range(n) if m[i][i] != 0), None)
    if pivot is None:
        i, j = next(
            (i, j) for i in range(n) for j in range(n) if i != j and m[i][j] != 0
        )
        # basis change b_i += b_j makes the diagonal entry 2*m[i][j] != 0
        for k in range(n):
            m[i][k] += m[j][k]
        for k in range(n):
            m[k][i] += m[k][j]
        pivot = i
    d = m[pivot][pivot]
    others = [k for k in range(n) if k != pivot]
    reduced = []
    for r in others:
        cr = m[r][pivot] / d
        row = []
        for c in others:
            row.append(m[r][c] - cr * m[pivot][c])
        reduced.append(row)
    return [d] + _diagonalize_gram(reduced)


def split_hyperbolic_plane(entries: tuple[int, ...], witness) -> tuple[int, ...]:
    """Diagonal entries of the orthogonal complement of the hyperbolic plane
    spanned by an isotropic vector and a non-orthogonal partner."""
    n = len(entries)
    v = [Fraction(x) for x in witness]
    k = next(i for i in range(n) if entries[i] * v[i] != 0)
    u = [Fraction(0)] * n
    u[k] = Fraction(1)
    c = _bilinear(entries, v, u)
    d = _bilinear(entries, u, u)
    assert c != 0 and _bilinear(entries, v, v) == 0
    # projection onto span(v,u) with Gram [[0,c],[c,d]]
    det = -c * c
    raw = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        bv = _bilinear(entries, v, e)
        bu = _bilinear(entries, u, e)
        alpha = (d * bv - c * bu) / det
        beta = (-c * bv) / det
        w = [e[t] - alpha * v[t] - beta * u[t] for t in range(n)]
        raw.append(w)
    # pick n-2 independent rows by Gaussian elimination
    basis = []
    echelon = []
    for w in raw:
        r = w[:]
        for piv in echelon:
            lead = next(i for i in range(n) if piv[i] != 0)
            if r[lead] != 0:
                factor = r[lead] / piv[lead]
                r = [ri - factor * pi for ri, pi in zip(r, piv)]
        if any(r):
            echelon.append(r)
            basis.append(w)
        if len(basis) == n - 2:
            break
    assert len(basis) == n - 2
    gram = [[_bilinear(entries, bi, bj) for bj in basis] for bi in basis]
    diag = _diagonalize_gram(gram)
    assert all(x != 0 for x in diag)
    return tuple(squarefree_part(x) for x in diag)


def oracle_witt_index(form: DiagonalForm, height: int = 1000) -> int:
    """Witt index by explicit stripping: find an integer isotropic vector,
    split off the plane containing it, recurse; dim 2 is decided exactly."""
    current = tuple(squarefree_part(e) for e in form.entries)
    count = 0
    while len(current) >= 2:
        if len(current) == 2:
            prod = -current[0] * current[1]
            if prod > 0 and math.isqrt(prod) ** 2 == prod:
                count += 1
            break
        w = isotropy_search(DiagonalForm(tuple(Fraction(x) for x in current)), SearchBudget(height=height))
        if w is None:
            break
        current = split_hyperbolic_plane(current, w)
        count += 1
    return count


@pytest.fixture
def rng():
    import random

    return random.Random(SEED)
