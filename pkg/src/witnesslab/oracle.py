"""Independent brute-force oracles, used only for cross-validation.

These deliberately avoid the formulas and invariants used by the main
implementations: the Hilbert symbol is decided by congruence solubility
scans, isotropy by bounded integer search, residue isotropy by exhaustive
enumeration.  They are correctness anchors, not production paths, and
share no code with the implementations they check.

hilbert_bruteforce details: a nontrivial zero of z^2 = a x^2 + b y^2 over
Z_p can be scaled primitive; with squarefree a, b a primitive zero must
have x or y a unit (otherwise p divides everything), so solubility is
equivalent to solubility with x = 1 or with y = 1.  At that normalization
a solution mod p^3 (odd p) or mod 2^8 lifts to Z_p: the relevant partial
derivative 2a (resp. 2b) has valuation at most 1 (resp. 2), so both
moduli clear the Hensel threshold with margin.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import Rational, squarefree_part
from .errors import DomainError
from .places import Place
from .quadform import DiagonalForm
from .scans import exists_square_sum

__all__ = [
    "SearchBudget",
    "DEFAULT_BUDGET",
    "hilbert_bruteforce",
    "isotropy_search",
    "residue_isotropy",
]


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the brute-force searches.

    height: max |x_i| for integer isotropy witnesses (default 1000).
    odd_exponent / dyadic_exponent: congruence precision p^3 and 2^8,
    chosen with margin above the Hensel lifting thresholds.
    """

    height: int = 1000
    odd_exponent: int = 3
    dyadic_exponent: int = 8

    def __post_init__(self) -> None:
        if self.height < 1 or self.odd_exponent < 3 or self.dyadic_exponent < 5:
            raise DomainError("budget below the soundness thresholds")


DEFAULT_BUDGET = SearchBudget()


@lru_cache(maxsize=64)
def _square_table(m: int) -> bytes:
    table = bytearray(m)
    for t in range(m // 2 + 1):
        table[t * t % m] = 1
    return bytes(table)


def hilbert_bruteforce(
    a: Rational, b: Rational, v: Place, budget: SearchBudget = DEFAULT_BUDGET
) -> int:
    """Hilbert symbol by brute force: sign analysis at the real place,
    congruence solubility scans at the finite ones."""
    if a == 0 or b == 0:
        raise DomainError("hilbert symbol needs nonzero slots")
    sa = squarefree_part(a)
    sb = squarefree_part(b)
    if v.is_real:
        return -1 if (sa < 0 and sb < 0) else 1
    p = v.p
    assert p is not None
    m = 2**budget.dyadic_exponent if p == 2 else p**budget.odd_exponent
    squares = _square_table(m)
    if exists_square_sum(sa % m, sb % m, m, squares):
        return 1
    if exists_square_sum(sb % m, sa % m, m, squares):
        return 1
    return -1


def _int_entries(q: DiagonalForm) -> tuple[int, ...]:
    """Clear denominators (scale by lcm^2) without square-class reduction."""
    ent = []
    for e in q.entries:
        if not isinstance(e, Fraction):
            raise DomainError("isotropy search works over Q")
        ent.append(e)
    lcm = 1
    for e in ent:
        lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
    return tuple(int(e * lcm * lcm) for e in ent)


_pair_cache: dict[tuple[int, int, int], np.ndarray] = {}


def _pair_values(a: int, b: int, h: int) -> np.ndarray:
    """Sorted unique values of a*x^2 + b*y^2 over 0 <= x, y <= h."""
    key = (a, b, h)
    if key in _pair_cache:
        return _pair_cache[key]
    sq = np.arange(h + 1, dtype=np.int64) ** 2
    vals = np.unique((a * sq[:, None] + b * sq[None, :]).ravel())
    if len(_pair_cache) > 256:
        _pair_cache.clear()
    _pair_cache[key] = vals
    return vals


def _single_values(a: int, h: int) -> np.ndarray:
    return np.unique(a * np.arange(h + 1, dtype=np.int64) ** 2)


def _find_single_coord(a: int, h: int, value: int) -> int | None:
    if value % a:
        return None
    q, r = divmod(value, a)
    if r or q < 0:
        return None
    x = math.isqrt(q)
    if x * x != q or x > h:
        return None
    return x


def _find_pair_coords(a: int, b: int, h: int, value: int) -> tuple[int, int] | None:
    for x in range(h + 1):
        y = _find_single_coord(b, h, value - a * x * x)
        if y is not None:
            return (x, y)
    return None


def _exhaustive_at_height(entries: tuple[int, ...], h: int) -> tuple[int, ...] | None:
    """A nontrivial zero with all coordinates in [0, h], or None if none exists.

    Meet-in-the-middle on a front/back split.  Zeros whose front half (or
    back half) vanishes identically are found by recursing on the other
    half, so only nonzero shared values need scanning.
    """
    n = len(entries)
    if n == 0 or n == 1:
        return None
    if n == 2:
        a, b = entries
        common = np.intersect1d(_single_values(a, h), _single_values(-b, h), assume_unique=True)
        for val in common:
            if val == 0:
                continue
            x = _find_single_coord(a, h, int(val))
            y = _find_single_coord(-b, h, int(val))
            if x is not None and y is not None:
                return (x, y)
        return None
    k = n // 2
    front, back = entries[:k], entries[k:]
    sub = _exhaustive_at_height(back, h)
    if sub is not None:
        return (0,) * k + sub
    sub = _exhaustive_at_height(front, h)
    if sub is not None:
        return sub + (0,) * (n - k)
    if n == 3:
        va = _single_values(front[0], h)
        vb = _pair_values(-back[0], -back[1], h)
        for val in np.intersect1d(va, vb):
            if val == 0:
                continue
            x = _find_single_coord(front[0], h, int(val))
            yz = _find_pair_coords(-back[0], -back[1], h, int(val))
            if x is not None and yz is not None:
                return (x, *yz)
        return None
    if n == 4:
        va = _pair_values(front[0], front[1], h)
        vb = _pair_values(-back[0], -back[1], h)
        for val in np.intersect1d(va, vb):
            if val == 0:
                continue
            xy = _find_pair_coords(front[0], front[1], h, int(val))
            zw = _find_pair_coords(-back[0], -back[1], h, int(val))
            if xy is not None and zw is not None:
                return (*xy, *zw)
        return None
    # dim >= 5: plain nested search at a reduced height keeps memory flat
    small = max(1, min(h, int(round(3_000_000 ** (1.0 / n)))))
    for vec in itertools.product(range(small + 1), repeat=n):
        if any(vec) and sum(a * x * x for a, x in zip(entries, vec)) == 0:
            return vec
    return None


def isotropy_search(
    q: DiagonalForm, budget: SearchBudget = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """A nonzero integer witness of sum a_i x_i^2 = 0 with max |x_i| <= height, or None.

    Escalating exhaustive passes (heights 10, 100, ..., budget.height) so
    isotropic forms report small witnesses quickly; a None answer means
    the full search up to the height bound found nothing.
    """
    entries = _int_entries(q)
    if not entries:
        return None
    heights = [h for h in (10, 100) if h < budget.height] + [budget.height]
    for h in heights:
        hit = _exhaustive_at_height(entries, h)
        if hit is not None:
            return hit
    return None


def residue_isotropy(entries: tuple[int, ...], p: int) -> tuple[int, ...] | None:
    """Lexicographically least nontrivial zero of a diagonal form over F_p, or None.

    Exhaustive over the finite field, hence authoritative: a None answer
    proves the residue form anisotropic.
    """
    if p < 3 or p % 2 == 0:
        raise DomainError("odd prime required")
    red = tuple(e % p for e in entries)
    if any(e == 0 for e in red):
        raise DomainError("entries must be nonzero mod p")
    for vec in itertools.product(range(p), repeat=len(red)):
        if not any(vec):
            continue
        total = 0
        for c, x in zip(red, vec):
            total += c * x * x
        if total % p == 0:
            return vec
    return None
