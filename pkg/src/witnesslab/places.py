"""Places of Q and local square-class logic.

A place is the real place, the dyadic prime 2, or an odd prime p.  The
local fields Q_v never appear as data; everything is phrased through
exact square-class tests (is_local_square) and explicit representatives
of Q_v*/Q_v*^2.

find_square_class builds global square classes with prescribed local
behavior by walking the canonical squarefree enumeration
1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, ...; that fixed order is what makes
every higher-level witness in this package deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .arith import Rational, is_prime, is_squarefree, legendre, squarefree_part, valuation
from .errors import DomainError, SearchExhausted

__all__ = [
    "Place",
    "REAL",
    "DYADIC",
    "LocalSquareConstraint",
    "valuation",
    "is_local_square",
    "square_classes",
    "iter_square_classes",
    "find_square_class",
    "DEFAULT_SEARCH_BOUND",
]

DEFAULT_SEARCH_BOUND = 10_000


@dataclass(frozen=True)
class Place:
    """A place of Q: p is None for the real place, 2 for the dyadic one, or an odd prime."""

    p: int | None

    def __post_init__(self) -> None:
        if self.p is None:
            return
        if self.p == 2:
            return
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise DomainError(f"{self.p} is not an odd prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def dyadic(cls) -> "Place":
        return cls(2)

    @classmethod
    def odd(cls, p: int) -> "Place":
        if p == 2:
            raise DomainError("2 is not an odd prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        if text in ("inf", "oo", "real"):
            return cls.real()
        return cls(int(text))

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def is_dyadic(self) -> bool:
        return self.p == 2

    @property
    def is_odd(self) -> bool:
        return self.p is not None and self.p != 2

    def sort_key(self) -> tuple[int, int]:
        # finite places by residue characteristic, the real place last
        return (1, 0) if self.p is None else (0, self.p)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


REAL = Place.real()
DYADIC = Place.dyadic()


@dataclass(frozen=True)
class LocalSquareConstraint:
    place: Place
    want_square: bool


def is_local_square(c: Rational, v: Place) -> bool:
    """Is c a square in the completion at v?

    Real: positive.  Odd p: even valuation and the unit part a residue.
    Dyadic: even valuation and odd part congruent to 1 mod 8.  The dyadic
    criterion is pinned against an enumeration oracle in the test suite.
    """
    if c == 0:
        raise DomainError("0 is not in the square-class group")
    s = squarefree_part(c)
    if v.is_real:
        return s > 0
    p = v.p
    assert p is not None
    w = valuation(s, p)  # 0 or 1: s is squarefree
    if w % 2:
        return False
    u = s // p**w
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def square_classes(v: Place) -> tuple[int, ...]:
    """Squarefree representatives of Q_v*/Q_v*^2, pairwise locally inequivalent.

    Counts: 2 (real), 4 (odd p), 8 (dyadic).  For odd p the unit nonsquare
    is -1 when p = 3 mod 4 and the smallest positive nonresidue otherwise.
    """
    if v.is_real:
        return (1, -1)
    if v.is_dyadic:
        return (1, -1, 2, -2, 5, -5, 10, -10)
    p = v.p
    assert p is not None
    if p % 4 == 3:
        u = -1
    else:
        u = 2
        while legendre(u, p) != -1:
            u += 1
    return (1, u, p, squarefree_part(u * p))


def iter_square_classes() -> Iterator[int]:
    """1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, ... squarefree, |c| ascending, positive first."""
    n = 1
    while True:
        if is_squarefree(n):
            yield n
            yield -n
        n += 1


def find_square_class(
    constraints: Iterable[LocalSquareConstraint],
    bound: int = DEFAULT_SEARCH_BOUND,
) -> int:
    """First square class in the canonical enumeration meeting every constraint.

    Exhausting `bound` candidates raises SearchExhausted: an inconclusive
    outcome, never a proof that no class exists.
    """
    cons = tuple(constraints)
    seen: set[Place] = set()
    for con in cons:
        if con.place in seen:
            raise DomainError(f"duplicate constraint at place {con.place}")
        seen.add(con.place)
    count = 0
    for c in iter_square_classes():
        if count >= bound:
            raise SearchExhausted(
                f"no square class found within {bound} candidates (result inconclusive)"
            )
        count += 1
        if all(is_local_square(c, con.place) == con.want_square for con in cons):
            return c
    raise AssertionError("unreachable")
