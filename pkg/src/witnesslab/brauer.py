"""Quaternion algebras over Q.

(a,b) denotes the 4-dimensional algebra with generators i, j satisfying
i*i = a, j*j = b, ij = -ji.  Everything about it over Q is controlled by
the Hilbert symbols (a,b)_v at the places of Q: the algebra is split at v
iff the symbol is +1, its isomorphism class over Q is exactly its (finite,
even) set of ramified places, and a quadratic field Q(sqrt(c)) embeds into
a division algebra D iff c is a nonsquare in Q_v at every ramified place.

Symbol formulas used here:

* real: (a,b) = -1 iff a < 0 and b < 0;
* odd p, a = p^alpha u, b = p^beta w with u, w units:
  (a,b)_p = (-1|p)^(alpha*beta) (u|p)^beta (w|p)^alpha;
* p = 2, a = 2^alpha u, b = 2^beta w with u, w odd:
  (a,b)_2 = (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u)),
  eps(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2.

The dyadic formula is the trickiest to get right, so the congruence-search
oracle (witnesslab.oracle.hilbert_bruteforce) is the arbiter in the test
suite, and the two routes must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import Rational, factorize, legendre, squarefree_part, valuation
from .errors import DomainError
from .places import DYADIC, REAL, Place, is_local_square

__all__ = [
    "QuaternionAlgebra",
    "RamificationSet",
    "TameResidue",
    "ObstructionEvidence",
    "hilbert",
    "tame_residue",
    "ram_set",
    "is_isomorphic",
    "embeds",
    "embeds_via_normform",
    "normalize_symbol",
    "obstruction_witness",
    "dyadic_local_type",
    "DYADIC_SPLIT",
    "DYADIC_DIVISION_SEPARABLE_RESIDUE",
]


@dataclass(frozen=True)
class QuaternionAlgebra:
    """Symbol algebra (a,b); slots are canonicalized to squarefree integers."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == 0 or self.b == 0:
            raise DomainError("quaternion slots must be nonzero")
        object.__setattr__(self, "a", squarefree_part(self.a))
        object.__setattr__(self, "b", squarefree_part(self.b))

    @classmethod
    def of(cls, a: Rational, b: Rational) -> "QuaternionAlgebra":
        if a == 0 or b == 0:
            raise DomainError("quaternion slots must be nonzero")
        return cls(squarefree_part(a), squarefree_part(b))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class RamificationSet:
    """The places where a quaternion algebra is division; always of even size."""

    places: tuple[Place, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.places), key=Place.sort_key))
        if len(ordered) % 2:
            # Impossible by Hilbert reciprocity; a failure here is a symbol bug.
            raise AssertionError(f"odd ramification set {ordered}")
        object.__setattr__(self, "places", ordered)

    def __iter__(self):
        return iter(self.places)

    def __len__(self) -> int:
        return len(self.places)

    def __contains__(self, v: Place) -> bool:
        return v in self.places

    @property
    def is_empty(self) -> bool:
        return not self.places


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


@lru_cache(maxsize=None)
def _hilbert_sf(a: int, b: int, v: Place) -> int:
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    assert p is not None
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a // p**alpha
    w = b // p**beta
    if p == 2:
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    s = 1
    if alpha * beta % 2:
        s *= legendre(-1, p)
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(w, p)
    return s


def hilbert(a: Rational, b: Rational, v: Place) -> int:
    """Hilbert symbol (a,b)_v: +1 iff (a,b) splits over the completion at v."""
    if a == 0 or b == 0:
        raise DomainError("hilbert symbol needs nonzero slots")
    return _hilbert_sf(squarefree_part(a), squarefree_part(b), v)


@dataclass(frozen=True)
class TameResidue:
    """Square class of the tame residue of (a,b) at an odd prime.

    `value` is a squarefree integer prime to p representing the class of
    (-1)^(v(a)v(b)) a^(v(b)) b^(-v(a)) in F_p* modulo squares; the symbol
    is ramified at p exactly when this class is a nonresidue, and then the
    residue algebra is the quadratic field extension named by the class.
    """

    value: int
    p: int

    @property
    def nontrivial(self) -> bool:
        return legendre(self.value, self.p) == -1


def tame_residue(a: Rational, b: Rational, p: int) -> TameResidue:
    if p == 2 or a == 0 or b == 0:
        raise DomainError("tame residue needs an odd prime and nonzero slots")
    sa = squarefree_part(a)
    sb = squarefree_part(b)
    va = valuation(sa, p)
    vb = valuation(sb, p)
    r = Fraction((-1) ** (va * vb)) * Fraction(sa) ** vb * Fraction(sb) ** (-va)
    return TameResidue(squarefree_part(r), p)


@lru_cache(maxsize=65536)
def ram_set(d: QuaternionAlgebra) -> RamificationSet:
    """All places where d is division; d is split over Q iff the set is empty."""
    candidates = [REAL, DYADIC]
    for p, _ in factorize(d.a * d.b).factors:
        if p != 2:
            candidates.append(Place.odd(p))
    ramified = tuple(v for v in candidates if hilbert(d.a, d.b, v) == -1)
    return RamificationSet(ramified)


def is_isomorphic(d1: QuaternionAlgebra, d2: QuaternionAlgebra) -> bool:
    """Over Q two quaternion algebras are isomorphic iff they ramify at the same places."""
    return ram_set(d1).places == ram_set(d2).places


def embeds(c: Rational, d: QuaternionAlgebra) -> bool:
    """Does Q(sqrt(c)) embed into the division algebra d?

    Defined only for division d: a split algebra is split by *every*
    quadratic extension, so the question carries no information there
    (locally, both algebras over Q_p are split by all three quadratic
    extensions of Q_p).  For division d the quadratic subfields are
    exactly the quadratic splitting fields: Q(sqrt(c)) embeds iff c is a
    nonsquare in Q_v for every ramified place v.
    """
    sc = squarefree_part(c)
    if sc == 1:
        raise DomainError("c is a global square: Q(sqrt(c)) is not a quadratic field")
    ram = ram_set(d)
    if ram.is_empty:
        raise DomainError(f"{d} is split, not division")
    return all(not is_local_square(sc, v) for v in ram)


def embeds_via_normform(c: Rational, d: QuaternionAlgebra) -> bool:
    """Same question as embeds(), decided through the pure norm form.

    Q(sqrt(c)) embeds in division (a,b) iff -c is represented over Q by
    <-a,-b,ab>.  Kept as an independent route: the two must agree, and the
    test suite enforces that.
    """
    sc = squarefree_part(c)
    if sc == 1:
        raise DomainError("c is a global square: Q(sqrt(c)) is not a quadratic field")
    if ram_set(d).is_empty:
        raise DomainError(f"{d} is split, not division")
    from . import quadform

    # the pure norm form is anisotropic for division d, so representing -c
    # is equivalent to <-a,-b,ab,c> being isotropic
    return quadform.is_isotropic(quadform.DiagonalForm.of(-d.a, -d.b, d.a * d.b, sc))


def normalize_symbol(a: Rational, b: Rational, p: int) -> tuple[int, int]:
    """Rewrite (a,b) as (a',b') with v_p(a') = 0 and equal symbols at every place.

    If only b is a unit at p the slots are swapped (symbols are symmetric);
    if both valuations are odd, a' = squarefree_part(-a*b), which leaves
    every symbol unchanged because (-b,b) is split everywhere.
    """
    if p == 2 or a == 0 or b == 0:
        raise DomainError("normalize_symbol needs an odd prime and nonzero slots")
    sa = squarefree_part(a)
    sb = squarefree_part(b)
    if valuation(sa, p) == 0:
        return (sa, sb)
    if valuation(sb, p) == 0:
        return (sb, sa)
    return (squarefree_part(-sa * sb), sb)


@dataclass(frozen=True)
class ObstructionEvidence:
    """Why a quaternion class over Q is nonzero: a nondyadic or real obstruction.

    kind is "zero" (split algebra), "odd-place" (ramified at the odd prime
    carried in `place`, with nontrivial tame residue) or "real" (the real
    symbol is -1).  A nonsplit algebra that is unramified at every odd
    prime and indefinite cannot exist over Q: ramification sets are even
    and Q has a single dyadic place, so every nonzero class is visible at
    an odd prime or at the real place.
    """

    kind: str
    place: Place | None = None


def obstruction_witness(d: QuaternionAlgebra) -> ObstructionEvidence:
    ram = ram_set(d)
    if ram.is_empty:
        return ObstructionEvidence("zero")
    odd = [v for v in ram if v.is_odd]
    if odd:
        v = odd[0]
        assert v.p is not None and tame_residue(d.a, d.b, v.p).nontrivial
        return ObstructionEvidence("odd-place", v)
    if REAL in ram:
        return ObstructionEvidence("real", REAL)
    raise AssertionError(f"{d}: ramified only at the dyadic place, impossible over Q")


DYADIC_SPLIT = "split"
DYADIC_DIVISION_SEPARABLE_RESIDUE = "division-separable-residue"


def dyadic_local_type(d: QuaternionAlgebra) -> str:
    """Classify (a,b) over Q_2.

    Either split, or the unique division quaternion algebra over Q_2,
    whose residue algebra is the separable quadratic extension F_4 of F_2.
    The classification output is pinned by test rather than derived from
    the dimension formula for residue algebras.
    """
    if hilbert(d.a, d.b, DYADIC) == 1:
        return DYADIC_SPLIT
    return DYADIC_DIVISION_SEPARABLE_RESIDUE
