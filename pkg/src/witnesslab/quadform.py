"""Quadratic-form engine over Q and over the monomial fragment of Q(t).

Diagonal forms <a_1,...,a_n> are classified over Q by dimension,
determinant square class, signature and the Hasse invariants
prod_{i<j} (a_i,a_j)_v; isotropy, Witt index, isometry, subforms and
Pfister divisibility are all decided at that invariant level (the
local-global principle makes the invariants complete), while explicit
witnesses come only from the independent brute-force oracle.

Over Q(t) only t-monomial entries c*t^e (e in {0,1} after square
stripping) are supported.  For those, the two t-adic residue forms live
over Q and determine the form completely (the Witt ring of Q(t) splits
along residues), so isometry and Pfister divisibility questions reduce to
exact computations over Q.  Divisibility over Q(t) returns a three-valued
verdict: a bounded monomial witness search can say Yes, residue-level
necessary conditions can say No, and anything else is reported as
Inconclusive rather than guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .arith import Rational, legendre, squarefree_part, valuation
from .brauer import hilbert
from .errors import DomainError, InconclusiveError, SearchExhausted
from .places import DYADIC, REAL, Place, is_local_square, iter_square_classes

__all__ = [
    "Monomial",
    "DiagonalForm",
    "PfisterForm",
    "FormInvariants",
    "ResiduePair",
    "BinarySubformWitness",
    "PfisterDivision",
    "QtDivisibility",
    "invariants",
    "is_isotropic",
    "witt_index",
    "anisotropic_dimension",
    "is_isometric",
    "is_witt_equivalent",
    "subform",
    "residues_at",
    "isotropic_binary_subform",
    "pfister_divides",
    "qt_isometry",
    "pfister_divides_qt",
    "normalize_pfister_slots",
]


@dataclass(frozen=True)
class Monomial:
    """A t-monomial c * t**e with c a nonzero rational."""

    coeff: Fraction
    exp: int

    def __post_init__(self) -> None:
        if self.coeff == 0:
            raise DomainError("zero monomial entry")
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def stripped(self) -> "Monomial":
        return Monomial(Fraction(squarefree_part(self.coeff)), self.exp % 2)

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coeff, self.exp)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, self.exp + other.exp)

    def __str__(self) -> str:
        e = self.exp % 2 if self.exp >= 0 else self.exp
        if e == 0:
            return str(self.coeff)
        if self.coeff == 1:
            return "t"
        if self.coeff == -1:
            return "-t"
        return f"{self.coeff}t"


Entry = Fraction | Monomial


def _coerce_entry(e) -> Entry:
    if isinstance(e, Monomial):
        return e
    if isinstance(e, (int, Fraction)):
        if e == 0:
            raise DomainError("zero form entry")
        return Fraction(e)
    raise DomainError(f"bad form entry {e!r}")


@dataclass(frozen=True)
class DiagonalForm:
    """<a_1,...,a_n>; entries are rationals (base Q) or monomials (base Q(t)).

    The empty form (dimension 0) is allowed: it shows up as an empty
    second residue.
    """

    entries: tuple[Entry, ...]

    def __post_init__(self) -> None:
        coerced = tuple(_coerce_entry(e) for e in self.entries)
        if any(isinstance(e, Monomial) for e in coerced):
            coerced = tuple(
                e if isinstance(e, Monomial) else Monomial(e, 0) for e in coerced
            )
        object.__setattr__(self, "entries", coerced)

    @classmethod
    def of(cls, *entries) -> "DiagonalForm":
        return cls(tuple(entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def base(self) -> Literal["Q", "Qt"]:
        return "Qt" if any(isinstance(e, Monomial) for e in self.entries) else "Q"

    def _require_q(self) -> tuple[Fraction, ...]:
        if self.base != "Q":
            raise DomainError("operation defined over Q only")
        return self.entries  # type: ignore[return-value]

    def sf_entries(self) -> tuple[int, ...]:
        """Square-stripped entries as squarefree integers (base Q)."""
        return tuple(squarefree_part(e) for e in self._require_q())

    def perp(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(self.entries + other.entries)

    def neg(self) -> "DiagonalForm":
        return DiagonalForm(tuple(-e for e in self.entries))

    def scaled(self, c: Rational) -> "DiagonalForm":
        if c == 0:
            raise DomainError("scaling by zero")
        return DiagonalForm(tuple(Fraction(c) * e if isinstance(e, Fraction) else Monomial(Fraction(c) * e.coeff, e.exp) for e in self.entries))

    def stripped(self) -> "DiagonalForm":
        if self.base == "Q":
            return DiagonalForm(tuple(Fraction(squarefree_part(e)) for e in self._require_q()))
        return DiagonalForm(tuple(e.stripped() for e in self.entries))  # type: ignore[union-attr]

    def __str__(self) -> str:
        return "<" + ",".join(str(e) for e in self.entries) + ">"


@dataclass(frozen=True)
class PfisterForm:
    """<<a_1,...,a_d>> = tensor product of the binary forms <1,-a_i>."""

    slots: tuple[Entry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(_coerce_entry(s) for s in self.slots))
        if not self.slots:
            raise DomainError("a Pfister form needs at least one slot")

    @classmethod
    def of(cls, *slots) -> "PfisterForm":
        return cls(tuple(slots))

    @property
    def d(self) -> int:
        return len(self.slots)

    @property
    def base(self) -> Literal["Q", "Qt"]:
        return "Qt" if any(isinstance(s, Monomial) for s in self.slots) else "Q"

    def stripped(self) -> "PfisterForm":
        out = []
        for s in self.slots:
            if isinstance(s, Monomial):
                out.append(s.stripped())
            else:
                out.append(Fraction(squarefree_part(s)))
        return PfisterForm(tuple(out))

    def realized(self) -> DiagonalForm:
        """The 2^d diagonal entries, subset-of-slots order (bit i = slot i)."""
        if self.base == "Q":
            entries: list[Entry] = [Fraction(1)]
            for s in self.slots:
                entries = entries + [e * -s for e in entries]  # type: ignore[operator]
            return DiagonalForm(tuple(entries))
        ments: list[Monomial] = [Monomial(Fraction(1), 0)]
        for s in self.slots:
            m = s if isinstance(s, Monomial) else Monomial(s, 0)
            ments = ments + [e * Monomial(-m.coeff, m.exp) for e in ments]
        return DiagonalForm(tuple(ments))

    def pure_part(self) -> DiagonalForm:
        return DiagonalForm(self.realized().entries[1:])

    def tensor(self, slot) -> "PfisterForm":
        return PfisterForm(self.slots + (_coerce_entry(slot),))

    def __str__(self) -> str:
        return "<<" + ",".join(str(s) for s in self.slots) + ">>"


# ---------------------------------------------------------------------------
# invariants and local/global isotropy over Q


@dataclass(frozen=True)
class FormInvariants:
    """Classification data of a form over Q.

    hasse_minus is the (finite) set of places where the Hasse invariant
    prod_{i<j} (a_i,a_j)_v equals -1; off the listed support every local
    invariant is trivial.  Reciprocity forces hasse_minus to have even
    size, which the tests check.
    """

    dim: int
    det: int
    signature: int
    hasse_minus: frozenset[Place]
    support: frozenset[Place]

    def hasse_at(self, v: Place) -> int:
        return -1 if v in self.hasse_minus else 1


def _support_places(sf_entries: Iterable[int]) -> frozenset[Place]:
    from .arith import factorize

    primes: set[int] = set()
    for e in sf_entries:
        for p, _ in factorize(e).factors:
            primes.add(p)
    places = {REAL, DYADIC}
    places.update(Place.odd(p) for p in primes if p != 2)
    return frozenset(places)


def invariants(q: DiagonalForm) -> FormInvariants:
    ent = q.sf_entries()
    det = squarefree_part(prod_int(ent)) if ent else 1
    sig = sum(1 if e > 0 else -1 for e in ent)
    support = _support_places(ent)
    minus = set()
    for v in support:
        h = 1
        for i in range(len(ent)):
            for j in range(i + 1, len(ent)):
                h *= hilbert(ent[i], ent[j], v)
        if h == -1:
            minus.add(v)
    return FormInvariants(len(ent), det, sig, frozenset(minus), support)


def prod_int(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _local_isotropic(dim: int, det: int, hasse_v: int, sig: int, v: Place) -> bool:
    """Isotropy over Q_v from the classification data (standard case split)."""
    if dim <= 1:
        return False
    if v.is_real:
        return abs(sig) < dim
    if dim == 2:
        return is_local_square(-det, v)
    if dim == 3:
        return hasse_v == hilbert(-1, -squarefree_part(det), v)
    if dim == 4:
        return not (is_local_square(det, v) and hasse_v == -hilbert(-1, -1, v))
    return True  # dim >= 5 is always isotropic over a p-adic field


def _inv_isotropic_at(inv: FormInvariants, v: Place) -> bool:
    return _local_isotropic(inv.dim, inv.det, inv.hasse_at(v), inv.signature, v)


def _inv_isotropic_global(inv: FormInvariants) -> bool:
    if inv.dim <= 1:
        return False
    if inv.dim == 2:
        return inv.det == -1  # <a,b> isotropic over Q iff -ab is a square
    if inv.dim >= 5:
        # always isotropic at finite places, so only the real one matters
        return abs(inv.signature) < inv.dim
    return all(_inv_isotropic_at(inv, v) for v in inv.support)


def is_isotropic(q: DiagonalForm, v: Place | None = None) -> bool:
    """Hasse-Minkowski decision: isotropic over Q_v, or over Q when v is None."""
    inv = invariants(q)
    if v is None:
        return _inv_isotropic_global(inv)
    return _inv_isotropic_at(inv, v)


def _strip_plane(inv: FormInvariants) -> FormInvariants:
    """Invariants after splitting off one hyperbolic plane."""
    det1 = squarefree_part(-inv.det)
    minus = set()
    for v in inv.support:
        h = inv.hasse_at(v) * hilbert(-1, -inv.det, v)
        if h == -1:
            minus.add(v)
    return FormInvariants(inv.dim - 2, det1, inv.signature, frozenset(minus), inv.support)


def witt_index(q: DiagonalForm) -> int:
    """Number of hyperbolic planes split off over Q (invariant-level stripping)."""
    inv = invariants(q)
    w = 0
    while _inv_isotropic_global(inv):
        inv = _strip_plane(inv)
        w += 1
    return w


def anisotropic_dimension(q: DiagonalForm) -> int:
    return q.dim - 2 * witt_index(q)


def is_isometric(q1: DiagonalForm, q2: DiagonalForm) -> bool:
    """Isometry over Q: equal dimension, determinant, signature and Hasse data."""
    i1 = invariants(q1)
    i2 = invariants(q2)
    if (i1.dim, i1.det, i1.signature) != (i2.dim, i2.det, i2.signature):
        return False
    return i1.hasse_minus == i2.hasse_minus


def is_witt_equivalent(q1: DiagonalForm, q2: DiagonalForm) -> bool:
    if (q1.dim + q2.dim) % 2:
        return False
    if q1.dim == 0 and q2.dim == 0:
        return True
    total = q1.perp(q2.neg())
    return witt_index(total) == total.dim // 2


def subform(gamma: DiagonalForm, phi: DiagonalForm) -> bool:
    """Is gamma isometric to an orthogonal direct summand of phi?

    Decided by the representation criterion: gamma is a subform of phi iff
    witt_index(phi perp -gamma) >= dim gamma.  Cross-checked against an
    explicit splitting oracle in the tests.
    """
    if gamma.dim > phi.dim:
        raise DomainError("subform candidate exceeds the ambient dimension")
    if gamma.dim == 0:
        return True
    return witt_index(phi.perp(gamma.neg())) >= gamma.dim


# ---------------------------------------------------------------------------
# residue forms


@dataclass(frozen=True)
class ResiduePair:
    """First/second residue forms at a valuation.

    Over Q at an odd prime the residue field is F_p and the entries are
    unit integers read mod p; at the t-adic valuation of monomial
    Q(t)-forms the residue field is Q.  `ramified` means the second
    residue is nontrivial in the Witt ring of the residue field; a
    hyperbolic second residue counts as unramified.
    """

    first: DiagonalForm
    second: DiagonalForm
    ramified: bool


def _fp_witt_trivial(entries: tuple[int, ...], p: int) -> bool:
    """Is the unit-entry form hyperbolic over F_p?  dim even and det ~ (-1)^(dim/2)."""
    n = len(entries)
    if n % 2:
        return False
    if n == 0:
        return True
    det = prod_int(entries)
    return legendre(det * (-1) ** (n // 2), p) == 1


def residues_at(q: DiagonalForm, v: int | Literal["t"]) -> ResiduePair:
    if v == "t":
        u_part = []
        t_part = []
        for e in q.stripped().entries:
            m = e if isinstance(e, Monomial) else Monomial(e, 0)
            if m.exp % 2 == 0:
                u_part.append(m.coeff)
            else:
                t_part.append(m.coeff)
        first = DiagonalForm(tuple(u_part))
        second = DiagonalForm(tuple(t_part))
        ramified = not (
            second.dim % 2 == 0 and (second.dim == 0 or witt_index(second) == second.dim // 2)
        )
        return ResiduePair(first, second, ramified)
    p = int(v)
    if p == 2 or p < 3:
        raise DomainError("residues are computed at odd primes or at t")
    if q.base != "Q":
        raise DomainError("odd-prime residues are defined for forms over Q")
    u_entries = []
    s_entries = []
    for e in q.sf_entries():
        if valuation(e, p) == 0:
            u_entries.append(e)
        else:
            s_entries.append(e // p)
    first = DiagonalForm(tuple(Fraction(e) for e in u_entries))
    second = DiagonalForm(tuple(Fraction(e) for e in s_entries))
    ramified = not _fp_witt_trivial(tuple(s_entries), p)
    return ResiduePair(first, second, ramified)


# ---------------------------------------------------------------------------
# the binary-subform construction at an odd prime


@dataclass(frozen=True)
class BinarySubformWitness:
    """A 2-dimensional subform <r,s> of a unit-entry form, isotropic over Q_p.

    residue_solution is the lexicographically smallest nontrivial zero of
    the reduced form mod p (components in [0,p)); pivot is the 1-based
    index of its first nonzero component; r and s are the partial sums
    sum_{i<=pivot} a_i t_i^2 and sum_{i>pivot} a_i t_i^2 of the lifts
    t_i = residue_solution_i.  Both have valuation 0 and -rs is a square
    in Q_p, so <r,s> is locally isotropic.
    """

    residue_solution: tuple[int, ...]
    pivot: int
    lifts: tuple[int, ...]
    r: Fraction
    s: Fraction


def isotropic_binary_subform(psi: DiagonalForm, p: int) -> BinarySubformWitness:
    if p == 2 or p < 3:
        raise DomainError("odd prime required")
    ent = psi._require_q()
    if any(valuation(e, p) != 0 for e in ent):
        raise DomainError(f"entries must be units at {p}")
    if psi.dim < 2:
        raise DomainError("need dimension at least 2")
    if not is_isotropic(psi, Place.odd(p)):
        raise DomainError(f"{psi} is anisotropic over Q_{p}")
    # unit entries + local isotropy force a nontrivial zero of the residue form
    res = tuple(e.numerator * pow(e.denominator, -1, p) % p for e in ent)
    n = len(res)
    solution = None
    for vec in itertools.product(range(p), repeat=n):
        if not any(vec):
            continue
        if sum(a * x * x for a, x in zip(res, vec)) % p == 0:
            solution = vec
            break
    if solution is None:
        raise AssertionError(f"no residue zero found for {psi} mod {p}")
    pivot = next(i for i, x in enumerate(solution) if x) + 1
    entries_q = psi._require_q()
    r = sum((entries_q[i] * solution[i] * solution[i] for i in range(pivot)), Fraction(0))
    s = sum((entries_q[i] * solution[i] * solution[i] for i in range(pivot, n)), Fraction(0))
    assert valuation(r, p) == 0 and valuation(s, p) == 0
    assert is_local_square(squarefree_part(-r * s), Place.odd(p))
    return BinarySubformWitness(solution, pivot, solution, r, s)


# ---------------------------------------------------------------------------
# Pfister divisibility over Q


@dataclass(frozen=True)
class PfisterDivision:
    divides: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.divides


def pfister_divides(gamma: PfisterForm, phi: PfisterForm, bound: int = 10_000) -> PfisterDivision:
    """Does the (d-1)-Pfister gamma divide the d-Pfister phi over Q?

    For Pfister forms dividing is equivalent to being a subform, which the
    Witt-index criterion decides exactly; when the answer is yes, the
    canonical square-class enumeration is walked until a slot witness c
    with gamma tensor <<c>> isometric to phi is found and returned.
    """
    if gamma.base != "Q" or phi.base != "Q":
        raise DomainError("pfister_divides works over Q; use pfister_divides_qt for Q(t)")
    g = gamma.realized()
    f = phi.realized()
    if 2 * g.dim != f.dim:
        raise DomainError(f"dimension mismatch: {g.dim} does not halve {f.dim}")
    if not subform(g, f):
        return PfisterDivision(False)
    count = 0
    for c in iter_square_classes():
        if count >= bound:
            raise SearchExhausted(
                f"{gamma} divides {phi} but no slot witness found within {bound} candidates"
            )
        count += 1
        if is_isometric(gamma.tensor(c).realized(), f):
            return PfisterDivision(True, c)
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# monomial forms over Q(t)


def _require_monomial(q: DiagonalForm) -> DiagonalForm:
    s = q.stripped()
    for e in s.entries:
        if isinstance(e, Monomial) and e.exp not in (0, 1):
            raise AssertionError("stripping left a bad exponent")
    return s


def qt_isometry(f1: DiagonalForm, f2: DiagonalForm) -> bool:
    """Isometry of monomial forms over Q(t).

    Equal dimension plus Witt-equivalent first and second t-adic residues
    over Q; complete for the monomial class because the Witt class of such
    a form is exactly the pair of residue classes.
    """
    if f1.dim != f2.dim:
        return False
    r1 = residues_at(_require_monomial(f1), "t")
    r2 = residues_at(_require_monomial(f2), "t")
    return is_witt_equivalent(r1.first, r2.first) and is_witt_equivalent(r1.second, r2.second)


@dataclass(frozen=True)
class QtDivisibility:
    verdict: Literal["yes", "no", "inconclusive"]
    witness: Monomial | None = None
    reason: str | None = None


def _an_dim(q: DiagonalForm) -> int:
    return anisotropic_dimension(q) if q.dim else 0


def pfister_divides_qt(
    gamma: PfisterForm, phi: PfisterForm, bound: int = 40
) -> QtDivisibility:
    """Three-valued divisibility of monomial Pfister forms over Q(t).

    Yes: a bounded enumeration of monomial slot witnesses c (units u and
    monomials u*t over the canonical square classes) found phi isometric
    to gamma tensor <<c>>, verified through qt_isometry.

    No: for every candidate square class c = u*t^eps of Q(t) at the t-adic
    valuation, the residue conditions forced by phi = gamma tensor <<c>>
    fail: writing g1,g2 / f1,f2 for the first/second residue Witt classes
    of gamma / phi, eps=0 needs f_i ~ g_i<<u>> and eps=1 needs
    f1 ~ g1 - u.g2, f2 ~ g2 - u.g1.  Each is refuted either exactly (when
    u drops out) or by the u-independent bound on anisotropic dimensions.

    Inconclusive: anything else; never a wrong verdict.
    """
    g = gamma.realized()
    f = phi.realized()
    if 2 * g.dim != f.dim:
        raise DomainError(f"dimension mismatch: {g.dim} does not halve {f.dim}")
    rg = residues_at(_require_monomial(g), "t")
    rf = residues_at(_require_monomial(f), "t")
    g1, g2 = rg.first, rg.second
    f1, f2 = rf.first, rf.second
    a_g1, a_g2 = _an_dim(g1), _an_dim(g2)
    a_f1, a_f2 = _an_dim(f1), _an_dim(f2)

    eps0_reason = None
    if a_f1 > 2 * a_g1 or a_f2 > 2 * a_g2:
        eps0_reason = "anisotropic dimension of a phi-residue exceeds twice gamma's"
    eps1_reason = None
    if a_f1 > a_g1 + a_g2 or a_f2 > a_g1 + a_g2:
        eps1_reason = "anisotropic dimension of a phi-residue exceeds gamma's residue total"
    elif a_g2 == 0 and not is_witt_equivalent(f1, g1):
        eps1_reason = "first residues must be Witt-equivalent when gamma's second residue vanishes"
    elif a_g1 == 0 and not is_witt_equivalent(f2, g2):
        eps1_reason = "second residues must be Witt-equivalent when gamma's first residue vanishes"

    if eps0_reason and eps1_reason:
        return QtDivisibility("no", reason=f"unit case: {eps0_reason}; t case: {eps1_reason}")

    count = 0
    for u in iter_square_classes():
        if count >= bound:
            break
        count += 1
        for exp in (0, 1):
            c = Monomial(Fraction(u), exp)
            if qt_isometry(gamma.tensor(c).realized(), f):
                return QtDivisibility("yes", witness=c)
    return QtDivisibility(
        "inconclusive",
        reason=f"no monomial witness within {bound} square classes and no residue refutation",
    )


def normalize_pfister_slots(pf: PfisterForm, v: int | Literal["t"]) -> PfisterForm:
    """Rewrite slots so at most one has odd valuation at v, placed last.

    Uses the slot identity <<x.pi, y.pi>> ~ <<-xy, y.pi>> for a uniformizer
    pi, applied pairwise; the result is verified isometric to the input
    (invariant equality over Q, residue equality over Q(t)).
    """
    s = pf.stripped()
    if v == "t":
        slots = [m if isinstance(m, Monomial) else Monomial(m, 0) for m in s.slots]
        units = [m for m in slots if m.exp % 2 == 0]
        odds = [m for m in slots if m.exp % 2 == 1]
        while len(odds) >= 2:
            x = odds.pop(0)
            y = odds[0]
            units.append(Monomial(Fraction(squarefree_part(-x.coeff * y.coeff)), 0))
        out = PfisterForm(tuple(units + odds)).stripped()
        assert qt_isometry(out.realized(), pf.realized())
        return out
    if s.base != "Q":
        raise DomainError("odd-prime normalization is defined for forms over Q")
    p = int(v)
    units_q = [c for c in s.slots if valuation(c, p) == 0]
    odds_q = [c for c in s.slots if valuation(c, p) != 0]
    while len(odds_q) >= 2:
        x = odds_q.pop(0)
        y = odds_q[0]
        units_q.append(Fraction(squarefree_part(-x * y)))
    out = PfisterForm(tuple(units_q + odds_q)).stripped()
    assert is_isometric(out.realized(), pf.realized())
    return out
