"""Witness-producing distinguishing algorithms.

The headline operation: two non-isomorphic quaternion division algebras
over Q always disagree about some quadratic subfield, and
distinguish_quaternions constructs one explicitly.  The witness is built
by prescribing local square classes (a CRT-style search through the
canonical square-class enumeration) and then *verified* through the
embedding criterion before being returned, so the algorithm is
self-certifying: a criterion bug cannot silently produce an unsound
witness.

distinguish_pfister is the same statement one level up, for anisotropic
d-Pfister forms and (d-1)-Pfister divisors; local_divisor_witness is the
local step it delegates to at a finite valuation (odd prime over Q, the
t-adic valuation for monomial forms over Q(t)).

Over Q the real-or-odd-place case split is exhaustive: ramification sets
have even size and Q has a single dyadic place, so the symmetric
difference of two ramification sets can never be purely dyadic (the code
asserts this).  That is also why the dyadic division/residue analysis
never has to produce a witness over Q.

The tractability operations verify and search for configurations of six
square classes whose six cross quaternion symbols split while the three
diagonal algebras are isomorphic but nonsplit; such a configuration
exists over Q_2, provably not over nondyadic local fields, and never
over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from . import quadform
from .arith import squarefree_part, valuation
from .brauer import QuaternionAlgebra, embeds, hilbert, is_isomorphic, ram_set
from .errors import DomainError, InconclusiveError
from .places import (
    DEFAULT_SEARCH_BOUND,
    REAL,
    LocalSquareConstraint,
    Place,
    find_square_class,
    iter_square_classes,
    square_classes,
)
from .quadform import (
    DiagonalForm,
    Monomial,
    PfisterForm,
    anisotropic_dimension,
    invariants,
    is_isometric,
    is_isotropic,
    isotropic_binary_subform,
    normalize_pfister_slots,
    pfister_divides,
    pfister_divides_qt,
    residues_at,
    subform,
    witt_index,
)

__all__ = [
    "DistinguishReport",
    "CruxReport",
    "TractableConfig",
    "TractableReport",
    "FunctionFieldStepReport",
    "distinguish_quaternions",
    "distinguish_pfister",
    "local_divisor_witness",
    "tractable_verify",
    "tractable_search_local",
    "function_field_step",
]

CASE_REAL = "real"
CASE_ODD_PLACE = "odd-place"


@dataclass(frozen=True)
class DistinguishReport:
    """A verified distinguishing witness.

    witness: a square class c (quaternion case) or a (d-1)-Pfister form
    (form case).  embeds_in: 1 or 2, the input that contains/divides it.
    verification: the two embedding/divisibility test results, asserted to
    be (True, False) or (False, True) before the report is returned.
    """

    witness: int | PfisterForm
    embeds_in: int
    case_tag: str
    place: Place | None
    verification: tuple[bool, bool]


def distinguish_quaternions(
    d1: QuaternionAlgebra,
    d2: QuaternionAlgebra,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> DistinguishReport | None:
    """A quadratic field embedding in exactly one of two division algebras.

    Returns None iff the algebras are isomorphic.  Otherwise the witness
    square class c is chosen to be a local square at one distinguished
    place v0 of the symmetric difference of the ramification sets (the
    real place if it is there, else the smallest odd prime) and a local
    nonsquare at every other ramified place of either algebra; Q(sqrt(c))
    then embeds exactly in the input *not* ramified at v0.
    """
    ram1 = ram_set(d1)
    ram2 = ram_set(d2)
    if ram1.is_empty or ram2.is_empty:
        raise DomainError("both algebras must be division (split algebras are split by every quadratic field)")
    if ram1.places == ram2.places:
        return None
    diff = set(ram1.places) ^ set(ram2.places)
    if not (diff - {Place.dyadic()}):
        raise AssertionError("purely dyadic symmetric difference cannot happen over Q")
    if REAL in diff:
        v0 = REAL
        case = CASE_REAL
    else:
        v0 = min((v for v in diff if v.is_odd), key=Place.sort_key)
        case = CASE_ODD_PLACE
    others = (set(ram1.places) | set(ram2.places)) - {v0}
    constraints = [LocalSquareConstraint(v0, True)]
    constraints += [LocalSquareConstraint(v, False) for v in sorted(others, key=Place.sort_key)]
    c = find_square_class(constraints, bound=bound)
    e1 = embeds(c, d1)
    e2 = embeds(c, d2)
    if e1 == e2:
        raise AssertionError(f"witness {c} failed verification on {d1}, {d2}")
    return DistinguishReport(c, 1 if e1 else 2, case, v0, (e1, e2))


# ---------------------------------------------------------------------------
# the local divisor step for Pfister forms


@dataclass(frozen=True)
class CruxReport:
    """A (d-1)-Pfister dividing exactly one of two d-Pfister forms."""

    gamma: PfisterForm
    divides: int
    case_tag: str
    verification: tuple[bool, bool]


def _qt_anisotropic(form: DiagonalForm) -> bool:
    """Anisotropy of a monomial form over Q(t): both t-residues anisotropic over Q."""
    pair = residues_at(form, "t")
    first_aniso = pair.first.dim == 0 or not is_isotropic(pair.first)
    second_aniso = pair.second.dim == 0 or not is_isotropic(pair.second)
    return (pair.first.dim > 0 or pair.second.dim > 0) and first_aniso and second_aniso


def _verify_divides(gamma: PfisterForm, phi: PfisterForm, base: str) -> bool:
    if base == "Q":
        return bool(pfister_divides(gamma, phi))
    verdict = pfister_divides_qt(gamma, phi)
    if verdict.verdict == "inconclusive":
        raise InconclusiveError(
            f"divisibility of {phi} by {gamma} undecided: {verdict.reason}"
        )
    return verdict.verdict == "yes"


def local_divisor_witness(
    phi1: PfisterForm, phi2: PfisterForm, v: int | Literal["t"]
) -> CruxReport:
    """A (d-1)-Pfister divisor separating two d-Pfister forms at a valuation.

    Preconditions: both forms anisotropic over the base field (Q, or Q(t)
    with monomial slots for the t-adic valuation), and at v either exactly
    one is ramified, or both ramify with residue forms that are not
    Witt-equivalent over the residue field.

    Construction, after slot normalization at v:

    * both ramified, different residues: gamma is the unit-slot
      (d-1)-Pfister of phi1; its reduction divides phi1's residue but not
      phi2's, which already separates.
    * exactly one ramified, the unramified one locally anisotropic (its
      residue form anisotropic over the residue field): gamma keeps the
      ramified slot of the ramified form and drops its first unit slot;
      any anisotropic multiple of gamma over the completion has a nonzero
      second residue, which the unramified form cannot match.
    * exactly one ramified, the unramified one locally hyperbolic (only
      over Q at an odd prime, by anisotropy over the base): run the
      binary-subform construction on the unramified form's unit part to
      get <r,s> locally isotropic, and take gamma = <<-rs>> (valid for
      d = 2, the only case reachable over Q).

    The returned gamma is verified to divide exactly one input via
    pfister_divides / a conclusive pfister_divides_qt verdict; an
    inconclusive verification raises rather than guessing.
    """
    base = "Qt" if (phi1.base == "Qt" or phi2.base == "Qt" or v == "t") else "Q"
    if base == "Qt" and v != "t":
        raise DomainError("monomial forms are handled at the t-adic valuation only")
    if phi1.d != phi2.d or phi1.d < 2:
        raise DomainError("need two d-Pfister forms with the same d >= 2")

    if base == "Q":
        if is_isotropic(phi1.realized()) or is_isotropic(phi2.realized()):
            raise DomainError("both forms must be anisotropic over Q")
    else:
        if not (_qt_anisotropic(phi1.realized()) and _qt_anisotropic(phi2.realized())):
            raise DomainError("both forms must be anisotropic over Q(t)")

    n1 = normalize_pfister_slots(phi1, v)
    n2 = normalize_pfister_slots(phi2, v)
    r1 = residues_at(n1.realized(), v)
    r2 = residues_at(n2.realized(), v)

    if r1.ramified and r2.ramified:
        # "different ramification" compares the unit-slot reductions, i.e.
        # the first residue forms of the normalized presentations
        res_equiv = (
            quadform.is_witt_equivalent(r1.first, r2.first)
            if v == "t"
            else _fp_first_residues_equiv(r1, r2, int(v))
        )
        if res_equiv:
            raise DomainError("both forms ramify with the same residues: no separating divisor here")
        unit_slots = _unit_slots(n1, v)
        gamma: PfisterForm = PfisterForm(tuple(unit_slots))
        case = "both-ramified"
    elif r1.ramified or r2.ramified:
        ram, unram = (n1, n2) if r1.ramified else (n2, n1)
        unram_res = r2 if r1.ramified else r1
        locally_aniso = unram_res.second.dim == 0 and not _residue_isotropic(unram_res.first, v)
        if locally_aniso:
            slots = _unit_slots(ram, v)
            odd = _odd_slot(ram, v)
            gamma = PfisterForm(tuple(slots[1:]) + (odd,))
            case = "one-ramified-anisotropic"
        else:
            if base != "Q":
                raise DomainError(
                    "a locally hyperbolic monomial Pfister form is hyperbolic over Q(t), "
                    "contradicting anisotropy"
                )
            if phi1.d != 2:
                raise DomainError(
                    "the locally hyperbolic branch is reachable over Q only for d = 2"
                )
            unit_part = DiagonalForm(tuple(e for e in unram.realized().sf_entries() if valuation(e, int(v)) == 0))
            w = isotropic_binary_subform(DiagonalForm(tuple(Fraction(e) for e in unit_part.sf_entries())), int(v))
            gamma = PfisterForm.of(squarefree_part(-w.r * w.s))
            case = "one-ramified-hyperbolic"
    else:
        raise DomainError(f"neither form ramifies at {v}: no separating divisor here")

    gamma = gamma.stripped()
    div1 = _verify_divides(gamma, phi1, base)
    div2 = _verify_divides(gamma, phi2, base)
    if div1 == div2:
        raise AssertionError(f"divisor {gamma} failed verification on {phi1}, {phi2}")
    return CruxReport(gamma, 1 if div1 else 2, case, (div1, div2))


def _fp_first_residues_equiv(r1: quadform.ResiduePair, r2: quadform.ResiduePair, p: int) -> bool:
    """Witt-equivalence of first residues over F_p (hyperbolicity of the difference)."""
    e1 = tuple(int(x) for x in r1.first.sf_entries())
    e2 = tuple(int(-x) for x in r2.first.sf_entries())
    if (len(e1) + len(e2)) % 2:
        return False
    return quadform._fp_witt_trivial(e1 + e2, p)


def _residue_isotropic(first: DiagonalForm, v: int | Literal["t"]) -> bool:
    if first.dim == 0:
        return False
    if v == "t":
        return is_isotropic(first)
    p = int(v)
    ent = first.sf_entries()
    if len(ent) >= 3:
        return True
    if len(ent) == 1:
        return False
    from .arith import legendre

    return legendre(-ent[0] * ent[1], p) == 1


def _unit_slots(pf: PfisterForm, v: int | Literal["t"]) -> list:
    if v == "t":
        return [m for m in pf.slots if isinstance(m, Monomial) and m.exp % 2 == 0]
    return [c for c in pf.slots if valuation(c, int(v)) == 0]


def _odd_slot(pf: PfisterForm, v: int | Literal["t"]):
    if v == "t":
        odd = [m for m in pf.slots if isinstance(m, Monomial) and m.exp % 2 == 1]
    else:
        odd = [c for c in pf.slots if valuation(c, int(v)) != 0]
    assert len(odd) == 1
    return odd[0]


def distinguish_pfister(
    phi1: PfisterForm, phi2: PfisterForm, bound: int = DEFAULT_SEARCH_BOUND
) -> DistinguishReport | None:
    """A (d-1)-Pfister form dividing exactly one of two anisotropic d-Pfister forms over Q.

    None iff the forms are isometric.  If the difference ramifies at an
    odd prime, the local divisor step runs there; otherwise the forms
    differ at the real place, one of them is locally hyperbolic there, and
    the 1-Pfister on its first positive slot divides it and cannot divide
    the definite one (over Q the real case only occurs for d = 2).  Either
    way the divisor is verified on both inputs before being returned.
    """
    if phi1.base != "Q" or phi2.base != "Q":
        raise DomainError("distinguish_pfister works over Q; use local_divisor_witness at t for Q(t)")
    if phi1.d != phi2.d:
        raise DomainError("the forms must be Pfister forms of the same d")
    if phi1.d < 2:
        raise DomainError("need d >= 2")
    f1 = phi1.realized()
    f2 = phi2.realized()
    if is_isotropic(f1) or is_isotropic(f2):
        raise DomainError("both forms must be anisotropic over Q")
    if is_isometric(f1, f2):
        return None

    support = sorted(
        {p for s in phi1.stripped().slots + phi2.stripped().slots for p, _ in _odd_primes_of(s)},
    )
    for p in support:
        r1 = residues_at(f1, p)
        r2 = residues_at(f2, p)
        if r1.ramified != r2.ramified or (
            r1.ramified and r2.ramified and not _fp_first_residues_equiv(r1, r2, p)
        ):
            rep = local_divisor_witness(phi1, phi2, p)
            return DistinguishReport(
                rep.gamma, rep.divides, CASE_ODD_PLACE, Place.odd(p), rep.verification
            )

    # no odd-place disagreement: the forms differ at the real place
    s1 = invariants(f1).signature
    s2 = invariants(f2).signature
    if s1 == s2:
        raise AssertionError(f"{phi1} and {phi2}: no separating place found")
    indef, idx = (phi1, 1) if abs(s1) < f1.dim else (phi2, 2)
    pos = [s for s in indef.stripped().slots if s > 0]
    assert pos, "a locally hyperbolic Pfister form has a positive slot"
    gamma = PfisterForm.of(squarefree_part(pos[0]))
    div1 = bool(pfister_divides(gamma, phi1, bound=bound))
    div2 = bool(pfister_divides(gamma, phi2, bound=bound))
    if div1 == div2:
        raise AssertionError(f"real-case divisor {gamma} failed verification")
    return DistinguishReport(gamma, 1 if div1 else 2, CASE_REAL, REAL, (div1, div2))


def _odd_primes_of(slot) -> list[tuple[int, int]]:
    from .arith import factorize

    val = slot.coeff if isinstance(slot, Monomial) else slot
    n = Fraction(val).numerator * Fraction(val).denominator
    return [(p, e) for p, e in factorize(n).factors if p != 2]


# ---------------------------------------------------------------------------
# tractability


@dataclass(frozen=True)
class TractableConfig:
    """Six square classes (a1,a2,a3,b1,b2,b3) over Q or over a completion."""

    a: tuple[int, int, int]
    b: tuple[int, int, int]
    base: Place | None = None  # None means Q


@dataclass(frozen=True)
class TractableReport:
    premises_hold: bool
    conclusion_holds: bool

    @property
    def violation(self) -> bool:
        return self.premises_hold and not self.conclusion_holds


def _split_over(cfg_base: Place | None, x: int, y: int) -> bool:
    if cfg_base is None:
        return ram_set(QuaternionAlgebra(x, y)).is_empty
    return hilbert(x, y, cfg_base) == 1


def _isomorphic_over(cfg_base: Place | None, x1: int, y1: int, x2: int, y2: int) -> bool:
    if cfg_base is None:
        return is_isomorphic(QuaternionAlgebra(x1, y1), QuaternionAlgebra(x2, y2))
    return hilbert(x1, y1, cfg_base) == hilbert(x2, y2, cfg_base)


def tractable_verify(cfg: TractableConfig) -> TractableReport:
    """Check the tractability premises and conclusion for one configuration.

    Premises: the six cross algebras (a_i, b_j), i != j, are split and the
    three diagonal algebras (a_i, b_i) are pairwise isomorphic.
    Conclusion: the diagonal algebras are split.  A violation (premises
    without conclusion) exists over Q_2 but never over Q or over a
    nondyadic completion.
    """
    a, b, base = cfg.a, cfg.b, cfg.base
    premises = all(
        _split_over(base, a[i], b[j]) for i in range(3) for j in range(3) if i != j
    ) and all(_isomorphic_over(base, a[0], b[0], a[i], b[i]) for i in (1, 2))
    conclusion = all(_split_over(base, a[i], b[i]) for i in range(3))
    return TractableReport(premises, conclusion)


def tractable_search_local(v: Place) -> TractableConfig | None:
    """Exhaustively scan all local configurations at v for a tractability violation.

    Scans the full 4^6 (odd p) or 8^6 (dyadic) configuration space over
    the canonical local square-class representatives, in lexicographic
    order, and returns the first violating configuration, or None when the
    exhaustive scan proves none exists (as it does at every odd prime).
    """
    if v.is_real:
        raise DomainError("tractability search runs at finite places")
    from .scans import first_tractable_violation

    reps = square_classes(v)
    n = len(reps)
    table = bytearray(n * n)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i * n + j] = 1 if hilbert(x, y, v) == 1 else 0
    idx = first_tractable_violation(bytes(table), n)
    if idx < 0:
        return None
    digits = []
    for _ in range(6):
        digits.append(idx % n)
        idx //= n
    digits.reverse()
    i1, i2, i3, j1, j2, j3 = digits
    cfg = TractableConfig((reps[i1], reps[i2], reps[i3]), (reps[j1], reps[j2], reps[j3]), v)
    rep = tractable_verify(cfg)
    assert rep.violation, "scan returned a non-violation"
    return cfg


# ---------------------------------------------------------------------------
# one step of the common-subfield tower construction


@dataclass(frozen=True)
class FunctionFieldStepReport:
    """One verified step of the construction keeping two distinct algebras alive.

    c: the chosen square class, with Q(sqrt(c)) inside exactly one algebra
    (the `contains`-th input).  form: q = <c> perp (pure norm form of the
    other algebra), anisotropic over Q with nonsquare determinant c, hence
    similar to none of the two norm forms nor to the difference kernel;
    extending scalars to the function field of q therefore preserves both
    algebras, their distinctness, and adds sqrt(c) to both.
    albert_*: Witt-level check that the difference of the two norm forms
    has 4-dimensional anisotropic part isometric to a scaled
    <<a1*a2, b>>.
    """

    c: int
    contains: int
    form: DiagonalForm
    anisotropic: bool
    det_class: int
    det_nonsquare: bool
    not_similar: dict[str, bool]
    albert_witt_index: int
    albert_scale: int
    albert_matched: bool


def function_field_step(
    q1: QuaternionAlgebra, q2: QuaternionAlgebra, bound: int = DEFAULT_SEARCH_BOUND
) -> FunctionFieldStepReport:
    """The quadric step on two non-isomorphic division algebras sharing slot b."""
    if q1.b != q2.b:
        raise DomainError("the two algebras must share their second slot")
    if ram_set(q1).is_empty or ram_set(q2).is_empty:
        raise DomainError("both algebras must be division")
    if is_isomorphic(q1, q2):
        raise DomainError("the algebras must not be isomorphic")
    b = q1.b
    pure1 = DiagonalForm.of(-q1.a, -b, q1.a * b)
    pure2 = DiagonalForm.of(-q2.a, -b, q2.a * b)

    def represents(form: DiagonalForm, t: int) -> bool:
        # form is anisotropic (division), so representing t is isotropy of form perp <-t>
        return is_isotropic(form.perp(DiagonalForm.of(-t)))

    chosen = None
    count = 0
    for c in iter_square_classes():
        if count >= bound:
            raise InconclusiveError(f"no one-sided square class within {bound} candidates")
        count += 1
        if c == 1:
            continue
        in1 = represents(pure1, -c)
        in2 = represents(pure2, -c)
        if in1 != in2:
            chosen = (c, 1 if in1 else 2)
            break
    assert chosen is not None
    c, contains = chosen
    other = pure2 if contains == 1 else pure1
    q_form = DiagonalForm.of(c).perp(other)
    aniso = not is_isotropic(q_form)
    det = invariants(q_form).det
    det_nonsquare = det != 1
    # dim-4 similar forms share their determinant class; the three reference
    # forms are Pfister forms with square determinant, q has det ~ c
    not_similar = {
        "phi1": det != invariants(PfisterForm.of(q1.a, b).realized()).det,
        "phi2": det != invariants(PfisterForm.of(q2.a, b).realized()).det,
        "gamma": det != invariants(PfisterForm.of(squarefree_part(q1.a * q2.a), b).realized()).det,
    }
    phi1 = PfisterForm.of(q1.a, b).realized()
    phi2 = PfisterForm.of(q2.a, b).realized()
    diff = phi1.perp(phi2.neg())
    wi = witt_index(diff)
    gamma_form = PfisterForm.of(squarefree_part(q1.a * q2.a), b).realized()
    scale = None
    if diff.dim - 2 * wi == gamma_form.dim:
        target = _an_part_invariants(diff, wi)
        scount = 0
        for s in iter_square_classes():
            if scount >= bound:
                break
            scount += 1
            cand = invariants(gamma_form.scaled(s))
            if (
                cand.dim == target.dim
                and cand.det == target.det
                and cand.signature == target.signature
                and cand.hasse_minus == target.hasse_minus
            ):
                scale = s
                break
    return FunctionFieldStepReport(
        c=c,
        contains=contains,
        form=q_form,
        anisotropic=aniso,
        det_class=det,
        det_nonsquare=det_nonsquare,
        not_similar=not_similar,
        albert_witt_index=wi,
        albert_scale=scale if scale is not None else 0,
        albert_matched=scale is not None,
    )


def _an_part_invariants(q: DiagonalForm, strips: int) -> quadform.FormInvariants:
    inv = invariants(q)
    for _ in range(strips):
        inv = quadform._strip_plane(inv)
    return inv
