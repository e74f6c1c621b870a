import pytest

from conftest import squarefree_values
from witnesslab.errors import DomainError
from witnesslab.oracle import (
    SearchBudget,
    hilbert_bruteforce,
    isotropy_search,
    residue_isotropy,
)
from witnesslab.places import DYADIC, REAL, Place
from witnesslab.quadform import DiagonalForm, is_isotropic


def test_budget_validation():
    with pytest.raises(DomainError):
        SearchBudget(height=0)
    with pytest.raises(DomainError):
        SearchBudget(odd_exponent=2)  # below the Hensel threshold


def test_hilbert_bruteforce_fixtures():
    assert hilbert_bruteforce(-1, -1, REAL) == -1
    assert hilbert_bruteforce(-1, -1, DYADIC) == -1
    assert hilbert_bruteforce(2, 5, Place.odd(5)) == -1
    assert hilbert_bruteforce(1, 7, DYADIC) == 1
    assert hilbert_bruteforce(-1, 2, DYADIC) == 1


def test_isotropy_search_fixtures():
    w = isotropy_search(DiagonalForm.of(1, 1, -2))
    assert w is not None
    assert sum(a * x * x for a, x in zip((1, 1, -2), w)) == 0 and any(w)
    assert isotropy_search(DiagonalForm.of(1, 1, 1, 1)) is None
    # anisotropic over Q_3, so no witness exists at any height
    assert isotropy_search(DiagonalForm.of(1, 3, 3, -2)) is None


def test_isotropy_search_various_dims(rng):
    for _ in range(80):
        dim = rng.randint(2, 4)
        entries = tuple(rng.choice(squarefree_values(10)) for _ in range(dim))
        w = isotropy_search(DiagonalForm.of(*entries), SearchBudget(height=200))
        if w is not None:
            assert any(w)
            assert sum(a * x * x for a, x in zip(entries, w)) == 0
            # one-directional soundness: a witness forces global isotropy
            assert is_isotropic(DiagonalForm.of(*entries))


def test_isotropy_search_zero_only_on_half():
    # the zero lives entirely in the back half: (0, y, z) with y = z
    w = isotropy_search(DiagonalForm.of(10, 1, -1))
    assert w is not None and any(w)
    assert 10 * w[0] ** 2 + w[1] ** 2 - w[2] ** 2 == 0


def test_residue_isotropy_fixtures():
    assert residue_isotropy((1, 1, 1), 3) == (1, 1, 1)
    assert residue_isotropy((1, 1), 3) is None  # -1 is not a residue mod 3
    assert residue_isotropy((1, -1), 5) == (1, 1)
    with pytest.raises(DomainError):
        residue_isotropy((3, 1), 3)
    with pytest.raises(DomainError):
        residue_isotropy((1, 2), 4)


def test_residue_isotropy_matches_local_analysis():
    # dim >= 3 over F_p is always isotropic (Chevalley-Warning)
    for p in (3, 5, 7):
        for a in (1, 2, -1):
            for b in (1, -2, 3 if p != 3 else 4):
                assert residue_isotropy((a % p or 1, b % p or 1, 1), p) is not None


def test_hilbert_bruteforce_agrees_with_formula():
    from witnesslab.brauer import hilbert

    places = [REAL, DYADIC] + [Place.odd(p) for p in (3, 5, 7, 11, 13, 17, 19)]
    for v in places:
        for a in squarefree_values(20):
            for b in squarefree_values(20):
                assert hilbert_bruteforce(a, b, v) == hilbert(a, b, v), (a, b, v)
