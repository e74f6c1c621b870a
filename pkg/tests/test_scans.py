"""The two scan backends must agree exactly; the suite runs whichever is
selected but cross-checks the compiled one against the pure twin when
both are importable."""

import pytest

from witnesslab import _scan_py
from witnesslab import scans

try:
    from witnesslab import _fastscan
except ImportError:
    _fastscan = None

needs_ext = pytest.mark.skipif(_fastscan is None, reason="compiled extension not built")


def _squares(m):
    table = bytearray(m)
    for t in range(m):
        table[t * t % m] = 1
    return bytes(table)


def test_selected_backend_exposed():
    assert scans.BACKEND in ("cython", "python")
    assert callable(scans.exists_square_sum)


def test_pure_scan_basics():
    m = 27
    sq = _squares(m)
    # 1 + 0*t^2 = 1 is a square
    assert _scan_py.exists_square_sum(1, 5, m, sq)
    # 3 + 9 t^2 mod 27 is never a square: valuation 1 values only
    assert not _scan_py.exists_square_sum(3, 9, m, sq)


@needs_ext
def test_backends_agree_exists_square_sum(rng):
    for m in (27, 125, 256, 343):
        sq = _squares(m)
        for _ in range(300):
            a = rng.randrange(m)
            b = rng.randrange(m)
            assert _fastscan.exists_square_sum(a, b, m, sq) == _scan_py.exists_square_sum(
                a, b, m, sq
            )


def _symbol_table(v):
    from witnesslab.brauer import hilbert
    from witnesslab.places import square_classes

    reps = square_classes(v)
    n = len(reps)
    table = bytearray(n * n)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i * n + j] = 1 if hilbert(x, y, v) == 1 else 0
    return bytes(table), n


@needs_ext
def test_backends_agree_tractable_scan():
    from witnesslab.places import DYADIC, Place

    for v in (Place.odd(3), Place.odd(5), DYADIC):
        table, n = _symbol_table(v)
        assert _fastscan.first_tractable_violation(table, n) == _scan_py.first_tractable_violation(
            table, n
        )


def test_tractable_scan_finds_known_violation():
    # synthetic 3-class table: division exactly on the diagonal.  A violating
    # tuple needs pairwise distinct a's and b's matched up, so the lex-first
    # one is (0,1,2, 0,1,2), flat index 140 in base 3.
    n = 3
    table = bytearray(1 for _ in range(n * n))
    for i in range(n):
        table[i * n + i] = 0
    idx = _scan_py.first_tractable_violation(bytes(table), n)
    assert idx == 140
    digits = []
    for _ in range(6):
        digits.append(idx % n)
        idx //= n
    assert digits[::-1] == [0, 1, 2, 0, 1, 2]


def test_tractable_scan_two_classes_never_violates():
    # with two classes some a_i repeat, forcing a division cross: no violation
    for bits in range(16):
        table = bytes((bits >> k) & 1 for k in range(4))
        assert _scan_py.first_tractable_violation(table, 2) == -1
