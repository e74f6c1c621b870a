from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from witnesslab.arith import (
    Factorization,
    factorize,
    is_prime,
    legendre,
    squarefree_part,
    valuation,
)
from witnesslab.errors import DomainError, ResourceError


def test_squarefree_part_examples():
    assert squarefree_part(18) == 2  # 18 = 2 * 3^2
    assert squarefree_part(Fraction(4, 9)) == 1
    assert squarefree_part(-50) == -2  # -50 = -2 * 5^2
    assert squarefree_part(1) == 1
    assert squarefree_part(-1) == -1


def test_squarefree_part_rejects_zero():
    with pytest.raises(DomainError):
        squarefree_part(0)
    with pytest.raises(DomainError):
        factorize(0)


def _is_rational_square(q: Fraction) -> bool:
    import math

    if q <= 0:
        return q == 0
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@given(
    st.fractions(
        min_value=Fraction(-(10**6)), max_value=Fraction(10**6), max_denominator=10**4
    ).filter(lambda q: q != 0)
)
@settings(max_examples=300, deadline=None)
def test_squarefree_quotient_is_square(q):
    s = squarefree_part(q)
    assert squarefree_part(s) == s  # squarefree and stable
    assert _is_rational_square(q / s)


@given(st.integers(min_value=-(10**9), max_value=10**9).filter(lambda n: n != 0))
@settings(max_examples=300, deadline=None)
def test_factorization_round_trip(n):
    f = factorize(n)
    assert f.value() == n
    primes = [p for p, _ in f.factors]
    assert primes == sorted(primes)
    assert all(is_prime(p) for p in primes)
    assert all(e >= 1 for _, e in f.factors)


def test_factorization_structure():
    assert factorize(-360) == Factorization(-1, ((2, 3), (3, 2), (5, 1)))


def test_factorization_budget_exceeded():
    n = (2**61 - 1) * (2**89 - 1)  # product of two large primes
    with pytest.raises(ResourceError):
        factorize(n, rho_budget=1_000)


def test_legendre_examples():
    assert legendre(1, 3) == 1
    # oracle: enumerate the squares mod 5
    squares_mod_5 = {x * x % 5 for x in range(1, 5)}
    assert 2 not in squares_mod_5
    assert legendre(2, 5) == -1
    # oracle: Euler criterion for (-1/7)
    assert pow(-1 % 7, (7 - 1) // 2, 7) == 7 - 1
    assert legendre(-1, 7) == -1
    assert legendre(6, 3) == 0


def test_legendre_rejects_non_odd_primes():
    for p in (2, 9, 15, 1, -3):
        with pytest.raises(DomainError):
            legendre(2, p)


def test_legendre_against_enumeration():
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_legendre_multiplicative(rng):
    primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    checked = 0
    while checked < 10_000:
        p = rng.choice(primes)
        a = rng.randint(-500, 500)
        b = rng.randint(-500, 500)
        if a % p == 0 or b % p == 0 or a == 0 or b == 0:
            continue
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)
        checked += 1


def test_valuation():
    assert valuation(18, 3) == 2
    assert valuation(Fraction(5, 4), 2) == -2
    assert valuation(7, 3) == 0
    with pytest.raises(DomainError):
        valuation(0, 3)


def test_is_prime_spot_checks():
    assert is_prime(2) and is_prime(3) and is_prime(97) and is_prime(2**61 - 1)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2**67 - 1)
