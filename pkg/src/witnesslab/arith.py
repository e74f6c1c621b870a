"""Exact integer/rational arithmetic: factorization, squarefree parts, Legendre symbols.

Everything downstream (places, symbols, forms) reduces to the three
primitives in this module.  All arithmetic is exact; a factorization that
cannot be completed within budget raises ResourceError rather than being
silently guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, ResourceError

Rational = int | Fraction

#: trial division bound; beyond it Pollard rho takes over
TRIAL_BOUND = 10**6

#: default total Pollard-rho iteration budget per factorize() call
DEFAULT_RHO_BUDGET = 200_000

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the integer sizes this package accepts."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Sign times a product of prime powers, primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def squarefree_part(self) -> int:
        s = self.sign
        for p, e in self.factors:
            if e % 2:
                s *= p
        return s


def _rho_factor(n: int, budget: list[int]) -> int:
    """One nontrivial factor of odd composite n via Brent's rho, or raise."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        q = 1
        while d == 1:
            if budget[0] <= 0:
                raise ResourceError(f"factorization budget exhausted on {n}")
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            budget[0] -= 1
            q = q * abs(x - y) % n
            if budget[0] % 64 == 0 or x == y:
                d = math.gcd(q, n)
                q = 1
        if d != n:
            return d
        c += 1


def _factor_into(n: int, out: dict[int, int], budget: list[int]) -> None:
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    d = 3
    while d * d <= n and d <= TRIAL_BOUND:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    if n == 1:
        return
    if d * d > n or is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _rho_factor(n, budget)
    _factor_into(f, out, budget)
    _factor_into(n // f, out, budget)


@lru_cache(maxsize=65536)
def factorize(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    """Exact factorization of a nonzero integer.

    Raises DomainError on 0 and ResourceError when the Pollard-rho budget
    is exhausted before the cofactor is fully factored.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = -1 if n < 0 else 1
    exps: dict[int, int] = {}
    _factor_into(abs(n), exps, [rho_budget])
    exps.pop(1, None)
    return Factorization(sign, tuple(sorted(exps.items())))


def squarefree_part(q: Rational, rho_budget: int = DEFAULT_RHO_BUDGET) -> int:
    """Canonical square-class representative of a nonzero rational.

    For n/d in lowest terms this is the squarefree part of n*d (multiplying
    by d**2 does not change the class), so the result is always a squarefree
    integer with q divided by it a rational square.
    """
    if isinstance(q, Fraction):
        if q == 0:
            raise DomainError("0 has no square class")
        n = q.numerator * q.denominator
    else:
        n = int(q)
    return factorize(n, rho_budget).squarefree_part()


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_part(n) == n


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p: 0, +1 or -1."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def valuation(q: Rational, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational."""
    if q == 0:
        raise DomainError("0 has no finite valuation")
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if isinstance(q, Fraction):
        return valuation(q.numerator, p) - valuation(q.denominator, p)
    n = int(q)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
