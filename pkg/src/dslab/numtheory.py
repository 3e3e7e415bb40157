"""Integer number theory: factorization, Euler phi, coprime residues,
and the classical pair parameters B(m,n), D(m,n), P(m,n) that control
how strongly two coprime-fraction arc systems can overlap.

Everything here is exact.  Factorization is deterministic trial
division backed by a grow-only prime sieve; the sizes of interest
(n up to about 2^16 on exact paths, 2^32 for block mass sums) keep
that comfortably fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

_SIEVE_LIMIT = 1 << 8
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                      47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
                      107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163,
                      167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
                      229, 233, 239, 241, 251]


def _grow_sieve(limit: int) -> None:
    """Extend the shared prime table to cover [2, limit]."""
    global _SIEVE_LIMIT, _PRIMES
    if limit <= _SIEVE_LIMIT:
        return
    while _SIEVE_LIMIT < limit:
        _SIEVE_LIMIT *= 2
    sieve = bytearray([1]) * (_SIEVE_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(_SIEVE_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    _PRIMES = [i for i, flag in enumerate(sieve) if flag]


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, from the shared sieve."""
    _grow_sieve(limit)
    from bisect import bisect_right

    return _PRIMES[: bisect_right(_PRIMES, limit)]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, primes increasing."""

    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        v = 1
        for p, e in self.pairs:
            v *= p**e
        return v

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)


def factorize(n: int) -> Factorization:
    """Canonical prime factorization of n >= 1; n == 1 gives the empty list."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    pairs = []
    rest = n
    _grow_sieve(min(max(isqrt(n) + 1, 16), 1 << 16))
    for p in _PRIMES:
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            pairs.append((p, e))
    if rest > 1 and isqrt(rest) > _SIEVE_LIMIT:
        # Sieve capped at 2^16; finish by plain odd trial division.
        d = _SIEVE_LIMIT + 1
        while d * d <= rest:
            if rest % d == 0:
                e = 0
                while rest % d == 0:
                    rest //= d
                    e += 1
                pairs.append((d, e))
            d += 2
    if rest > 1:
        pairs.append((rest, 1))
    pairs.sort()
    return Factorization(tuple(pairs))


@lru_cache(maxsize=1 << 16)
def euler_phi(n: int) -> int:
    """phi(n): count of 1 <= m <= n coprime to n, multiplicative form."""
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    phi = 1
    for p, e in factorize(n).pairs:
        phi *= (p - 1) * p ** (e - 1)
    return phi


@lru_cache(maxsize=4096)
def coprime_residues(n: int) -> tuple[int, ...]:
    """Increasing residues m in [1, n] with gcd(m, n) = 1."""
    if n < 1:
        raise ValueError(f"coprime_residues requires n >= 1, got {n}")
    return tuple(m for m in range(1, n + 1) if gcd(m, n) == 1)


@dataclass(frozen=True)
class PairParams:
    """Overlap-control parameters for a pair of denominators m != n.

    b = m*n / gcd(m,n)^2, d = max(n*psi(m), m*psi(n)) / gcd(m,n), and
    p_product multiplies (1 - 1/p)^(-1) over the primes p | b with
    p > d (empty product = 1).  These are the quantities in the
    Strauch / Pollington-Vaughan overlap comparison.
    """

    b: int
    d: Fraction
    p_product: Fraction


def pair_params(m: int, n: int, psi_m: Fraction, psi_n: Fraction) -> PairParams:
    """Exact B, D and the prime product P for a denominator pair."""
    if m == n:
        raise ValueError("pair parameters are undefined for m == n")
    if m < 1 or n < 1:
        raise ValueError("pair parameters require positive m, n")
    if psi_m < 0 or psi_n < 0:
        raise ValueError("psi values must be non-negative")
    g = gcd(m, n)
    b = (m * n) // (g * g)
    d = max(n * Fraction(psi_m), m * Fraction(psi_n)) / g
    prod = Fraction(1)
    for p in factorize(b).primes():
        if p > d:
            prod *= Fraction(p, p - 1)
    return PairParams(b=b, d=d, p_product=prod)
