"""Integer factorization by trial division into a smooth part and cofactor.

The factorization displays split a determinant value into its small-prime
part and whatever large factors remain; primality of the
cofactor is decided by deterministic Miller-Rabin for the ranges that
occur here (below 3.3 * 10^24) and reported as "probable prime" beyond.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Witnesses proving primality for every n < 3,317,044,064,679,887,385,961,981
# (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def _miller_rabin(n: int, base: int) -> bool:
    if n % base == 0:
        return n == base
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """True iff n is prime; deterministic below the Miller-Rabin limit."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return True
        if n % p == 0:
            return False
    return all(_miller_rabin(n, b) for b in _MR_WITNESSES)


def primality_label(n: int) -> str:
    if n == 1:
        return "unit"
    if not is_prime(n):
        return "composite"
    return "prime" if n < _MR_DETERMINISTIC_LIMIT else "probable prime"


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> list[int]:
    """Simple sieve of Eratosthenes (memoized; bounds repeat heavily)."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    i = 2
    while i * i <= bound:
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        i += 1
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class FactorReport:
    """sign * prod(prime^exp) * cofactor = input, primes all <= bound."""

    input: int
    sign: int
    small_factors: tuple[tuple[int, int], ...]
    cofactor: int
    bound: int

    def reconstruct(self) -> int:
        acc = self.sign
        for p, e in self.small_factors:
            acc *= p**e
        return acc * self.cofactor

    @property
    def smooth_part(self) -> int:
        acc = 1
        for p, e in self.small_factors:
            acc *= p**e
        return acc

    def render(self) -> str:
        """Display form: ascending primes, then the cofactor."""
        parts = []
        if self.sign < 0:
            parts.append("-1")
        for p, e in self.small_factors:
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        smooth = "·".join(parts)
        if self.cofactor != 1:
            return f"{smooth} · {self.cofactor}" if smooth else str(self.cofactor)
        return smooth if smooth else "1"


def factor_smooth(value: int, bound: int = 10**6) -> FactorReport:
    """Complete trial division by all primes <= bound.

    The cofactor carries everything not divisible by any prime <= bound.
    """
    if value == 0:
        raise ValueError("cannot factor zero")
    if bound < 2:
        raise ValueError("bound must be >= 2")
    sign = 1 if value > 0 else -1
    n = abs(value)
    factors: list[tuple[int, int]] = []
    for p in primes_up_to(bound):
        if p * p > n and n > 1:
            # Remaining n is prime; record it only if within the bound.
            if n <= bound:
                factors.append((n, 1))
                n = 1
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        if n == 1:
            break
    return FactorReport(
        input=value,
        sign=sign,
        small_factors=tuple(factors),
        cofactor=n,
        bound=bound,
    )
