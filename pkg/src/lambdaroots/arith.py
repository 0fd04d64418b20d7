"""Exact integer arithmetic and the classical multiplicative functions.

Everything here works on Python ints capped at 2**63 - 1.  Factoring uses
trial division by small primes followed by a deterministic Miller-Rabin test
and Brent's variant of Pollard rho for whatever is left.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

MAX_INT = 2**63 - 1
TRIAL_LIMIT = 10**6

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition ``n = prod(p**e for p, e in factors)``."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _check_positive(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > MAX_INT:
        raise ValueError(f"{n} exceeds the 63-bit limit")
    return n


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
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


def _rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent)."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _rho(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=1 << 18)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    m = n
    exhausted = True
    for p in _small_primes():
        if p * p > m:
            exhausted = False
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if not exhausted:
            out[m] = 1
        else:
            _split(m, out)
    return tuple(sorted(out.items()))


def factor(n: int) -> Factorization:
    """Factor ``1 <= n <= 2**63 - 1``; ``factor(1)`` has no factors."""
    n = _check_positive(n)
    return Factorization(n, _factor_cached(n))


def omega(n: int) -> int:
    return len(factor(n).factors)


def radical(n: int) -> int:
    """Largest squarefree divisor of n."""
    return math.prod(factor(n).primes)


def euler_phi(n: int) -> int:
    result = 1
    for p, e in factor(n):
        result *= p ** (e - 1) * (p - 1)
    return result


def prime_power_exponent(p: int, e: int) -> int:
    """Exponent of the unit group mod p**e."""
    if p == 2:
        return 1 if e == 1 else (2 if e == 2 else 2 ** (e - 2))
    return p ** (e - 1) * (p - 1)


def carmichael(n: int) -> int:
    """Exponent E(n) of (Z/n)^x, i.e. the Carmichael function."""
    result = 1
    for p, e in factor(n):
        result = math.lcm(result, prime_power_exponent(p, e))
    return result


def mangoldt(n: int) -> float:
    fac = factor(n)
    if len(fac) == 1:
        return math.log(fac.factors[0][0])
    return 0.0


def mobius(n: int) -> int:
    fac = factor(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def iter_log(x: float, k: int) -> float:
    """Iterated logarithm clamped below at 1.

    ``iter_log(x, 1) = max(log x, 1)`` and
    ``iter_log(x, k) = max(log(iter_log(x, k - 1)), 1)``.
    """
    if x <= 0:
        raise ValueError("iter_log needs x > 0")
    if k < 1:
        raise ValueError("iter_log needs k >= 1")
    value = max(math.log(x), 1.0)
    for _ in range(k - 1):
        value = max(math.log(value), 1.0)
    return value


# -- prime enumeration -----------------------------------------------------

def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``s`` of length ``limit + 1`` with ``s[n]`` true iff n is prime."""
    limit = max(int(limit), 1)
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if s[p]:
            s[p * p :: p] = False
    return s


def primes_up_to(limit: int) -> list[int]:
    """All primes ``<= limit`` in increasing order."""
    if limit < 2:
        return []
    return np.flatnonzero(prime_sieve(limit)).tolist()


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


def primes_in_segment(lo: int, hi: int) -> np.ndarray:
    """Primes p with ``lo <= p < hi`` as an int64 array (segmented sieve)."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    seg = np.ones(hi - lo, dtype=bool)
    root = math.isqrt(hi - 1)
    base = _small_primes() if root <= TRIAL_LIMIT else primes_up_to(root)
    for p in base:
        if p > root:
            break
        start = max(p * p, (lo + p - 1) // p * p)
        seg[start - lo :: p] = False
    return np.flatnonzero(seg).astype(np.int64) + lo


SEGMENT = 1 << 18


def iter_primes(start: int = 2, stop: int | None = None) -> Iterator[int]:
    """Yield primes ``start <= p < stop`` lazily, segment by segment."""
    small = _small_primes()
    lo = max(start, 2)
    if lo <= small[-1]:
        for i in range(bisect.bisect_left(small, lo), len(small)):
            p = small[i]
            if stop is not None and p >= stop:
                return
            yield p
        lo = small[-1] + 1
    while stop is None or lo < stop:
        hi = lo + SEGMENT if stop is None else min(lo + SEGMENT, stop)
        for p in primes_in_segment(lo, hi).tolist():
            yield p
        lo = hi


def nth_prime(k: int) -> int:
    """The k-th prime, 1-indexed."""
    if k < 1:
        raise ValueError("nth_prime needs k >= 1")
    for i, p in enumerate(iter_primes(), start=1):
        if i == k:
            return p
    raise AssertionError("unreachable")
