import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdaroots import arith


def brute_max_order(n):
    best = 1
    for a in range(1, n + 1):
        if math.gcd(a, n) != 1:
            continue
        k, x = 1, a % n
        while x != 1 % n:
            x = x * a % n
            k += 1
        best = max(best, k)
    return best


@pytest.mark.parametrize("n, expected", [
    (12, ((2, 2), (3, 1))),
    (1, ()),
    (1024, ((2, 10),)),
])
def test_factor_examples(n, expected):
    assert arith.factor(n).factors == expected


def test_factor_rejects_zero_and_overflow():
    with pytest.raises(ValueError):
        arith.factor(0)
    with pytest.raises(ValueError):
        arith.factor(2**63)


def test_factor_large_semiprimes():
    # both factors exceed the trial-division limit
    n = 1000003 * 1000033
    assert arith.factor(n).factors == ((1000003, 1), (1000033, 1))
    n = 2147483647 * 2147483659
    assert arith.factor(n).factors == ((2147483647, 1), (2147483659, 1))
    assert arith.factor(2**61 - 1).factors == ((2**61 - 1, 1),)
    assert arith.factor(2**62).factors == ((2, 62),)


def test_factor_roundtrip_to_million():
    for n in range(1, 10**6 + 1, 1):
        fac = arith.factor(n)
        assert math.prod(p**e for p, e in fac) == n
        if n % 9973 == 0:
            assert all(arith.is_prime(p) for p in fac.primes)
            assert list(fac.primes) == sorted(set(fac.primes))


@given(st.integers(min_value=1, max_value=2**63 - 1))
@settings(max_examples=200, deadline=None)
def test_factor_invariants_random(n):
    fac = arith.factor(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(arith.is_prime(p) and e >= 1 for p, e in fac)
    assert list(fac.primes) == sorted(set(fac.primes))


def test_is_prime_matches_sieve():
    s = arith.prime_sieve(20000)
    assert [arith.is_prime(n) for n in range(20001)] == s.tolist()
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321):
        assert not arith.is_prime(n)


@pytest.mark.parametrize("n, w, s, phi", [
    (12, 2, 6, 4), (1, 0, 1, 1), (30, 3, 30, 8), (8, 1, 2, 4), (49, 1, 7, 42),
])
def test_multiplicative_functions(n, w, s, phi):
    assert arith.omega(n) == w
    assert arith.radical(n) == s
    assert arith.euler_phi(n) == phi


def test_carmichael_examples():
    assert arith.carmichael(7) == 6
    assert arith.carmichael(8) == brute_max_order(8) == 2
    assert arith.carmichael(12) == brute_max_order(12) == 2


def test_carmichael_matches_brute_force():
    for n in range(1, 400):
        assert arith.carmichael(n) == brute_max_order(n), n


def test_carmichael_divides_phi():
    for n in range(2, 10**5 + 1):
        assert arith.euler_phi(n) % arith.carmichael(n) == 0


def test_radical_of_exponent_equals_radical_of_phi():
    for n in range(3, 10**4 + 1):
        assert arith.radical(arith.carmichael(n)) == arith.radical(arith.euler_phi(n))


def test_mangoldt():
    assert arith.mangoldt(8) == pytest.approx(math.log(2))
    assert arith.mangoldt(6) == 0
    assert arith.mangoldt(7) == pytest.approx(math.log(7))
    assert arith.mangoldt(1) == 0


def test_chebyshev_normalization():
    N = 10**6
    s = arith.prime_sieve(N)
    total = 0.0
    for p in np.flatnonzero(s).tolist():
        pk = p
        while pk <= N:
            total += math.log(p)
            pk *= p
    assert abs(total / N - 1) < 1e-3


@pytest.mark.parametrize("N, expected", [
    (10, [2, 3, 5, 7]), (1, []), (0, []), (30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
])
def test_primes_up_to(N, expected):
    assert arith.primes_up_to(N) == expected


def test_segmented_primes_agree_with_sieve():
    s = arith.prime_sieve(3 * 10**6)
    ref = np.flatnonzero(s)
    got = np.concatenate([arith.primes_in_segment(lo, lo + 250_001)
                          for lo in range(0, 3 * 10**6 + 1, 250_001)])
    assert np.array_equal(got[got <= 3 * 10**6], ref)
    assert list(arith.iter_primes(999_980, 1_000_100)) == [
        p for p in range(999_980, 1_000_100) if arith.is_prime(p)]


def test_nth_prime():
    assert [arith.nth_prime(k) for k in range(1, 6)] == [2, 3, 5, 7, 11]


def test_iter_log():
    assert arith.iter_log(2, 1) == 1
    assert arith.iter_log(math.e**2, 1) == pytest.approx(2)
    assert arith.iter_log(math.e ** (math.e**3), 2) == pytest.approx(3)
    assert arith.iter_log(0.5, 3) == 1
    with pytest.raises(ValueError):
        arith.iter_log(0, 1)
    with pytest.raises(ValueError):
        arith.iter_log(-1.0, 2)


def test_divisors_and_mobius():
    assert arith.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [arith.mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
