import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdaroots import arith
from lambdaroots.checks import random_instance
from lambdaroots.sieve import (
    SieveInstance,
    instance_stats,
    rosser_weight_direct,
    rosser_weights,
    shifted_lower_bound,
    sigma,
    smallest_positive_c2,
    weight_sums,
)


def squarefree_divisors(primes):
    out = [1]
    for p in primes:
        out += [d * p for d in out]
    return out


def test_table_examples():
    t = rosser_weights(100, 5)
    assert t.primes == (2, 3, 5)
    assert t[1] == 1
    assert t[6] == 1
    assert t[30] == 0
    assert t[2] == t[3] == t[5] == -1
    with pytest.raises(ValueError):
        t.weight(7)
    with pytest.raises(ValueError):
        rosser_weights(1.5, 5)
    with pytest.raises(ValueError):
        rosser_weights(100, 61)


def test_sigma_examples():
    t = rosser_weights(100, 5)
    assert sigma(t, 1) == 1
    assert sigma(t, 6) == t[1] + t[2] + t[3] + t[6] == 0
    assert all(sigma(t, p) <= 0 for p in t.primes)
    with pytest.raises(ValueError):
        sigma(t, 4)


def test_table_matches_direct_definition():
    for z in (2, 3, 7, 13, 23):
        for y in (4, 17.5, 100, 1000, 10**5):
            t = rosser_weights(y, z)
            for d in squarefree_divisors(t.primes):
                assert t[d] == rosser_weight_direct(d, y), (z, y, d)


def test_sigma_array_matches_divisor_sum():
    t = rosser_weights(300, 11)
    sig = t.sigma_array()
    for mask in range(len(sig)):
        n = math.prod(p for i, p in enumerate(t.primes) if mask >> i & 1)
        assert sig[mask] == sigma(t, n)


@pytest.mark.parametrize("z", [2, 3, 5, 11, 17, 23, 29, 30])
def test_sigma_sign(z):
    for y in (z * z, 2 * z * z, z**3, z**4):
        sig = rosser_weights(y, z).sigma_array()
        assert sig[0] == 1
        assert (sig[1:] <= 0).all()


def test_weight_sums_two_term():
    ws = weight_sums(rosser_weights(16, 2))
    # lambda_1 = 1, lambda_2 = -1, sigma_1 = 1, sigma_2 = 0
    assert ws.abs_sum == 2
    assert ws.main_sum == 1


def test_weight_sums_against_lambda_form():
    # sum_n sigma_n / phi(n) = sum_d lambda_d / phi(d) * prod_{p not | d} p / (p - 1)
    for z in (3, 7, 13, 19):
        for y in (z * z, z**3):
            t = rosser_weights(y, z)
            expect = Fraction(0)
            for d, lam in t.support.items():
                term = Fraction(lam, arith.euler_phi(d))
                for p in t.primes:
                    if d % p:
                        term *= Fraction(p, p - 1)
                expect += term
            ws = weight_sums(t)
            assert ws.main_sum == expect
            assert ws.abs_sum <= 2 ** len(t.primes)
            assert ws.main_sum > 0


def test_smallest_c2_is_one():
    assert smallest_positive_c2(range(2, 30), [0.5, 1, 2, 4, 8]) == {z: 1 for z in range(2, 30)}


def test_instance_stats_example():
    inst = SieveInstance.integers(100, 6)
    st_ = instance_stats(inst)
    assert st_.S == 33
    assert st_.A == {1: 100, 2: 50, 3: 33, 6: 16}
    assert st_.R_observed <= 1


def test_instance_stats_empty():
    inst = SieveInstance(np.array([], dtype=np.int64), np.array([], dtype=np.int64), 30, 1.0, 1.0)
    st_ = instance_stats(inst)
    assert st_.S == 0
    assert all(v == 0 for v in st_.A.values())


def test_instance_validation():
    with pytest.raises(ValueError):
        SieveInstance.integers(100, 12)
    with pytest.raises(ValueError):
        SieveInstance([1, 2], [1, 1], 6, 2.0, 1.0, f=lambda p: p - 1)
    with pytest.raises(ValueError):
        SieveInstance([1, 2], [1, -1], 6, 2.0, 1.0)


def test_bound_hand_example():
    b = shifted_lower_bound(SieveInstance.integers(100, 6), y=9)
    # lambda = 1, -1, -1, 0 on 1, 2, 3, 6 (3 * 2**3 >= 9); sigma_6 = -1
    assert b.z == 3
    assert b.main_sum == Fraction(1, 2)
    assert b.abs_sum == 3
    assert b.value == pytest.approx(100 / 3 / 2 - 3)
    assert b.value <= b.S == 33


def test_bound_without_sifting():
    b = shifted_lower_bound(SieveInstance.integers(57, 1))
    assert b.value == b.S == 57


def test_bound_big_instance():
    b = shifted_lower_bound(SieveInstance.integers(10**5, 2310), y=121)
    assert 0 < b.value <= b.S
    assert b.S == 20779


def test_bound_rejections():
    inst = SieveInstance.integers(100, 6)
    for y in (8, 82):
        with pytest.raises(ValueError):
            shifted_lower_bound(inst, y=y)
    tight = SieveInstance.integers(100, 6, R=0.1)
    with pytest.raises(ValueError):
        shifted_lower_bound(tight, y=9)


def test_bound_monotone_in_R():
    values = []
    for R in (1, 2, 5, 50):
        values.append(shifted_lower_bound(SieveInstance.integers(10**4, 210, R=R), y=60).value)
    assert values == sorted(values, reverse=True)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_instances_sound(i):
    inst, y = random_instance(12345, i)
    b = shifted_lower_bound(inst, y)
    assert b.value <= b.S


@pytest.mark.parametrize("N, upsilon", [(10**4, 6), (10**4, 15), (10**5, 105), (10**5, 2310)])
def test_shifted_primes_bound(N, upsilon):
    inst = SieveInstance.shifted_primes(N, upsilon)
    b = shifted_lower_bound(inst)
    assert b.value <= b.S
    expected = sum(1 for p in arith.primes_up_to(N) if p > 2 and math.gcd(p - 1, upsilon) == 1)
    assert b.S == expected
    # p - 1 is even for odd p, so an even upsilon sifts out everything
    assert (b.S == 0) == (upsilon % 2 == 0)
