import math

import pytest

from lambdaroots import arith
from lambdaroots.admissible import (
    admissible_multiples,
    choose_exponents,
    count_admissible,
    craftylem_dichotomy,
    is_admissible_multiple,
    modulus_bound_check,
    verify_dichotomy,
)
from lambdaroots.characters import (
    ONE,
    char_eval,
    conductor,
    enumerate_characters,
    phi_star,
)


def slow_admissible(q, nq):
    """Straight from the definition: power every character of nq by
    E/s(E), find one whose values come from a primitive character mod q."""
    E = arith.carmichael(nq)
    k = E // arith.radical(E)
    us = [a for a in range(1, nq + 1) if math.gcd(a, nq) == 1]
    for chi in {c**k for c in enumerate_characters(nq)}:
        # trivial on units = 1 mod q, and not on units = 1 mod any proper divisor
        def trivial_mod(m):
            return all(char_eval(chi, a) == ONE for a in us if a % m == 1 % m)
        if trivial_mod(q) and not any(trivial_mod(m) for m in arith.divisors(q) if m < q):
            return True
    return False


def test_examples():
    r = is_admissible_multiple(3, 6)
    assert r.verdict and conductor(r.witness) == 3
    assert is_admissible_multiple(3, 9).verdict
    assert not is_admissible_multiple(3, 48).verdict
    assert [conductor(c) for c in phi_star(48)] == [1, 8]
    with pytest.raises(ValueError):
        is_admissible_multiple(3, 10)


def test_matches_slow_definition():
    for q in range(2, 16):
        for nq in range(q, 121, q):
            assert is_admissible_multiple(q, nq).verdict == slow_admissible(q, nq), (q, nq)


def test_witness_validity():
    for q in range(2, 25):
        for n in range(1, 60):
            r = is_admissible_multiple(q, n * q)
            assert r.verdict == (r.witness is not None)
            if r.witness is not None:
                assert conductor(r.witness) == q
                assert r.witness in set(phi_star(n * q))


def test_count_examples():
    assert count_admissible(10, 3) == 3
    assert admissible_multiples(10, 3) == [3, 6, 9]
    assert count_admissible(2, 3) == 0
    assert count_admissible(6, 5) == 1
    assert count_admissible(0, 7) == 0


def test_count_monotone_and_bounded():
    for q in range(2, 201, 7):
        mults = set(admissible_multiples(1000, q))
        previous = 0
        for x in range(0, 1001, 13):
            a = sum(1 for m in mults if m <= x)
            assert a >= previous
            assert a <= x // q
            previous = a
        assert count_admissible(1000, q) == len(mults)


@pytest.mark.parametrize("q, y, r, D", [
    (12, 5, (3, 2), 1152),
    (3, 3, (1,), 12),
    (2, 2, (1,), 2),
])
def test_choose_exponents_examples(q, y, r, D):
    params = choose_exponents(q, y)
    assert params.exponents == r
    assert params.modulus == D


def test_choose_exponents_bracket():
    for q in range(2, 200):
        for y in (1.5, 2, 3, 4.5, 8, 27, 100):
            params = choose_exponents(q, y)
            for p, r in zip(params.primes, params.exponents):
                assert r >= 1
                assert p ** (r - 1) <= y <= p**r
    with pytest.raises(ValueError):
        choose_exponents(6, 1)


def test_modulus_bound_check_examples():
    assert 1000 * 3 ** math.log(10) == pytest.approx(12558, rel=1e-3)
    assert modulus_bound_check(choose_exponents(3, 3), 3, 10)
    # 64 * 2**log 4 is about 167.3
    assert 64 * 2 ** math.log(4) == pytest.approx(167.30, abs=0.01)
    assert modulus_bound_check(choose_exponents(2, 2), 2, 4)
    with pytest.raises(ValueError):
        modulus_bound_check(choose_exponents(5, 3), 3, 4)


def test_modulus_bound_holds_for_small_moduli():
    for z in (4, 10, 30, 100, 300):
        for y in (2, 3, 5, 10, z, z * z):
            for q in range(2, z + 1):
                assert modulus_bound_check(choose_exponents(q, y), y, z), (q, y, z)


def test_dichotomy_examples():
    params = choose_exponents(3, 3)
    assert params.exponents == (1,)
    rec = craftylem_dichotomy(3, params, 16)
    assert rec.vacuous and rec.holds
    rec = craftylem_dichotomy(3, params, 2)
    assert rec.modulus == 12
    assert rec.admissible and not rec.power_divides and rec.no_prime_one_mod and rec.holds
    rec = craftylem_dichotomy(3, params, 3)
    assert rec.admissible and rec.power_divides and rec.holds


def test_dichotomy_small_sweep():
    s = verify_dichotomy(range(3, 12), [2, 3, 5], 200)
    assert s.violations == 0
    assert s.checked == 9 * 3 * 200
    assert s.forced_inadmissible > 0
