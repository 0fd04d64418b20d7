"""The unit group (Z/q)^x, lambda-roots and the least prime lambda-root.

A lambda-root mod q is a unit whose multiplicative order equals the group
exponent E(q).  ``g_star`` finds the least prime one by walking the primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import arith

DEFAULT_CEILING = 10**8


class CeilingExceeded(RuntimeError):
    """No prime lambda-root below the search ceiling."""

    def __init__(self, q: int, ceiling: int):
        super().__init__(f"no prime lambda-root mod {q} below ceiling {ceiling}")
        self.q = q
        self.ceiling = ceiling


@dataclass(frozen=True)
class Component:
    """One cyclic factor of (Z/q)^x.

    ``local_generator`` generates the factor inside (Z/prime_power)^x;
    ``generator`` is its CRT lift mod q (congruent to 1 at the other primes).
    """

    prime: int
    prime_power: int
    local_generator: int
    generator: int
    order: int


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    components: tuple[Component, ...]
    exponent: int
    _tables: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent_primes(self) -> tuple[int, ...]:
        return arith.factor(self.exponent).primes

    def dlog(self, a: int) -> tuple[int, ...]:
        """Exponent vector of the unit a with respect to the generators."""
        q = self.modulus
        a %= q
        if math.gcd(a, q) != 1:
            raise ValueError(f"{a} is not a unit mod {q}")
        return _dlog_vector(self, a)

    def element(self, exps) -> int:
        """Inverse of ``dlog``: the unit with the given exponent vector."""
        q = self.modulus
        result = 1
        for c, e in zip(self.components, exps):
            result = result * pow(c.generator, e, q) % q
        return result


def _bsgs_table(g: int, n: int, m: int) -> tuple[int, dict[int, int], int]:
    step = math.isqrt(n - 1) + 1 if n > 1 else 1
    baby = {}
    x = 1
    for j in range(step):
        baby.setdefault(x, j)
        x = x * g % m
    giant = pow(g, -step, m)
    return step, baby, giant


def _bsgs(table, a: int, m: int, n: int) -> int:
    step, baby, giant = table
    y = a % m
    for i in range(step + 1):
        j = baby.get(y)
        if j is not None:
            return (i * step + j) % n
        y = y * giant % m
    raise ValueError(f"{a} is not in the cyclic group")


def _dlog_vector(group: UnitGroup, a: int) -> tuple[int, ...]:
    out = []
    comps = group.components
    i = 0
    while i < len(comps):
        c = comps[i]
        m = c.prime_power
        r = a % m
        if c.prime == 2 and i + 1 < len(comps) and comps[i + 1].prime == 2:
            # (Z/2^e)^x = <-1> x <5>
            u = 0 if r % 4 == 1 else 1
            if u:
                r = (-r) % m
            out.append(u)
            c5 = comps[i + 1]
            out.append(_bsgs(_table(group, i + 1), r, m, c5.order))
            i += 2
            continue
        out.append(_bsgs(_table(group, i), r, m, c.order))
        i += 1
    return tuple(out)


def _table(group: UnitGroup, i: int):
    t = group._tables.get(i)
    if t is None:
        c = group.components[i]
        t = group._tables[i] = _bsgs_table(c.local_generator, c.order, c.prime_power)
    return t


def _local_order_is(g: int, n: int, m: int) -> bool:
    if pow(g, n, m) != 1:
        return False
    return all(pow(g, n // r, m) != 1 for r in arith.factor(n).primes)


def _smallest_generator(p: int, e: int) -> int:
    m = p**e
    n = m // p * (p - 1)
    g = 2
    while True:
        if g % p and _local_order_is(g, n, m):
            return g
        g += 1


def _crt_lift(residue: int, m: int, q: int) -> int:
    """The x mod q with x = residue mod m and x = 1 mod q/m."""
    rest = q // m
    if rest == 1:
        return residue % q
    # x = 1 + rest * t, need 1 + rest*t = residue (mod m)
    t = (residue - 1) * pow(rest, -1, m) % m
    return (1 + rest * t) % q


@lru_cache(maxsize=4096)
def _build(q: int) -> UnitGroup:
    comps = []
    for p, e in arith.factor(q):
        m = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                comps.append(Component(2, m, 3, _crt_lift(3, m, q), 2))
                continue
            comps.append(Component(2, m, m - 1, _crt_lift(m - 1, m, q), 2))
            comps.append(Component(2, m, 5, _crt_lift(5, m, q), 2 ** (e - 2)))
            continue
        g = _smallest_generator(p, e)
        comps.append(Component(p, m, g, _crt_lift(g, m, q), m // p * (p - 1)))
    exponent = 1
    for c in comps:
        exponent = math.lcm(exponent, c.order)
    return UnitGroup(q, tuple(comps), exponent)


def decompose(q: int) -> UnitGroup:
    """Cyclic decomposition of (Z/q)^x via CRT.

    Odd prime powers get their smallest primitive root.  For 2**e with e >= 3
    the two factors are generated by -1 (order 2) and 5 (order 2**(e-2)).
    """
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    return _build(int(q))


def trivial_group() -> UnitGroup:
    """The unit group of modulus 1 (no components)."""
    return _build(1)


def _require_unit(a: int, q: int) -> None:
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    if math.gcd(a, q) != 1:
        raise ValueError(f"gcd({a}, {q}) != 1")


def element_order(a: int, q: int) -> int:
    """Multiplicative order of a mod q, found by stripping primes off E(q)."""
    _require_unit(a, q)
    group = decompose(q)
    k = group.exponent
    a %= q
    for r in group.exponent_primes:
        while k % r == 0 and pow(a, k // r, q) == 1:
            k //= r
    return k


def _is_lambda_root(a: int, q: int, exponent: int, primes) -> bool:
    return all(pow(a, exponent // r, q) != 1 for r in primes)


def is_lambda_root(a: int, q: int) -> bool:
    _require_unit(a, q)
    group = decompose(q)
    return _is_lambda_root(a % q, q, group.exponent, group.exponent_primes)


def lambda_root_count(q: int) -> int:
    """Number of lambda-roots among the units mod q, by inclusion-exclusion
    over the squarefree divisors of E(q)."""
    group = decompose(q)
    E = group.exponent
    primes = group.exponent_primes
    total = 0
    for mask in range(1 << len(primes)):
        d = 1
        sign = 1
        for i, r in enumerate(primes):
            if mask >> i & 1:
                d *= r
                sign = -sign
        count = 1
        for n in group.orders:
            count *= math.gcd(E // d, n)
        total += sign * count
    return total


def lambda_density(q: int) -> Fraction:
    """Probability c0 that a random unit mod q is a lambda-root."""
    return Fraction(lambda_root_count(q), arith.euler_phi(q))


def g_star(q: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Least prime lambda-root mod q, searching primes below ``ceiling``."""
    group = decompose(q)
    E = group.exponent
    primes = group.exponent_primes
    for p in arith.iter_primes(2, ceiling):
        if q % p and _is_lambda_root(p % q, q, E, primes):
            return p
    raise CeilingExceeded(q, ceiling)


def clamped_omega_phi(q: int) -> tuple[int, bool]:
    """``max(omega(phi(q)), 1)`` and whether the clamp was applied."""
    w = arith.omega(arith.euler_phi(q))
    return max(w, 1), w < 1


def f_bound(q: int, sigma: float) -> float:
    """The bound function f(q, sigma) for the least prime lambda-root.

    omega(phi(q)) is clamped to at least 1 so that small q give finite values.
    """
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    if not 0.5 <= sigma < 1:
        raise ValueError(f"sigma must lie in [1/2, 1), got {sigma}")
    w, _ = clamped_omega_phi(q)
    c0 = lambda_density(q)
    base = w * w * arith.iter_log(w, 1) * float(1 / c0) * math.log(q)
    return base ** (1.0 / (1.0 - sigma))


def grh_scale(q: int) -> float:
    w, _ = clamped_omega_phi(q)
    return (w * arith.iter_log(w, 1)) ** 4 * math.log(q) ** 2


def grh_ratio(q: int, ceiling: int = DEFAULT_CEILING) -> float:
    """g*(q) divided by (omega lg1 omega)^4 (log q)^2, omega = omega(phi(q))."""
    if q < 3:
        raise ValueError(f"grh_ratio needs q >= 3, got {q}")
    return g_star(q, ceiling) / grh_scale(q)
