"""Rosser's weights for the linear sieve and the shifted-sieve lower bound.

Divisors of ``P = prod(p for p <= z)`` are indexed by bitmasks over the primes
up to z (bit i set means the i-th prime divides d).

For squarefree ``d = q_1 q_2 ... q_r`` with ``q_1 > ... > q_r`` the lower-bound
weight is ``(-1)**r`` when ``q_1 ... q_{2l-1} q_{2l}**3 < y`` for every
``1 <= l <= r // 2`` and 0 otherwise.  The ``l = 0`` condition is an empty
product and is taken to hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import arith

MAX_Z = 60
DEFAULT_C2 = 1.0


@dataclass(frozen=True)
class RosserWeightTable:
    y: float
    z: float
    primes: tuple[int, ...]
    # nonzero weights only, keyed by d
    support: dict[int, int] = field(repr=False)

    @property
    def P(self) -> int:
        return math.prod(self.primes)

    def weight(self, d: int) -> int:
        if self.P % d:
            raise ValueError(f"{d} does not divide P = {self.P}")
        return self.support.get(d, 0)

    def __getitem__(self, d: int) -> int:
        return self.weight(d)

    def mask_array(self) -> np.ndarray:
        """Weights as an int64 array indexed by divisor bitmask."""
        k = len(self.primes)
        arr = np.zeros(1 << k, dtype=np.int64)
        index = {p: i for i, p in enumerate(self.primes)}
        for d, lam in self.support.items():
            mask = 0
            for p in arith.factor(d).primes:
                mask |= 1 << index[p]
            arr[mask] = lam
        return arr

    def sigma_array(self) -> np.ndarray:
        """``sigma_n = sum_{d | n} lambda_d`` for every n | P, by bitmask."""
        arr = self.mask_array()
        k = len(self.primes)
        for i in range(k):
            # add the value at mask without bit i into mask with bit i
            view = arr.reshape(-1, 2, 1 << i)
            view[:, 1, :] += view[:, 0, :]
        return arr


def _mask_to_divisor(mask: int, primes) -> int:
    d = 1
    i = 0
    while mask:
        if mask & 1:
            d *= primes[i]
        mask >>= 1
        i += 1
    return d


def rosser_weights(y: float, z: float, max_z: float = MAX_Z) -> RosserWeightTable:
    if y < 2:
        raise ValueError(f"y must be >= 2, got {y}")
    if not 2 <= z <= max_z:
        raise ValueError(f"z must lie in [2, {max_z}], got {z}")
    primes = tuple(arith.primes_up_to(int(z)))
    support: dict[int, int] = {1: 1}
    descending = primes[::-1]

    # Depth-first over d built largest prime first; once an even-position
    # condition fails it fails for every extension, so prune there.
    def extend(start: int, d: int, r: int) -> None:
        for j in range(start, len(descending)):
            p = descending[j]
            if (r + 1) % 2 == 0 and d * p**3 >= y:
                continue
            nd = d * p
            support[nd] = -1 if (r + 1) % 2 else 1
            extend(j + 1, nd, r + 1)

    extend(0, 1, 0)
    return RosserWeightTable(y, z, primes, support)


def rosser_weight_direct(d: int, y: float) -> int:
    """The weight of one squarefree d straight from the defining condition."""
    fac = arith.factor(d)
    if any(e > 1 for _, e in fac):
        return 0
    qs = sorted(fac.primes, reverse=True)
    r = len(qs)
    for l in range(1, r // 2 + 1):
        if math.prod(qs[: 2 * l - 1]) * qs[2 * l - 1] ** 3 >= y:
            return 0
    return -1 if r % 2 else 1


def sigma(table: RosserWeightTable, n: int) -> int:
    """``sum_{d | n} lambda_d`` for n dividing P."""
    if n < 1 or table.P % n:
        raise ValueError(f"{n} does not divide P = {table.P}")
    return sum(lam for d, lam in table.support.items() if n % d == 0)


@dataclass(frozen=True)
class WeightSums:
    abs_sum: int
    # sum over n | P of sigma_n / prod_{p | n} (p - 1), exact
    main_sum: Fraction


def weight_sums(table: RosserWeightTable) -> WeightSums:
    sig = table.sigma_array()
    primes = table.primes
    k = len(primes)
    # Multiply through by phi(P): term n becomes sigma_n * prod_{p not | n} (p-1).
    cofactor = np.ones(1, dtype=object)
    for i in range(k):
        cofactor = np.concatenate([cofactor * (primes[i] - 1), cofactor])
    total = sum(int(s) * int(c) for s, c in zip(sig.tolist(), cofactor.tolist()) if s)
    phi_P = math.prod(p - 1 for p in primes)
    abs_sum = sum(abs(v) for v in table.support.values())
    return WeightSums(abs_sum, Fraction(total, phi_P))


# -- weighted sequences ----------------------------------------------------

def _identity(p: int) -> int:
    return p


@dataclass
class SieveInstance:
    """A weighted sequence with multiplicities ``nu``, sifted by ``upsilon``.

    ``f`` gives the density f(p) at primes p | upsilon and is extended
    multiplicatively; ``X`` and ``R`` are the density-model main term and
    remainder cap.
    """

    nu: np.ndarray
    weights: np.ndarray
    upsilon: int
    X: float
    R: float
    f: Callable[[int], float] = _identity

    def __post_init__(self):
        self.nu = np.asarray(self.nu, dtype=np.int64)
        self.weights = np.asarray(self.weights)
        if self.nu.shape != self.weights.shape:
            raise ValueError("nu and weights must have the same length")
        if self.upsilon < 1 or arith.mobius(self.upsilon) == 0:
            raise ValueError(f"upsilon must be squarefree, got {self.upsilon}")
        if len(self.nu) and self.nu.min() < 1:
            raise ValueError("multiplicities must be positive")
        if len(self.weights) and self.weights.min() < 0:
            raise ValueError("weights must be nonnegative")
        if self.X <= 0 or self.R <= 0:
            raise ValueError("X and R must be positive")
        for d in arith.divisors(self.upsilon):
            if self.f_of(d) < d:
                raise ValueError(f"f({d}) = {self.f_of(d)} < {d}")

    @property
    def primes(self) -> tuple[int, ...]:
        return arith.factor(self.upsilon).primes

    def f_of(self, d: int) -> float:
        return math.prod(self.f(p) for p in arith.factor(d).primes)

    @classmethod
    def integers(cls, N: int, upsilon: int, R: float = 1.0) -> "SieveInstance":
        """The integers 1..N with unit weights, nu(a) = a, X = N, f(d) = d."""
        a = np.arange(1, N + 1, dtype=np.int64)
        return cls(a, np.ones(N, dtype=np.int64), upsilon, float(N), R)

    @classmethod
    def shifted_primes(cls, N: int, upsilon: int, R: float | None = None) -> "SieveInstance":
        """Primes p <= N with nu(p) = p - 1 (p > 2), X = pi(N), f(d) = d.

        With ``R=None`` the observed remainder is used.
        """
        ps = np.array([p for p in arith.primes_up_to(N) if p > 2], dtype=np.int64)
        inst = cls(ps - 1, np.ones(len(ps), dtype=np.int64), upsilon, float(max(len(ps), 1)), 1.0)
        if R is None:
            R = max(instance_stats(inst).R_observed, 1e-12)
        inst.R = R
        return inst


@dataclass(frozen=True)
class InstanceStats:
    S: float
    A: dict[int, float]
    R_observed: float


def instance_stats(inst: SieveInstance) -> InstanceStats:
    """Exact S(A, upsilon), the A_d for d | upsilon, and max |A_d - X/f(d)|."""
    divs = arith.divisors(inst.upsilon)
    if len(inst.nu):
        g = np.gcd(inst.nu, inst.upsilon)
        vals, inverse = np.unique(g, return_inverse=True)
        sums = np.zeros(len(vals), dtype=inst.weights.dtype)
        np.add.at(sums, inverse, inst.weights)
        by_gcd = {int(v): s.item() for v, s in zip(vals, sums)}
    else:
        by_gcd = {}
    zero = 0 if np.issubdtype(inst.weights.dtype, np.integer) else 0.0
    A = {d: sum((w for v, w in by_gcd.items() if v % d == 0), zero) for d in divs}
    S = by_gcd.get(1, zero)
    R_obs = max(abs(A[d] - inst.X / inst.f_of(d)) for d in divs)
    return InstanceStats(S, A, R_obs)


@dataclass(frozen=True)
class LowerBound:
    value: float
    y: float
    z: int
    main_sum: Fraction
    abs_sum: int
    density_product: float
    S: float
    R_observed: float

    def __float__(self) -> float:
        return self.value


def shifted_lower_bound(inst: SieveInstance, y: float | None = None,
                        c2: float = DEFAULT_C2) -> LowerBound:
    """Lower bound for S(A, upsilon) from Rosser's weights on the first
    omega(upsilon) primes.

    ``y`` defaults to ``c2 * z**2`` where z is the omega(upsilon)-th prime.
    """
    stats = instance_stats(inst)
    if stats.R_observed > inst.R:
        raise ValueError(f"remainder condition fails: observed {stats.R_observed} > R = {inst.R}")
    k = len(inst.primes)
    if k == 0:
        return LowerBound(float(stats.S), float("nan"), 1, Fraction(1), 1, 1.0,
                          stats.S, stats.R_observed)
    z = arith.nth_prime(k)
    if y is None:
        y = c2 * z * z
    if not z * z <= y <= z**4:
        raise ValueError(f"y = {y} outside [z^2, z^4] = [{z * z}, {z ** 4}]")
    table = rosser_weights(y, z, max_z=max(MAX_Z, z))
    sums = weight_sums(table)
    product = math.prod(1 - 1 / inst.f(p) for p in inst.primes)
    value = inst.X * product * float(sums.main_sum) - inst.R * sums.abs_sum
    return LowerBound(value, y, z, sums.main_sum, sums.abs_sum, product,
                      stats.S, stats.R_observed)


def smallest_positive_c2(zs: Iterable[int], c2_grid: Iterable[float]) -> dict[int, float | None]:
    """For each z, the least c2 on the grid with the main sum positive at
    y = c2 z^2, restricted to the window z^2 <= y <= z^4."""
    grid = sorted(c2_grid)
    out = {}
    for z in zs:
        out[z] = None
        for c2 in grid:
            y = c2 * z * z
            if y < z * z:
                continue
            if y > z**4:
                break
            if weight_sums(rosser_weights(y, z)).main_sum > 0:
                out[z] = c2
                break
    return out
