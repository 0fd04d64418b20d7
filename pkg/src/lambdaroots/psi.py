"""The weighted Chebyshev sum psi_1(x, chi) = sum_{n < x} chi(n) Lambda(n) (x - n).

Evaluated straight from the definition over a segmented prime sieve, with
``math.fsum`` for the accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import arith
from .characters import DirichletCharacter, char_eval, phi_star, residue_values

SEGMENT = 1 << 20
TABLE_LIMIT = 10**6


@lru_cache(maxsize=1)
def _prime_power_table() -> tuple[np.ndarray, np.ndarray]:
    """All prime powers below TABLE_LIMIT, sorted, with log p."""
    ns, logs = [], []
    for p in arith.primes_up_to(TABLE_LIMIT - 1):
        pk = p
        while pk < TABLE_LIMIT:
            ns.append(pk)
            logs.append(math.log(p))
            pk *= p
    order = np.argsort(ns, kind="stable")
    return np.array(ns, dtype=np.int64)[order], np.array(logs)[order]


@lru_cache(maxsize=32)
def _weighted_table(chi: DirichletCharacter) -> tuple[np.ndarray, np.ndarray | None]:
    """chi(n) log p over the prime-power table, split into real and imaginary
    parts (the latter None for real characters)."""
    ns, logs = _prime_power_table()
    if chi.modulus == 1:
        return logs, None
    v = residue_values(chi)[ns % chi.modulus]
    return v.real * logs, (v.imag * logs if v.imag.any() else None)


def _prime_powers_below(x: float):
    """Yield (n, log p) arrays for prime powers n < x, segment by segment."""
    top = math.ceil(x)  # n < x  <=>  n < top for integer n
    if top <= 2:
        return
    root = math.isqrt(top - 1)
    small = arith.primes_up_to(root)
    # higher powers p^k, k >= 2, come only from p <= sqrt(x)
    ns, logs = [], []
    for p in small:
        pk = p * p
        while pk < top:
            ns.append(pk)
            logs.append(math.log(p))
            pk *= p
    if ns:
        yield np.array(ns, dtype=np.int64), np.array(logs)
    lo = 2
    while lo < top:
        hi = min(lo + SEGMENT, top)
        ps = arith.primes_in_segment(lo, hi)
        if len(ps):
            yield ps, np.log(ps.astype(float))
        lo = hi


def psi1(x: float, chi: DirichletCharacter) -> complex:
    """psi_1(x, chi) with the sum over integers 1 <= n < x."""
    if x < 1:
        raise ValueError(f"psi1 needs x >= 1, got {x}")
    top = math.ceil(x)
    if top <= TABLE_LIMIT:
        ns, _ = _prime_power_table()
        k = int(np.searchsorted(ns, top))
        gaps = x - ns[:k]
        w_re, w_im = _weighted_table(chi)
        re = math.fsum((w_re[:k] * gaps).tolist())
        im = 0.0 if w_im is None else math.fsum((w_im[:k] * gaps).tolist())
        return complex(re, im)
    q = chi.modulus
    values = residue_values(chi)
    real_parts, imag_parts = [], []
    for ns, logs in _prime_powers_below(x):
        terms = logs * (x - ns)
        v = values[ns % q] if q > 1 else np.ones(len(ns), dtype=complex)
        real_parts.append(math.fsum((v.real * terms).tolist()))
        imag_parts.append(math.fsum((v.imag * terms).tolist()))
    return complex(math.fsum(real_parts), math.fsum(imag_parts))


def chebyshev_psi(x: float, chi: DirichletCharacter) -> complex:
    """sum_{n <= x} chi(n) Lambda(n), term by term (reference route)."""
    total_re, total_im = [], []
    for n in range(2, math.floor(x) + 1):
        L = arith.mangoldt(n)
        if L:
            v = complex(char_eval(chi, n))
            total_re.append(v.real * L)
            total_im.append(v.imag * L)
    return complex(math.fsum(total_re), math.fsum(total_im))


@dataclass
class Psi1Report:
    q: int
    sigma: float
    xs: list[float]
    characters: list[tuple[int, ...]] = field(default_factory=list)
    values: list[list[complex]] = field(default_factory=list)
    ratios: list[list[float]] = field(default_factory=list)

    @property
    def max_ratio(self) -> float | None:
        flat = [r for row in self.ratios for r in row]
        return max(flat) if flat else None

    def rows(self):
        for chi, vals, rats in zip(self.characters, self.values, self.ratios):
            for x, v, r in zip(self.xs, vals, rats):
                yield chi, x, v, r


def psi1_scaling_report(q: int, sigma: float, xs) -> Psi1Report:
    """|psi_1(x, chi)| / (x^(1+sigma) log q) over the nonprincipal chi in Phi*(q).

    This is a measurement only; nothing here certifies a zero-free region.
    """
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    if not 0.5 <= sigma < 1:
        raise ValueError(f"sigma must lie in [1/2, 1), got {sigma}")
    xs = [float(x) for x in xs]
    if any(x < 2 for x in xs):
        raise ValueError("grid values must be >= 2")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly increasing")
    report = Psi1Report(q, sigma, xs)
    if not xs:
        return report
    logq = math.log(q)
    for chi in phi_star(q):
        if chi.is_principal:
            continue
        vals = [psi1(x, chi) for x in xs]
        report.characters.append(chi.exponents)
        report.values.append(vals)
        report.ratios.append([abs(v) / (x ** (1 + sigma) * logq) for v, x in zip(vals, xs)])
    return report
