"""Admissible multiples of a modulus and an exhaustive check of the
(i)-or-(ii) dichotomy they satisfy.

``nq`` is an admissible multiple of ``q`` when some character in Phi*(nq)
has conductor exactly q.  That is decided here by scanning Phi*(nq) directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import arith
from .characters import DirichletCharacter, conductor, phi_star


@dataclass(frozen=True)
class AdmissibilityReport:
    q: int
    multiple: int
    witness: DirichletCharacter | None

    @property
    def verdict(self) -> bool:
        return self.witness is not None

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class CraftyParams:
    """Primes p_i of q, chosen exponents r_i and D = phi(q)^2 prod p_i^r_i."""

    q: int
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    y: float | None = None

    @property
    def modulus(self) -> int:
        return arith.euler_phi(self.q) ** 2 * math.prod(
            p**r for p, r in zip(self.primes, self.exponents))


@dataclass(frozen=True)
class DichotomyRecord:
    q: int
    n: int
    modulus: int
    admissible: bool
    power_divides: bool  # (i): some p_i^r_i divides n
    no_prime_one_mod: bool  # (ii): no prime factor of n is 1 mod D

    @property
    def vacuous(self) -> bool:
        return not self.admissible

    @property
    def holds(self) -> bool:
        return self.vacuous or self.power_divides or self.no_prime_one_mod


def is_admissible_multiple(q: int, multiple: int) -> AdmissibilityReport:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if multiple < 1 or multiple % q:
        raise ValueError(f"{q} does not divide {multiple}")
    for chi in phi_star(multiple):
        if conductor(chi) == q:
            return AdmissibilityReport(q, multiple, chi)
    return AdmissibilityReport(q, multiple, None)


def admissible_multiples(x: float, q: int) -> list[int]:
    """Admissible multiples of q not exceeding x, ascending."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    top = math.floor(x) // q if x >= 0 else 0
    return [n * q for n in range(1, top + 1) if is_admissible_multiple(q, n * q)]


def count_admissible(x: float, q: int) -> int:
    """A(x; q)."""
    return len(admissible_multiples(x, q))


def choose_exponents(q: int, y: float) -> CraftyParams:
    """Least r_i >= 1 with p_i**r_i >= y for each prime p_i of q.

    This satisfies p_i**(r_i - 1) <= y <= p_i**r_i; when y is an exact power
    p**k the smaller choice r = k is taken.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if y <= 1:
        raise ValueError(f"y must exceed 1, got {y}")
    primes = arith.factor(q).primes
    exps = []
    for p in primes:
        r = 1
        while p**r < y:
            r += 1
        exps.append(r)
    return CraftyParams(q, primes, tuple(exps), y)


def modulus_bound_check(params: CraftyParams, y: float, z: float) -> bool:
    """Whether D <= z**3 * y**log(z)."""
    if params.q > z:
        raise ValueError(f"need q <= z, got q={params.q}, z={z}")
    return params.modulus <= z**3 * y ** math.log(z)


def craftylem_dichotomy(q: int, params: CraftyParams, n: int,
                        admissible: bool | None = None) -> DichotomyRecord:
    """Evaluate conditions (i) and (ii) for the multiple nq.

    ``admissible`` may be passed in when already known for nq.
    """
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    if params.q != q:
        raise ValueError("params were built for a different q")
    D = params.modulus
    cond_i = any(n % p**r == 0 for p, r in zip(params.primes, params.exponents))
    cond_ii = all(p % D != 1 % D for p in arith.factor(n).primes)
    if admissible is None:
        admissible = is_admissible_multiple(q, n * q).verdict
    return DichotomyRecord(q, n, D, admissible, cond_i, cond_ii)


@dataclass
class DichotomySummary:
    checked: int = 0
    admissible: int = 0
    violations: int = 0
    # both (i) and (ii) fail, so the multiple must be inadmissible
    forced_inadmissible: int = 0
    counterexamples: list[DichotomyRecord] | None = None


def verify_dichotomy(qs: Iterable[int], ys: Iterable[float], n_max: int) -> DichotomySummary:
    """Check (i) or (ii) for every admissible nq, q in qs, y in ys, n <= n_max."""
    ys = list(ys)
    summary = DichotomySummary(counterexamples=[])
    for q in qs:
        flags = [is_admissible_multiple(q, n * q).verdict for n in range(1, n_max + 1)]
        for y in ys:
            params = choose_exponents(q, y)
            for n, adm in enumerate(flags, start=1):
                rec = craftylem_dichotomy(q, params, n, admissible=adm)
                summary.checked += 1
                summary.admissible += adm
                if not (rec.power_divides or rec.no_prime_one_mod):
                    summary.forced_inadmissible += 1
                if not rec.holds:
                    summary.violations += 1
                    summary.counterexamples.append(rec)
    return summary
