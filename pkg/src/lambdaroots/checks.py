"""Desk-scale verification suite.

Each check returns a ``CheckResult``; ``run_checks`` runs a selection.  The
same functions back ``lambdaroots verify`` and the acceptance tests.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import arith
from .admissible import count_admissible, is_admissible_multiple, verify_dichotomy
from .characters import (
    angle_matrix,
    char_eval,
    conductor,
    enumerate_characters,
    induce,
    is_primitive,
    phi_star,
    phi_star_exponent,
    phi_star_size,
    primitive_part,
)
from .psi import psi1
from .sieve import SieveInstance, rosser_weights, shifted_lower_bound
from .unitgroup import CeilingExceeded, decompose, g_star, grh_scale, lambda_density

# Regression pins, measured over 3 <= q <= 10**5 and 2 <= q <= 10**4.
GRH_RATIO_PIN = 1.6571  # attained at q = 3: 2 / (log 3)^2 = 1.65707...
C0_INV_PIN = 3.42  # attained at q = 31: (15/4) / log 3 = 3.41339...

ORTHO_TOL = 1e-9
PSI_REL_TOL = 1e-9
PSI_NORM_TOL = 1e-3


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{status} {self.name} ({self.seconds:.1f}s): {info}"

    def record(self) -> dict:
        """Deterministic summary (timing excluded)."""
        return {"check": self.name, "passed": self.passed, "details": self.details}


def _timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    passed, details = fn()
    return CheckResult(name, bool(passed), details, round(time.perf_counter() - t0, 3))


# 1
def check_rosser_weights(z_max: int = 30) -> CheckResult:
    def run():
        failures = 0
        checked = 0
        for z in range(2, z_max + 1):
            for y in (z * z, 2 * z * z, z**3, z**4):
                sig = rosser_weights(y, z).sigma_array()
                checked += len(sig)
                if sig[0] != 1:
                    failures += 1
                failures += int((sig[1:] > 0).sum())
        return failures == 0, {"divisors_checked": checked, "failures": failures}
    return _timed("rosser_sigma_sign", run)


# 2
def random_instance(seed: int, index: int, n_max: int = 10**5):
    rng = np.random.default_rng([seed, index])
    N = int(rng.integers(1, n_max + 1))
    pool = arith.primes_up_to(23)
    k = int(rng.integers(1, 9))
    chosen = sorted(rng.choice(pool, size=k, replace=False).tolist())
    upsilon = math.prod(chosen)
    z = arith.nth_prime(k)
    y = float(rng.uniform(z * z, z**4))
    return SieveInstance.integers(N, upsilon, R=1.0), y


def check_shifted_sieve(instances: int = 200, seed: int = 0) -> CheckResult:
    def run():
        violations = 0
        min_slack = math.inf
        for i in range(instances):
            inst, y = random_instance(seed, i)
            b = shifted_lower_bound(inst, y)
            if not b.value <= b.S:
                violations += 1
            min_slack = min(min_slack, b.S - b.value)
        big = shifted_lower_bound(SieveInstance.integers(10**5, 2 * 3 * 5 * 7 * 11), y=121)
        ok = violations == 0 and 0 < big.value <= big.S
        return ok, {"instances": instances, "violations": violations,
                    "min_slack": round(min_slack, 6), "big_bound": round(big.value, 3),
                    "big_S": big.S}
    return _timed("shifted_sieve_soundness", run)


# 3
def check_craftylem(q_max: int = 30, ys=(2, 3, 5), n_max: int = 500) -> CheckResult:
    def run():
        s = verify_dichotomy(range(3, q_max + 1), ys, n_max)
        return s.violations == 0, {"checked": s.checked, "admissible": s.admissible,
                                   "forced_inadmissible": s.forced_inadmissible,
                                   "violations": s.violations}
    return _timed("craftylem_dichotomy", run)


# 4
def naive_orders(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod q and their orders by repeated multiplication."""
    units = np.array([a for a in range(1, q + 1) if math.gcd(a, q) == 1], dtype=np.int64) % q
    orders = np.zeros(len(units), dtype=np.int64)
    x = units.copy()
    k = 1
    while not orders.all():
        orders[(orders == 0) & (x == 1 % q)] = k
        x = x * units % q
        k += 1
    return units, orders


def brute_lambda_density(q: int) -> Fraction:
    """Share of units attaining the largest order seen; E(q) is not used."""
    _, orders = naive_orders(q)
    top = orders.max()
    return Fraction(int((orders == top).sum()), len(orders))


def check_lambda_density(q_max: int = 2000) -> CheckResult:
    def run():
        bad = [q for q in range(2, q_max + 1) if lambda_density(q) != brute_lambda_density(q)]
        return not bad, {"moduli": q_max - 1, "mismatches": len(bad)}
    return _timed("c0_formula_vs_bruteforce", run)


# 5
def check_character_algebra(q_max: int = 500, m_max: int = 100, target_max: int = 1000) -> CheckResult:
    def run():
        worst = 0.0
        exact_bad = 0
        for q in range(2, q_max + 1):
            units, num, E = angle_matrix(q)
            vals = np.exp(2j * np.pi * num / E)
            row_sums = vals.sum(axis=1)
            phi = len(units)
            row_sums[0] -= phi  # principal character, exponent vector 0
            col_sums = vals.sum(axis=0)
            col_sums[0] -= phi  # a = 1
            worst = max(worst, float(np.abs(row_sums).max()), float(np.abs(col_sums).max()))
            # characters of order <= 2: values are exactly +-1
            real = np.all((num == 0) | (2 * num == E), axis=1)
            for i in np.flatnonzero(real):
                if i and int((num[i] == 0).sum()) * 2 != phi:
                    exact_bad += 1
        round_trips = 0
        trip_bad = 0
        for m in range(2, m_max + 1):
            for chi in enumerate_characters(m):
                if not is_primitive(chi):
                    continue
                for q in range(m, target_max + 1, m):
                    psi = induce(chi, q)
                    round_trips += 1
                    if conductor(psi) != m or primitive_part(psi) != chi:
                        trip_bad += 1
        ok = worst <= ORTHO_TOL and exact_bad == 0 and trip_bad == 0
        return ok, {"max_orthogonality_error": float(f"{worst:.3g}"), "exact_failures": exact_bad,
                    "round_trips": round_trips, "round_trip_failures": trip_bad}
    return _timed("character_algebra", run)


# 6
def brute_phi_star_size(q: int) -> int:
    group = decompose(q)
    k = phi_star_exponent(q)
    orders = group.orders
    image = {tuple(e * k % n for e, n in zip(exps, orders))
             for exps in itertools.product(*(range(n) for n in orders))}
    return len(image)


def check_phi_star(radical_max: int = 10**4, size_max: int = 2000) -> CheckResult:
    def run():
        rad_bad = sum(1 for q in range(3, radical_max + 1)
                      if arith.radical(arith.carmichael(q)) != arith.radical(arith.euler_phi(q)))
        size_bad = 0
        for q in range(2, size_max + 1):
            formula = phi_star_size(q)
            if formula != brute_phi_star_size(q) or formula != len(phi_star(q)):
                size_bad += 1
        return rad_bad == 0 and size_bad == 0, {"radical_failures": rad_bad,
                                                "size_failures": size_bad}
    return _timed("phi_star_exponent_and_size", run)


# 7
def check_grh_ratio(q_max: int = 10**5, ceiling: int = 10**6) -> CheckResult:
    def run():
        worst, worst_q, missing = 0.0, None, 0
        for q in range(3, q_max + 1):
            try:
                r = g_star(q, ceiling) / grh_scale(q)
            except CeilingExceeded:
                missing += 1
                continue
            if r > worst:
                worst, worst_q = r, q
        return missing == 0 and worst <= GRH_RATIO_PIN, {
            "q_max": q_max, "ceiling_hits": missing, "max_ratio": round(worst, 9),
            "argmax_q": worst_q, "pin": GRH_RATIO_PIN}
    return _timed("grh_ratio_sweep", run)


# 8
def _running_sums(values: list[float]) -> list[float]:
    """Compensated (Neumaier) prefix sums."""
    out = []
    total = comp = 0.0
    for v in values:
        t = total + v
        comp += (total - t) + v if abs(total) >= abs(v) else (v - t) + total
        total = t
        out.append(total + comp)
    return out


def difference_identity_error(q_max: int = 20, x_max: int = 10**4) -> tuple[float, int]:
    """Worst |psi1(x+1) - psi1(x) - psi(x)| / max(|psi(x)|, 1) over integer
    2 <= x <= x_max, where psi(x) = sum_{n <= x} chi(n) Lambda(n) is built
    term by term from ``arith.mangoldt`` and ``char_eval``."""
    mangoldt = [0.0] + [arith.mangoldt(n) for n in range(1, x_max + 1)]
    worst = 0.0
    count = 0
    for q in range(2, q_max + 1):
        for chi in enumerate_characters(q):
            terms = [complex(char_eval(chi, n)) * L if L else 0j for n, L in enumerate(mangoldt)]
            cheb = [complex(a, b) for a, b in zip(_running_sums([t.real for t in terms]),
                                                  _running_sums([t.imag for t in terms]))]
            prev = psi1(2, chi)
            for x in range(2, x_max + 1):
                nxt = psi1(x + 1, chi)
                worst = max(worst, abs(nxt - prev - cheb[x]) / max(abs(cheb[x]), 1.0))
                prev = nxt
                count += 1
    return worst, count


def check_psi1(norm_x: int = 10**6, x_max: int = 10**4) -> CheckResult:
    from .characters import trivial_character

    def run():
        v = psi1(norm_x, trivial_character())
        norm = abs(v.real / (norm_x**2 / 2) - 1)
        worst, count = difference_identity_error(x_max=x_max)
        return norm < PSI_NORM_TOL and worst <= PSI_REL_TOL, {
            "normalization_error": float(f"{norm:.3g}"), "difference_max_rel": float(f"{worst:.3g}"),
            "difference_cases": count}
    return _timed("psi1_normalization_and_difference", run)


# 9
def check_spot_values() -> CheckResult:
    def run():
        chi3 = enumerate_characters(3)[1]
        expected = -4 * math.log(2) - 5 * math.log(5) + 3 * math.log(7)
        got = psi1(10, chi3)
        results = {
            "psi1_10_chi3": abs(got - expected) <= 1e-9,
            "A_10_3": count_admissible(10, 3) == 3,
            "not_admissible_3_48": not is_admissible_multiple(3, 48).verdict,
            "gstar_7": g_star(7) == 3,
            "gstar_8": g_star(8) == 3,
        }
        return all(results.values()), results
    return _timed("spot_values", run)


ALL_CHECKS: dict[str, Callable[..., CheckResult]] = {
    "rosser": check_rosser_weights,
    "sieve": check_shifted_sieve,
    "craftylem": check_craftylem,
    "c0": check_lambda_density,
    "characters": check_character_algebra,
    "phistar": check_phi_star,
    "grh": check_grh_ratio,
    "psi1": check_psi1,
    "spot": check_spot_values,
}


def run_checks(names=None, quick: bool = False, seed: int = 0):
    """Yield results for the named checks (all by default).

    ``quick`` shrinks the larger sweeps; the pins are unchanged.
    """
    for name in names or ALL_CHECKS:
        fn = ALL_CHECKS[name]
        if name == "sieve":
            yield fn(instances=50 if quick else 200, seed=seed)
        elif quick and name == "grh":
            yield fn(q_max=10**4)
        elif quick and name == "craftylem":
            yield fn(q_max=12, n_max=200)
        elif quick and name == "characters":
            yield fn(q_max=120, m_max=30, target_max=300)
        elif quick and name == "c0":
            yield fn(q_max=500)
        elif quick and name == "psi1":
            yield fn(x_max=1000)
        elif quick and name == "phistar":
            yield fn(size_max=500)
        else:
            yield fn()
