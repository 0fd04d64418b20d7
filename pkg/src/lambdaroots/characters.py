"""Dirichlet characters as exponent vectors over the unit-group generators.

A character mod q is stored as ``(e_1, ..., e_k)`` with ``0 <= e_j < n_j``;
it sends generator ``g_j`` to ``exp(2 pi i e_j / n_j)``.  Values are exact
roots of unity (``RootOfUnity``); floats appear only through ``complex()``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import arith
from .unitgroup import UnitGroup, _build, decompose


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2 pi i num / den)`` in lowest terms; ``den == 0`` encodes the value 0."""

    num: int
    den: int

    @classmethod
    def from_angle(cls, k: int, m: int) -> "RootOfUnity":
        k %= m
        g = math.gcd(k, m)
        return cls(k // g, m // g)

    @property
    def is_zero(self) -> bool:
        return self.den == 0

    @property
    def order(self) -> int:
        if self.is_zero:
            raise ValueError("zero has no multiplicative order")
        return self.den

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.is_zero or other.is_zero:
            return ZERO
        return RootOfUnity.from_angle(self.num * other.den + other.num * self.den,
                                      self.den * other.den)

    def __pow__(self, k: int) -> "RootOfUnity":
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("0 ** k with k <= 0")
            return ZERO
        return RootOfUnity.from_angle(self.num * k, self.den)

    def conjugate(self) -> "RootOfUnity":
        return self if self.is_zero else RootOfUnity.from_angle(-self.num, self.den)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        # Exact values on the axes.
        quarter = 4 * self.num // self.den if (4 * self.num) % self.den == 0 else None
        if quarter is not None:
            return (1 + 0j, 1j, -1 + 0j, -1j)[quarter]
        return cmath.exp(2j * math.pi * self.num / self.den)

    def __repr__(self) -> str:
        if self.is_zero:
            return "RootOfUnity(0)"
        return f"RootOfUnity({self.num}/{self.den})"


ZERO = RootOfUnity(0, 0)
ONE = RootOfUnity(0, 1)


@dataclass(frozen=True)
class DirichletCharacter:
    group: UnitGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.group.components):
            raise ValueError("exponent vector does not match the unit group")
        for e, n in zip(self.exponents, self.group.orders):
            if not 0 <= e < n:
                raise ValueError(f"exponent {e} out of range for a factor of order {n}")

    @property
    def modulus(self) -> int:
        return self.group.modulus

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus}, e={self.exponents})"

    @cached_property
    def order(self) -> int:
        k = 1
        for e, n in zip(self.exponents, self.group.orders):
            k = math.lcm(k, n // math.gcd(e, n))
        return k

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    def __call__(self, a: int) -> RootOfUnity:
        return char_eval(self, a)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise ValueError("characters have different moduli")
        exps = tuple((a + b) % n for a, b, n in
                     zip(self.exponents, other.exponents, self.group.orders))
        return DirichletCharacter(self.group, exps)

    def __pow__(self, k: int) -> "DirichletCharacter":
        exps = tuple(e * k % n for e, n in zip(self.exponents, self.group.orders))
        return DirichletCharacter(self.group, exps)

    def conjugate(self) -> "DirichletCharacter":
        return self ** -1

    def angle_numerators(self) -> tuple[int, ...]:
        """``e_j * E / n_j``: the value at g_j is exp(2 pi i (that) / E)."""
        E = self.group.exponent
        return tuple(e * (E // n) for e, n in zip(self.exponents, self.group.orders))


def character_group(q: int) -> UnitGroup:
    return _build(int(q)) if q == 1 else decompose(q)


def principal(q: int) -> DirichletCharacter:
    group = character_group(q)
    return DirichletCharacter(group, (0,) * len(group.components))


def trivial_character() -> DirichletCharacter:
    """The unique character of modulus 1 (value 1 everywhere)."""
    return principal(1)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, exponent vectors in lexicographic order."""
    group = decompose(q)
    return [DirichletCharacter(group, exps)
            for exps in itertools.product(*(range(n) for n in group.orders))]


def char_eval(chi: DirichletCharacter, a: int) -> RootOfUnity:
    q = chi.modulus
    if math.gcd(a, q) != 1:
        return ZERO
    if q == 1 or chi.is_principal:
        return ONE
    logs = chi.group.dlog(a)
    E = chi.group.exponent
    k = sum(l * s for l, s in zip(logs, chi.angle_numerators()))
    return RootOfUnity.from_angle(k, E)


def char_order(chi: DirichletCharacter) -> int:
    """Least k >= 1 with chi**k principal."""
    return chi.order


def _local_conductor_odd(p: int, e: int, x: int) -> int:
    if x == 0:
        return 1
    v = 0
    while x % p == 0 and v < e - 1:
        x //= p
        v += 1
    return p ** (e - v)


def conductor(chi: DirichletCharacter) -> int:
    """Modulus of the primitive character inducing chi.

    Computed one prime at a time: for odd p**e the restriction to units that
    are 1 mod p**k is generated by g**((p-1) p**(k-1)); for 2**e the units
    that are 1 mod 4 are generated by 5.
    """
    comps = chi.group.components
    exps = chi.exponents
    cond = 1
    i = 0
    while i < len(comps):
        c = comps[i]
        if c.prime != 2:
            cond *= _local_conductor_odd(c.prime, _valuation(c.prime_power, c.prime), exps[i])
            i += 1
            continue
        if i + 1 < len(comps) and comps[i + 1].prime == 2:
            u, v = exps[i], exps[i + 1]
            n5 = comps[i + 1].order
            if v:
                t = (n5 // math.gcd(v, n5)).bit_length() - 1
                cond *= 2 ** (t + 2)
            elif u:
                cond *= 4
            i += 2
        else:
            if exps[i]:
                cond *= 4
            i += 1
    return cond


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


def _from_values_on_generators(group: UnitGroup, value_of) -> DirichletCharacter:
    exps = []
    for c in group.components:
        val = value_of(c.generator)
        if val.is_zero or c.order % val.den:
            raise ValueError("values do not define a character on this group")
        exps.append(val.num * (c.order // val.den) % c.order)
    return DirichletCharacter(group, tuple(exps))


def induce(chi: DirichletCharacter, q: int) -> DirichletCharacter:
    """The character mod q agreeing with chi on units coprime to q."""
    m = chi.modulus
    if q % m:
        raise ValueError(f"{m} does not divide {q}")
    if q == m:
        return chi
    return _from_values_on_generators(character_group(q), lambda g: char_eval(chi, g))


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = conductor(chi)
    q = chi.modulus
    if f == q:
        return chi

    def lift(b: int) -> int:
        a = b
        while math.gcd(a, q) != 1:
            a += f
        return a

    return _from_values_on_generators(character_group(f), lambda g: char_eval(chi, lift(g)))


def phi_star_exponent(q: int) -> int:
    """The power E(q) / s(phi(q)) defining the distinguished subgroup."""
    return decompose(q).exponent // arith.radical(arith.euler_phi(q))


def phi_star(q: int) -> list[DirichletCharacter]:
    """Image of chi -> chi**(E(q)/s(phi(q))) on the characters mod q.

    The power map acts on each exponent coordinate separately, so the image
    is the product of the per-coordinate images; sorted by exponent vector.
    """
    group = decompose(q)
    k = phi_star_exponent(q)
    images = [sorted({e * k % n for e in range(n)}) for n in group.orders]
    return [DirichletCharacter(group, exps) for exps in itertools.product(*images)]


def phi_star_size(q: int) -> int:
    """|Phi*(q)| from the component orders: prod n_j / gcd(n_j, k)."""
    k = phi_star_exponent(q)
    return math.prod(n // math.gcd(n, k) for n in decompose(q).orders)


def angle_matrix(q: int, chars=None) -> tuple[np.ndarray, np.ndarray, int]:
    """Exact value table: ``units``, and ``num`` with chi_i(units[j]) = exp(2 pi i num[i, j] / E)."""
    group = decompose(q)
    if chars is None:
        chars = enumerate_characters(q)
    units = np.array([a for a in range(1, q + 1) if math.gcd(a, q) == 1], dtype=np.int64)
    logs = np.array([group.dlog(int(a)) for a in units], dtype=np.int64).reshape(len(units), -1)
    coeffs = np.array([chi.angle_numerators() for chi in chars], dtype=np.int64).reshape(len(chars), -1)
    num = (coeffs @ logs.T) % group.exponent
    return units, num, group.exponent


def residue_values(chi: DirichletCharacter) -> np.ndarray:
    """Complex array ``v`` of length q with ``v[r] = chi(r)``."""
    q = chi.modulus
    vals = np.zeros(q, dtype=complex)
    for r in range(q):
        vals[r] = complex(char_eval(chi, r))
    return vals
