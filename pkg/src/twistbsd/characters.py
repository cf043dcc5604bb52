"""Multiplicative characters chi_{F,n} and additive characters psi_alpha.

The Teichmuller identification is realized as "discrete log against the
ambient generator, then exponentiate a root of unity". For a subfield F of
size Q with generator g_F = g^((p^M-1)/(Q-1)) this gives

    chi_{F,n}^i(g_F^j) = zeta_n^(i*j),

so chi_{F',n} = chi_{F,n} o N_{F'/F} holds by construction. Values lie in
mu_6 (for n | 6) and mu_p, both inside Z[zeta_{6p}]: zeta_6 = zeta^p and
zeta_p = zeta^6 with zeta = zeta_{6p}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclo_ring import CycloInt, CycloRing
from .errors import OrderNotDividing, ValidationError, ZeroElement
from .ff_core import FieldElement, FiniteField, Subfield, trace_norm


class CharacterSystem:
    """Fixed choices behind every character value: ambient generator and psi_p(1).

    ``zeta_p_power`` = c means psi_p(1) = zeta_p^c.
    """

    def __init__(self, ambient: FiniteField, zeta_p_power: int = 1):
        p = ambient.p
        if zeta_p_power % p == 0:
            raise ValidationError("psi_p(1) must be a primitive p-th root of unity")
        self.ambient = ambient
        self.p = p
        self.zeta_p_power = zeta_p_power % p
        self.ring = CycloRing(6 * p)

    def field(self, degree: int) -> Subfield:
        return self.ambient.subfield(degree)

    def mult(self, field: Subfield, n: int, power: int = 1) -> "MultChar":
        return MultChar(self, field, n, power)

    def add(self, field: Subfield, alpha: FieldElement) -> "AddChar":
        return AddChar(self, field, alpha)

    def zeta_exponent(self, e6, ep):
        """Exponent of zeta_{6p} for zeta_6^e6 * zeta_p^ep (works on arrays)."""
        return (self.p * e6 + 6 * ep) % self.ring.m


@dataclass(frozen=True)
class MultChar:
    """chi_{F,n}^power on the unit group of the subfield F."""

    system: CharacterSystem
    field: Subfield
    n: int
    power: int = 1

    def __post_init__(self):
        if (self.field.size - 1) % self.n:
            raise OrderNotDividing(f"{self.n} does not divide {self.field.size - 1}")
        if 6 % self.n:
            raise ValidationError("ring-valued characters need n | 6")
        object.__setattr__(self, "power", self.power % self.n)

    @property
    def is_trivial(self) -> bool:
        return self.power == 0

    def __mul__(self, other: "MultChar") -> "MultChar":
        if other.field is not self.field:
            raise ValidationError("characters on different fields")
        n = math.lcm(self.n, other.n)
        e = (n // self.n) * self.power + (n // other.n) * other.power
        return MultChar(self.system, self.field, n, e)

    def __pow__(self, k: int) -> "MultChar":
        return MultChar(self.system, self.field, self.n, self.power * k)

    def exponent6(self, j):
        """Exponent of zeta_6 in chi(g_F^j); j may be an array."""
        return ((6 // self.n) * self.power * j) % 6

    def __call__(self, x: FieldElement) -> CycloInt:
        if x.value == 0:
            raise ZeroElement("multiplicative character at zero")
        j = self.field.log(x)
        return self.system.ring.root_of_unity(6, int(self.exponent6(j)))


@dataclass(frozen=True)
class AddChar:
    """psi_alpha(x) = psi_p(Tr_{F/F_p}(alpha x))."""

    system: CharacterSystem
    field: Subfield
    alpha: FieldElement

    def __post_init__(self):
        if not self.field.contains(self.alpha):
            raise ValidationError(f"{self.alpha} is not in {self.field}")

    @property
    def is_trivial(self) -> bool:
        return self.alpha.value == 0

    def trace_exponent(self, x: FieldElement) -> int:
        tr = _trace_to_prime(self.alpha * x, self.field)
        return (self.system.zeta_p_power * tr) % self.system.p

    def exponents_on_powers(self) -> np.ndarray:
        """Exponent of zeta_p in psi(g_F^j) for j = 0 .. |F|-2."""
        table = self.field.trace_table
        if self.alpha.value == 0:
            return np.zeros_like(table)
        a = self.field.log(self.alpha)
        return (self.system.zeta_p_power * np.roll(table, -a)) % self.system.p

    def __call__(self, x: FieldElement) -> CycloInt:
        return self.system.ring.root_of_unity(self.system.p, self.trace_exponent(x))


def _trace_to_prime(y: FieldElement, field: Subfield) -> int:
    tr, _ = trace_norm(y, field.ambient.subfield(1), field=field)
    return tr.value


def mult_char_eval(chi: MultChar, x: FieldElement) -> CycloInt:
    return chi(x)


def add_char_eval(psi: AddChar, x: FieldElement) -> CycloInt:
    return psi(x)
