"""Gauss and Jacobi sums by direct summation, plus the orbit-indexed sums.

Every sum is computed as a histogram of zeta_{6p}-exponents over the
unit group of the field (enumerated through the generator's power table)
and reduced in Z[zeta_{6p}] once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import AddChar, CharacterSystem, MultChar
from .cyclo_ring import CycloInt
from .errors import (CapExceeded, DegenerateCharacters, IdentityFailure, OutOfRange,
                     TrivialCharacter, ValidationError)
from .orbit_space import NOrbit, Orbit, TwistParams, mult_order

DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class GaussSumValue:
    value: CycloInt
    field_size: int
    n: int
    power: int
    alpha: object = None


@dataclass(frozen=True)
class JacobiSumValue:
    value: CycloInt
    field_size: int
    chars: tuple[tuple[int, int], tuple[int, int]]


def _check_cap(size: int, cap: int):
    if size > cap:
        raise CapExceeded("character sum enumeration", size, cap)


def gauss_sum(chi: MultChar, psi: AddChar, cap: int = DEFAULT_ENUM_CAP) -> GaussSumValue:
    """G_F(chi, psi) = -sum over x in F^x of chi(x) psi(x)."""
    if chi.is_trivial:
        raise TrivialCharacter("Gauss sum of the trivial character")
    if psi.is_trivial:
        raise TrivialCharacter("Gauss sum with trivial additive character")
    if chi.field is not psi.field:
        raise ValidationError("characters on different fields")
    F = chi.field
    _check_cap(F.size, cap)
    system = chi.system
    j = np.arange(F.size - 1, dtype=np.int64)
    exps = system.zeta_exponent(chi.exponent6(j), psi.exponents_on_powers())
    hist = np.bincount(exps, minlength=system.ring.m)
    return GaussSumValue(-system.ring.from_histogram(hist), F.size, chi.n, chi.power, psi.alpha)


def jacobi_sum(chi1: MultChar, chi2: MultChar, cap: int = DEFAULT_ENUM_CAP) -> JacobiSumValue:
    """J_F(chi1, chi2) = -sum over x in F of chi1(x) chi2(1 - x)."""
    if chi1.field is not chi2.field:
        raise ValidationError("characters on different fields")
    if chi1.is_trivial or chi2.is_trivial or (chi1 * chi2).is_trivial:
        raise DegenerateCharacters("Jacobi sum needs chi1, chi2, chi1*chi2 nontrivial")
    F = chi1.field
    _check_cap(F.size, cap)
    system = chi1.system
    j = np.arange(1, F.size - 1, dtype=np.int64)  # x = 0 and x = 1 contribute 0
    l = F.one_minus_log[j]
    exps = system.zeta_exponent(chi1.exponent6(j) + chi2.exponent6(l), 0)
    hist = np.bincount(exps, minlength=system.ring.m)
    return JacobiSumValue(-system.ring.from_histogram(hist), F.size,
                          ((chi1.n, chi1.power), (chi2.n, chi2.power)))


def gauss_jacobi_identity_holds(chi1: MultChar, chi2: MultChar, psi: AddChar) -> bool:
    """J * G(chi1 chi2) == G(chi1) G(chi2), cross-multiplied to stay in the ring."""
    J = jacobi_sum(chi1, chi2).value
    return J * gauss_sum(chi1 * chi2, psi).value == gauss_sum(chi1, psi).value * gauss_sum(chi2, psi).value


def orbit_field(system: CharacterSystem, params: TwistParams, size: int):
    degree = params.nu * size
    if system.ambient.degree % degree:
        from .errors import FieldMissing

        raise FieldMissing(f"F_r^{size} is not in the tower")
    return system.field(degree)


def orbit_gauss(system: CharacterSystem, params: TwistParams, o: Orbit,
                cap: int = DEFAULT_ENUM_CAP) -> GaussSumValue:
    """G(o) = G_F(chi_{F,n}^i, psi_alpha) over F = F_{r^|o|} for the representative."""
    F = orbit_field(system, params, o.size)
    return gauss_sum(system.mult(F, o.n, o.i), system.add(F, o.alpha), cap)


def orbit_gauss_at(system: CharacterSystem, params: TwistParams, o: Orbit, element,
                   cap: int = DEFAULT_ENUM_CAP) -> GaussSumValue:
    """G(o) evaluated at another element (i, alpha_log) of the orbit."""
    i, e = element
    F = orbit_field(system, params, o.size)
    alpha = system.ambient.generator**e
    return gauss_sum(system.mult(F, o.n, i), system.add(F, alpha), cap)


def orbit_jacobi(system: CharacterSystem, params: TwistParams, no: NOrbit, i: int | None = None,
                 cap: int = DEFAULT_ENUM_CAP) -> JacobiSumValue:
    """J(o) = J_F(chi_{F,2}^-i, chi_{F,3}^-i) over F = F_{r^|o|}."""
    i = no.i if i is None else i
    if i not in no.elements:
        raise ValidationError(f"{i} is not in {no}")
    F = orbit_field(system, params, no.size)
    return jacobi_sum(system.mult(F, 2, -i), system.mult(F, 3, -i), cap)


def stickelberger_ord(field_size: int, s: int, p: int | None = None) -> Fraction:
    """ord_p of G(chi^(-s), psi) for chi a generator of the character group:
    base-p digit sum of s divided by p - 1."""
    if p is None:
        p = _char_of(field_size)
    if not 0 < s < field_size - 1:
        raise OutOfRange(f"s={s} outside (0, {field_size - 1})")
    total, x = 0, s
    while x:
        x, d = divmod(x, p)
        total += d
    return Fraction(total, p - 1)


def _char_of(Q: int) -> int:
    from sympy import factorint

    f = factorint(Q)
    if len(f) != 1:
        raise ValidationError(f"{Q} is not a prime power")
    return next(iter(f))


def character_exponent(field_size: int, n: int, power: int) -> int:
    """s with chi_{F,n}^power = chi_{F,|F^x|}^(-s), reduced to [0, |F|-1)."""
    Q1 = field_size - 1
    return (-power * (Q1 // n)) % Q1


def orbit_gauss_ord(params: TwistParams, o: Orbit) -> Fraction:
    """Stickelberger valuation of G(o) (independent of alpha)."""
    Q = params.r**o.size
    return stickelberger_ord(Q, character_exponent(Q, o.n, o.i), params.p)


def expected_orbit_gauss_ord(params: TwistParams, o: Orbit) -> Fraction:
    """Tabulated valuations of orbit Gauss sums for n = 2 and n = 3."""
    nu_o = params.nu * o.size
    if o.n == 2:
        return Fraction(nu_o, 2)
    if o.n == 3:
        if params.p % 3 == 1:
            return Fraction(2 * nu_o, 3) if o.i % 3 == 1 else Fraction(nu_o, 3)
        return Fraction(nu_o, 2)
    raise ValidationError("valuation table only covers n = 2, 3")


@dataclass(frozen=True)
class GaussPower:
    zeta: CycloInt
    g: CycloInt
    exponent: int
    c: int


def gauss_power_decompose(system: CharacterSystem, params: TwistParams, o: Orbit,
                          cap: int = DEFAULT_ENUM_CAP) -> GaussPower:
    """G(o) = zeta * g^(|o| nu / c), c = ord(p mod n), g a Gauss sum over F_{p^c}."""
    n, i = o.n, o.i
    c = mult_order(params.p, n)
    if (params.nu * o.size) % c:
        raise IdentityFailure(f"c={c} does not divide nu|o|={params.nu * o.size}")
    F = orbit_field(system, params, o.size)
    zeta = system.mult(F, n, -i)(o.alpha)
    base = system.field(c)
    one = system.ambient.one
    g = gauss_sum(system.mult(base, n, i), system.add(base, one), cap).value
    exponent = params.nu * o.size // c
    G = orbit_gauss(system, params, o, cap).value
    if zeta * g**exponent != G:
        raise IdentityFailure(f"G(o) != zeta g^{exponent} for {o}")
    return GaussPower(zeta, g, exponent, c)
