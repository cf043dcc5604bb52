"""Orbit combinatorics behind dim Sha for p = -1 mod 6, and digit checks for p = 1 mod 6.

The index set is S = {1, 5} x {1, ..., q-1} with
S0 = {(1, a) : 0 < a < q/6} and S1 = {(5, a) : 5q/6 < a < q};
dim Sha is the sum over <p>-orbits o of min(|o n S0|, |o n S1|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .char_sums import stickelberger_ord
from .errors import CapExceeded, WrongResidue
from .orbit_space import TwistParams, mult_order

DIGIT_CAP = 64
SHA_CAP = 10**7


@dataclass(frozen=True, order=True)
class ShaIndex:
    b: int
    a: int

    def in_s0(self, q: int) -> bool:
        return self.b == 1 and 0 < 6 * self.a < q

    def in_s1(self, q: int) -> bool:
        return self.b == 5 and 5 * q < 6 * self.a < 6 * q


@dataclass(frozen=True)
class ShaOrbit:
    elements: tuple[ShaIndex, ...]
    n_s0: int
    n_s1: int

    @property
    def d(self) -> int:
        return min(self.n_s0, self.n_s1)

    @property
    def size(self) -> int:
        return len(self.elements)


def _require_nonsplit(params: TwistParams):
    if params.p % 6 != 5:
        raise WrongResidue("the Sha index action needs p = -1 mod 6")


def p_step(x: ShaIndex, params: TwistParams) -> ShaIndex:
    """(b, a) -> (6 - b, p a - (p+1) b / 6 + 1 mod q-1), a' taken in 1..q-1."""
    _require_nonsplit(params)
    p, q = params.p, params.q
    a = (p * x.a - (p + 1) * x.b // 6 + 1) % (q - 1)
    return ShaIndex(6 - x.b, a if a else q - 1)


def sha_orbits(params: TwistParams, cap: int = SHA_CAP) -> list[ShaOrbit]:
    _require_nonsplit(params)
    q = params.q
    if 2 * (q - 1) > cap:
        raise CapExceeded("Sha index set", 2 * (q - 1), cap)
    seen = set()
    out = []
    for b in (1, 5):
        for a in range(1, q):
            start = ShaIndex(b, a)
            if start in seen:
                continue
            elems = [start]
            cur = p_step(start, params)
            while cur != start:
                elems.append(cur)
                cur = p_step(cur, params)
            seen.update(elems)
            out.append(ShaOrbit(tuple(elems), sum(e.in_s0(q) for e in elems),
                                sum(e.in_s1(q) for e in elems)))
    return out


def dim_sha(params: TwistParams) -> int:
    if params.p % 6 == 1:
        return 0
    return sum(o.d for o in sha_orbits(params))


def s0_s1_sizes(params: TwistParams) -> tuple[int, int]:
    q = params.q
    s0 = sum(1 for a in range(1, q) if ShaIndex(1, a).in_s0(q))
    s1 = sum(1 for a in range(1, q) if ShaIndex(5, a).in_s1(q))
    return s0, s1


@dataclass(frozen=True)
class DigitCheck:
    j: int
    ord: Fraction
    expected: Fraction

    @property
    def passed(self) -> bool:
        return self.ord == self.expected


def digit_degree(params: TwistParams) -> int:
    """m = [F_r(mu_{6(q-1)}) : F_p]."""
    return math.lcm(params.nu, mult_order(params.p, 6 * (params.q - 1)))


def ord_gj_check(params: TwistParams, digit_cap: int = DIGIT_CAP) -> list[DigitCheck]:
    """Digit-sum valuations of G(chi^j, psi_1) over F_{p^m} for j mod 6(q-1), j != 0 mod 3."""
    if params.p % 6 != 1:
        raise WrongResidue("the G_j digit check needs p = 1 mod 6")
    m = digit_degree(params)
    if m > digit_cap:
        raise CapExceeded("digit length m", m, digit_cap)
    N = 6 * (params.q - 1)
    Q = params.p**m
    scale = (Q - 1) // N
    out = []
    for j in range(1, N):
        if j % 3 == 0:
            continue
        s = (-j * scale) % (Q - 1)
        want = Fraction(2 * m, 3) if j % 3 == 1 else Fraction(m, 3)
        out.append(DigitCheck(j, stickelberger_ord(Q, s, params.p), want))
    return out
