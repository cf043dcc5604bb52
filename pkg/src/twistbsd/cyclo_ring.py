"""Exact arithmetic in Z[zeta_m] (power basis modulo the m-th cyclotomic polynomial).

Sums of roots of unity are accumulated as exponent histograms (length m)
and reduced to the power basis once, which is how every character sum in
this package is evaluated.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from sympy import cyclotomic_poly, totient

from .errors import BadEmbedding, ConductorMismatch, NotRational, ZeroElement

_EMBED_PREC = 96  # bits of mantissa for complex embeddings


class CycloRing:
    """The ring Z[zeta_m]; instances are cached per conductor."""

    def __new__(cls, m: int):
        return _ring(m)

    @classmethod
    def _make(cls, m: int) -> "CycloRing":
        self = object.__new__(cls)
        self.m = m
        self.phi = int(totient(m))
        # monic, lowest degree first
        self.cyclotomic = tuple(int(c) for c in reversed(cyclotomic_poly(m, polys=True).all_coeffs()))
        self._reduce_table = self._power_table(2 * max(m, self.phi))
        return self

    def _power_table(self, count: int) -> np.ndarray:
        """Row k = power-basis vector of zeta^k."""
        phi, cyc = self.phi, self.cyclotomic
        rows = np.zeros((count, phi), dtype=object)
        vec = [0] * phi
        vec[0] = 1
        for k in range(count):
            rows[k] = vec
            # multiply by zeta: shift, then eliminate zeta^phi
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [v - top * c for v, c in zip(vec, cyc[:phi])]
        return rows

    def __repr__(self):
        return f"CycloRing({self.m})"

    def __reduce__(self):
        return (CycloRing, (self.m,))

    # constructors ---------------------------------------------------------

    def element(self, coeffs) -> "CycloInt":
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > self.phi:
            return self.from_poly(coeffs)
        return CycloInt(self, tuple(coeffs + [0] * (self.phi - len(coeffs))))

    def integer(self, n: int) -> "CycloInt":
        return CycloInt(self, (int(n),) + (0,) * (self.phi - 1))

    @property
    def zero(self) -> "CycloInt":
        return self.integer(0)

    @property
    def one(self) -> "CycloInt":
        return self.integer(1)

    def zeta(self, k: int = 1) -> "CycloInt":
        """zeta_m^k."""
        return CycloInt(self, tuple(int(c) for c in self._reduce_table[k % self.m]))

    def root_of_unity(self, n: int, k: int = 1) -> "CycloInt":
        """zeta_n^k for n dividing m."""
        if self.m % n:
            raise ConductorMismatch(f"{n} does not divide {self.m}")
        return self.zeta((self.m // n) * k)

    def from_poly(self, coeffs) -> "CycloInt":
        """Reduce an integer polynomial in zeta modulo the cyclotomic polynomial."""
        coeffs = list(coeffs)
        n = len(coeffs)
        if n <= self._reduce_table.shape[0]:
            table = self._reduce_table[:n]
        else:
            table = self._power_table(n)
        vec = np.dot(np.array(coeffs, dtype=object), table) if n else np.zeros(self.phi, dtype=object)
        return CycloInt(self, tuple(int(v) for v in vec))

    def from_histogram(self, hist) -> "CycloInt":
        """sum_k hist[k] * zeta^k for exponents taken mod m."""
        hist = np.asarray(hist)
        if hist.shape[0] != self.m:
            folded = np.zeros(self.m, dtype=np.int64)
            np.add.at(folded, np.arange(hist.shape[0]) % self.m, hist)
            hist = folded
        vec = np.dot(hist.astype(object), self._reduce_table[: self.m])
        return CycloInt(self, tuple(int(v) for v in vec))


@lru_cache(maxsize=None)
def _ring(m: int) -> CycloRing:
    return CycloRing._make(m)


class CycloInt:
    """Immutable element of Z[zeta_m] in the power basis 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycloRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    @property
    def m(self) -> int:
        return self.ring.m

    def __repr__(self):
        return f"CycloInt(m={self.m}, {list(self.coeffs)})"

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.integer(other)
        return isinstance(other, CycloInt) and other.ring is self.ring and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.ring.m, self.coeffs))

    def _check(self, other) -> "CycloInt":
        if isinstance(other, int):
            return self.ring.integer(other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        if other.ring is not self.ring:
            raise ConductorMismatch(f"conductors {self.m} and {other.m}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycloInt(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycloInt(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not any(b[1:]):
            return CycloInt(self.ring, tuple(x * b[0] for x in a))
        if not any(a[1:]):
            return CycloInt(self.ring, tuple(x * a[0] for x in b))
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.ring.from_poly(prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in the ring")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, k: int) -> "CycloInt":
        """Image under zeta -> zeta^k (gcd(k, m) = 1)."""
        if math.gcd(k, self.m) != 1:
            raise BadEmbedding(f"gcd({k}, {self.m}) != 1")
        poly = [0] * (self.m)
        for j, c in enumerate(self.coeffs):
            if c:
                poly[(j * k) % self.m] += c
        return self.ring.from_poly(poly)


def cyclo_arith(a: CycloInt, b: CycloInt, op: str) -> CycloInt:
    if a.ring is not b.ring:
        raise ConductorMismatch(f"conductors {a.m} and {b.m}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def embed(a: CycloInt, k: int = 1) -> mpmath.mpc:
    """Value of a at zeta = exp(2 pi i k / m), with 96-bit mantissa."""
    m = a.m
    if math.gcd(k, m) != 1:
        raise BadEmbedding(f"gcd({k}, {m}) != 1")
    with mpmath.workprec(_EMBED_PREC):
        z = mpmath.expjpi(mpmath.mpf(2 * k) / m)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        for c in a.coeffs:
            if c:
                total += c * power
            power *= z
        return total


def complex_abs(a: CycloInt, embedding_index: int = 1) -> float:
    """|sigma_k(a)| in C.

    Evaluation uses 96-bit arithmetic; with phi(m) terms of size at most
    max|c|, the absolute error is below phi(m) * max|c| * 2^-90.
    """
    with mpmath.workprec(_EMBED_PREC):
        return float(abs(embed(a, embedding_index)))


def abs_error_bound(a: CycloInt) -> float:
    return len(a.coeffs) * max((abs(c) for c in a.coeffs), default=0) * 2.0**-90


def embeddings(m: int) -> list[int]:
    return [k for k in range(1, m) if math.gcd(k, m) == 1]


def as_integer(a: CycloInt) -> int:
    if not a.is_rational():
        raise NotRational(f"{a} is not a rational integer")
    return a.coeffs[0]


def padic_ord_rational(a, p: int) -> int:
    """Exponent of p in a nonzero rational."""
    a = Fraction(a)
    if a == 0:
        raise ZeroElement("valuation of zero")
    return _ord_int(a.numerator, p) - _ord_int(a.denominator, p)


def _ord_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
