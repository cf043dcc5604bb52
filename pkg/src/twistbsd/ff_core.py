"""Finite fields F_{p^k}, all realized inside one ambient field F_{p^M}.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{M-1} p^{M-1}``
where ``c_0 + c_1 x + ...`` is the residue modulo the defining polynomial.
The integer order of these encodings is the "lexicographic element order"
used to pick moduli and generators deterministically.

Subfields are never built as separate towers: ``F_{p^k}`` is the set of
fixed points of the k-th power of Frobenius inside the ambient field, with
multiplicative generator ``g^((p^M-1)/(p^k-1))`` for the ambient generator g.
That makes norm compatibility of characters automatic downstream.
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np
from sympy import factorint, isprime

from . import _polyfp as P
from .errors import CapExceeded, NonPrime, NotASubfield, ValidationError, ZeroElement

DEFAULT_AMBIENT_CAP = 2**40
DEFAULT_TABLE_CAP = 10**7


def _lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


class FiniteField:
    """The ambient field F_{p^M} with a fixed modulus and generator.

    ``generator_rank`` selects the k-th smallest multiplicative generator
    (0 = smallest). Everything that should not depend on this choice is
    tested for independence by rebuilding with another rank.
    """

    def __init__(self, p: int, degree: int, *, generator_rank: int = 0,
                 cap: int = DEFAULT_AMBIENT_CAP, table_cap: int = DEFAULT_TABLE_CAP):
        if not isprime(p):
            raise NonPrime(f"{p} is not prime")
        if degree < 1:
            raise ValidationError("field degree must be positive")
        if p**degree > cap:
            raise CapExceeded(f"ambient field F_{p}^{degree}", p**degree, cap)
        self.p = p
        self.degree = degree
        self.size = p**degree
        self.table_cap = table_cap
        self.generator_rank = generator_rank
        self.modulus = self._smallest_irreducible()
        self._order_factors = sorted(factorint(self.size - 1))
        self.generator = self._find_generator(generator_rank)

    def __repr__(self):
        return f"FiniteField(p={self.p}, degree={self.degree})"

    # construction -------------------------------------------------------

    def _smallest_irreducible(self) -> tuple[int, ...]:
        p, M = self.p, self.degree
        if M == 1:
            return (0, 1)
        for low in range(p**M):
            cand = self._digits_of(low) + [1]
            if cand[0] == 0:
                continue
            if P.is_irreducible(cand, p):
                return tuple(cand)
        raise AssertionError("no irreducible polynomial found")  # pragma: no cover

    def _has_full_order(self, poly: list[int]) -> bool:
        n = self.size - 1
        for ell in self._order_factors:
            if P.powmod(poly, n // ell, list(self.modulus), self.p) == [1]:
                return False
        return True

    def _find_generator(self, rank: int) -> "FieldElement":
        seen = 0
        for v in range(1, self.size):
            if self._has_full_order(self._digits_of(v)):
                if seen == rank:
                    return FieldElement(self, v)
                seen += 1
        raise ValidationError(f"field has fewer than {rank + 1} generators")

    # encoding helpers ---------------------------------------------------

    def _digits_of(self, v: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def _encode(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)[: self.degree]):
            v = v * self.p + (d % self.p)
        return v

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (prime-field value) or a coefficient list."""
        if isinstance(value, FieldElement):
            if value.owner is not self:
                raise ValidationError("element of a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self._encode(P.rem(list(value), list(self.modulus), self.p)))

    def from_int(self, v: int) -> "FieldElement":
        if not 0 <= v < self.size:
            raise ValidationError("encoding out of range")
        return FieldElement(self, v)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        for v in range(self.size):
            yield FieldElement(self, v)

    # subfields -----------------------------------------------------------

    @lru_cache(maxsize=None)
    def subfield(self, k: int) -> "Subfield":
        if k < 1 or self.degree % k:
            raise NotASubfield(f"F_{self.p}^{k} is not a subfield of F_{self.p}^{self.degree}")
        return Subfield(self, k)

    # discrete log ----------------------------------------------------------

    def dlog(self, x: "FieldElement") -> int:
        """Exponent e in [0, p^M - 1) with generator^e == x.

        Pohlig-Hellman over the prime factorization of p^M - 1 with a
        baby-step/giant-step solve in each prime-order subgroup.
        """
        if x.value == 0:
            raise ZeroElement("dlog of zero")
        n = self.size - 1
        g = self.generator
        residues, moduli = [], []
        for ell, e in factorint(n).items():
            pe = ell**e
            gamma = g ** (n // ell)  # order ell
            digits_val = 0
            g_pe = g ** (n // pe)
            x_pe = x ** (n // pe)
            for k in range(e):
                # strip known digits, project to the order-ell subgroup
                h = (x_pe * g_pe ** (-digits_val)) ** (pe // ell ** (k + 1))
                d = _bsgs(gamma, h, ell)
                digits_val += d * ell**k
            residues.append(digits_val)
            moduli.append(pe)
        return _crt(residues, moduli)

    # vectorized tables (enumeration paths) -------------------------------

    def _require_tables(self):
        if self.size > self.table_cap:
            raise CapExceeded(f"enumeration of F_{self.p}^{self.degree}", self.size, self.table_cap)

    def mul_matrix(self, c: "FieldElement") -> np.ndarray:
        """F_p-matrix of x -> c*x on coefficient vectors (columns = images of x^j)."""
        M = self.degree
        cols = []
        for j in range(M):
            basis = [0] * j + [1]
            cols.append(self._digits_of(self._encode(P.mulmod(basis, c.coeffs, list(self.modulus), self.p))))
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """F_p-matrix of x -> x^p."""
        M = self.degree
        cols = []
        for j in range(M):
            basis = FieldElement(self, self._encode([0] * j + [1]))
            cols.append((basis**self.p).coeffs)
        return np.array(cols, dtype=np.int64).T

    def digits_array(self, values: np.ndarray) -> np.ndarray:
        """Coefficient vectors (rows) for an array of encodings."""
        v = np.asarray(values, dtype=np.int64).copy()
        out = np.empty(v.shape + (self.degree,), dtype=np.int64)
        for i in range(self.degree):
            v, out[..., i] = np.divmod(v, self.p)
        return out

    @cached_property
    def _powers_of_p(self) -> np.ndarray:
        return np.array([self.p**i for i in range(self.degree)], dtype=np.int64)

    def encode_array(self, digits: np.ndarray) -> np.ndarray:
        return (np.mod(digits, self.p) @ self._powers_of_p).astype(np.int64)

    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[k] = encoding of generator^k for 0 <= k < p^M - 1."""
        self._require_tables()
        n, p, M = self.size - 1, self.p, self.degree
        A = self.mul_matrix(self.generator)
        block = max(1, math.isqrt(n))
        first = np.empty((block, M), dtype=np.int64)
        v = np.zeros(M, dtype=np.int64)
        v[0] = 1
        for k in range(block):
            first[k] = v
            v = (A @ v) % p
        step = np.eye(M, dtype=np.int64)
        for _ in range(block):
            step = (A @ step) % p
        rows = []
        cur = first
        for _ in range(-(-n // block)):
            rows.append(cur)
            cur = (cur @ step.T) % p
        table = self.encode_array(np.concatenate(rows)[:n])
        return table

    @cached_property
    def log_table(self) -> np.ndarray:
        """log_table[v] = dlog of the element encoded by v; entry 0 is -1."""
        exp = self.exp_table
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(self.size - 1, dtype=np.int64)
        if np.count_nonzero(log[1:] < 0):
            raise AssertionError("generator table is not a permutation")
        return log


def _bsgs(base: "FieldElement", target: "FieldElement", order: int) -> int:
    m = math.isqrt(order) + 1
    table = {}
    cur = base.owner.one
    for j in range(m):
        table.setdefault(cur.value, j)
        cur = cur * base
    giant = base ** (-m)
    gamma = target
    for i in range(m + 1):
        if gamma.value in table:
            return (i * m + table[gamma.value]) % order
        gamma = gamma * giant
    raise AssertionError("discrete log not found")  # pragma: no cover


def _crt(residues, moduli) -> int:
    x, mod = 0, 1
    for r, m in zip(residues, moduli):
        t = ((r - x) * pow(mod, -1, m)) % m
        x += mod * t
        mod *= m
    return x % mod


class FieldElement:
    """Immutable element of an ambient FiniteField."""

    __slots__ = ("owner", "value")

    def __init__(self, owner: FiniteField, value: int):
        self.owner = owner
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.owner._digits_of(self.value)

    def __repr__(self):
        return f"FieldElement({self.coeffs})"

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.owner.p
        return isinstance(other, FieldElement) and other.owner is self.owner and other.value == self.value

    def __hash__(self):
        return hash((id(self.owner), self.value))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.owner is not self.owner:
                raise ValidationError("elements of different fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.owner, other % self.owner.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        f = self.owner
        return FieldElement(f, f._encode([a + b for a, b in zip(self.coeffs, other.coeffs)]))

    __radd__ = __add__

    def __neg__(self):
        f = self.owner
        return FieldElement(f, f._encode([-a for a in self.coeffs]))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.owner
        prod = P.mulmod(self.coeffs, other.coeffs, list(f.modulus), f.p)
        return FieldElement(f, f._encode(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        f = self.owner
        if self.value == 0:
            if e < 0:
                raise ZeroElement("zero has no inverse")
            return f.one if e == 0 else f.zero
        e %= f.size - 1
        return FieldElement(f, f._encode(P.powmod(self.coeffs, e, list(f.modulus), f.p)))

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroElement("zero has no inverse")
        return self ** (self.owner.size - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.value == 0


class Subfield:
    """The subfield F_{p^k} of an ambient field, as a set of ambient elements."""

    def __init__(self, ambient: FiniteField, k: int):
        self.ambient = ambient
        self.p = ambient.p
        self.degree = k
        self.size = ambient.p**k
        self.cofactor = (ambient.size - 1) // (self.size - 1)
        self.generator = ambient.generator**self.cofactor

    def __repr__(self):
        return f"Subfield(p={self.p}, degree={self.degree})"

    def contains(self, x: FieldElement) -> bool:
        return frobenius(x, self.degree) == x

    def is_subfield_of(self, other: "Subfield") -> bool:
        return other.ambient is self.ambient and other.degree % self.degree == 0

    def elements(self):
        yield self.ambient.zero
        g = self.generator
        x = self.ambient.one
        for _ in range(self.size - 1):
            yield x
            x = x * g

    def log(self, x: FieldElement) -> int:
        """Exponent j with self.generator^j == x (x a nonzero element of this subfield)."""
        e = self.ambient.dlog(x)
        if e % self.cofactor:
            raise NotASubfield(f"{x} is not in {self}")
        return e // self.cofactor

    # vectorized tables ----------------------------------------------------

    @cached_property
    def exp_values(self) -> np.ndarray:
        """Encodings of generator^j, j = 0 .. size-2."""
        return self.ambient.exp_table[:: self.cofactor][: self.size - 1]

    @cached_property
    def trace_functional(self) -> np.ndarray:
        """Row vector mapping coefficient vectors of subfield elements to Tr_{F/F_p}."""
        A = self.ambient
        Fr = A.frobenius_matrix
        S = np.zeros_like(Fr)
        power = np.eye(A.degree, dtype=np.int64)
        for _ in range(self.degree):
            S = (S + power) % A.p
            power = (Fr @ power) % A.p
        sample = A.digits_array(self.exp_values[: min(64, self.size - 1)])
        images = (sample @ S.T) % A.p
        if np.any(images[:, 1:]):
            raise AssertionError("trace of a subfield element is not in F_p")
        return S[0]

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace_table[j] = Tr_{F/F_p}(generator^j) as an int in [0, p)."""
        digits = self.ambient.digits_array(self.exp_values)
        return (digits @ self.trace_functional) % self.p

    @cached_property
    def one_minus_log(self) -> np.ndarray:
        """Subfield log of 1 - generator^j (entry -1 where that is zero)."""
        A = self.ambient
        digits = -A.digits_array(self.exp_values)
        digits[:, 0] += 1
        vals = A.encode_array(digits)
        amb_log = A.log_table[vals]
        out = np.where(amb_log >= 0, amb_log // self.cofactor, -1)
        return out


def build_tower(p: int, degrees: Iterable[int], *, generator_rank: int = 0,
                cap: int = DEFAULT_AMBIENT_CAP, table_cap: int = DEFAULT_TABLE_CAP):
    """Ambient field F_{p^M}, M = lcm(degrees), plus a subfield handle per degree."""
    if not isprime(p):
        raise NonPrime(f"{p} is not prime")
    if p <= 3:
        raise ValidationError("characteristic must exceed 3")
    degrees = sorted(set(degrees))
    M = _lcm_all(degrees)
    if p**M > cap:
        raise CapExceeded(f"ambient field F_{p}^{M}", p**M, cap)
    ambient = FiniteField(p, M, generator_rank=generator_rank, cap=cap, table_cap=table_cap)
    return ambient, {k: ambient.subfield(k) for k in degrees}


def frobenius(x: FieldElement, e: int) -> FieldElement:
    """x^(p^e) in the ambient field; e is reduced mod M, so negative e is inverse Frobenius."""
    f = x.owner
    return x ** pow(f.p, e % f.degree)


def _field_of(x: FieldElement, field) -> tuple[int, FieldElement]:
    if field is None:
        return x.owner.degree, x
    if isinstance(field, FiniteField):
        return field.degree, x
    if not field.contains(x):
        raise NotASubfield(f"{x} is not in {field}")
    return field.degree, x


def trace_norm(x: FieldElement, sub, field=None) -> tuple[FieldElement, FieldElement]:
    """(Tr, N) of x from ``field`` (default: the ambient field) down to ``sub``."""
    K, x = _field_of(x, field)
    k = sub.degree
    if K % k:
        raise NotASubfield(f"degree {k} does not divide {K}")
    tr = x.owner.zero
    nm = x.owner.one
    y = x
    for _ in range(K // k):
        tr = tr + y
        nm = nm * y
        y = frobenius(y, k)
    return tr, nm


def dlog(x: FieldElement) -> int:
    return x.owner.dlog(x)


def is_cube(x: FieldElement, field=None) -> bool:
    """Whether x is a cube in ``field`` (a Subfield; default the ambient field)."""
    if x.value == 0:
        raise ZeroElement("is_cube of zero")
    Q = field.size if field is not None else x.owner.size
    if field is not None and not field.contains(x):
        raise NotASubfield(f"{x} is not in {field}")
    return x ** ((Q - 1) // math.gcd(3, Q - 1)) == x.owner.one
