"""Orbits of <r> acting on (Z/nZ) x F_q^x by r.(i, alpha) = (r i, alpha^(1/r)).

Field elements of F_q are tracked by their ambient discrete logarithm, so
alpha^(1/r) is the exponent map e -> e * p^(M - nu) mod (p^M - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from sympy import isprime, mobius

from .errors import FieldMissing, NonPrime, ValidationError
from .ff_core import FieldElement, FiniteField


def mult_order(a: int, n: int) -> int:
    """Order of a in (Z/nZ)^x (1 for n = 1)."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValidationError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1:
        x = (x * a) % n
        k += 1
    return k


@dataclass(frozen=True)
class TwistParams:
    """(p, nu, f): r = p^nu, q = p^f."""

    p: int
    nu: int
    f: int
    n: int = 6

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.p <= 3:
            raise ValidationError("p must be a prime > 3")
        if self.nu < 1 or self.f < 1:
            raise ValidationError("nu and f must be positive")
        if self.n < 1 or self.n % self.p == 0:
            raise ValidationError("n must be positive and prime to p")

    @property
    def r(self) -> int:
        return self.p**self.nu

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def p_mod6(self) -> int:
        return self.p % 6

    @property
    def r_mod6(self) -> int:
        return self.r % 6

    @property
    def split(self) -> bool:
        """True when p = 1 mod 6."""
        return self.p % 6 == 1

    def orbit_size_bound(self, n: int | None = None) -> int:
        """Every orbit size on (Z/nZ)^x x F_q^x divides this."""
        n = self.n if n is None else n
        return math.lcm(mult_order(self.r, n), math.lcm(self.f, self.nu) // self.nu)

    def ambient_degree(self) -> int:
        L = self.orbit_size_bound(6)
        c = max(mult_order(self.p, k) for k in (2, 3, 6))
        return math.lcm(self.f, self.nu * L, c)

    def label(self) -> str:
        return f"p={self.p},nu={self.nu},f={self.f}"


@dataclass(frozen=True)
class Orbit:
    """An orbit in O_{r,n,q}: representative (i, alpha) is the least (i, dlog alpha)."""

    n: int
    i: int
    alpha: FieldElement = field(compare=False, repr=False)
    alpha_log: int
    size: int
    elements: tuple[tuple[int, int], ...] = field(compare=False, repr=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.i, self.alpha_log)


@dataclass(frozen=True)
class NOrbit:
    """An orbit of <r> on (Z/6Z)^x."""

    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def i(self) -> int:
        return self.elements[0]


class OrbitSpace:
    """Orbit tables for one parameter set inside a fixed ambient field."""

    def __init__(self, params: TwistParams, ambient: FiniteField):
        if ambient.p != params.p:
            raise ValidationError("ambient field has the wrong characteristic")
        if ambient.degree % params.f:
            raise FieldMissing(f"F_q (degree {params.f}) is not in the ambient field")
        self.params = params
        self.ambient = ambient
        self.order = ambient.size - 1
        self.q_cofactor = self.order // (params.q - 1)
        self._inv_frob = pow(params.p, (-params.nu) % ambient.degree, self.order)
        self._tables: dict[tuple[int, bool], list[Orbit]] = {}
        self._lookup: dict[tuple[int, bool], dict[tuple[int, int], Orbit]] = {}

    # elementary maps ------------------------------------------------------

    def alpha_logs(self) -> range:
        """Ambient dlogs of the elements of F_q^x."""
        return range(0, self.order, self.q_cofactor)

    def act(self, i: int, e: int, n: int) -> tuple[int, int]:
        return (self.params.r * i) % n, (e * self._inv_frob) % self.order

    def alpha_degree(self, e: int) -> int:
        """[F_r(alpha) : F_r] for alpha = g^e."""
        rr = pow(self.params.p, self.params.nu, self.order)
        d, x = 1, (e * rr) % self.order
        while x != e:
            x = (x * rr) % self.order
            d += 1
        return d

    def prime_degree(self, e: int) -> int:
        """[F_p(alpha) : F_p] for alpha = g^e."""
        d, x = 1, (e * self.params.p) % self.order
        while x != e:
            x = (x * self.params.p) % self.order
            d += 1
        return d

    def predicted_size(self, n: int, e: int) -> int:
        """lcm(ord(r mod n), [F_r(alpha):F_r]) with the degree from [F_p(alpha):F_p]."""
        nu = self.params.nu
        deg_r = math.lcm(nu, self.prime_degree(e)) // nu
        return math.lcm(mult_order(self.params.r, n), deg_r)

    def _element(self, e: int) -> FieldElement:
        A = self.ambient
        if A.size <= A.table_cap:
            return A.from_int(int(A.exp_table[e]))
        return A.generator**e

    # enumeration -----------------------------------------------------------

    def orbits(self, n: int | None = None, units_only: bool = True) -> list[Orbit]:
        n = self.params.n if n is None else n
        key = (n, units_only)
        if key not in self._tables:
            self._enumerate(n, units_only)
        return self._tables[key]

    def _enumerate(self, n: int, units_only: bool):
        if n % self.params.p == 0:
            raise ValidationError("n must be prime to p")
        if units_only:
            first = [i for i in range(n) if math.gcd(i, n) == 1]
        else:
            first = list(range(1, n))
        seen: dict[tuple[int, int], Orbit] = {}
        orbits = []
        for i0 in first:
            for e0 in self.alpha_logs():
                if (i0, e0) in seen:
                    continue
                elems = [(i0, e0)]
                cur = self.act(i0, e0, n)
                while cur != (i0, e0):
                    elems.append(cur)
                    cur = self.act(*cur, n)
                rep = min(elems)
                start = elems.index(rep)
                elems = elems[start:] + elems[:start]
                o = Orbit(n=n, i=rep[0], alpha=self._element(rep[1]), alpha_log=rep[1],
                          size=len(elems), elements=tuple(elems))
                for el in elems:
                    seen[el] = o
                orbits.append(o)
        orbits.sort(key=lambda o: (o.i, o.alpha_log))
        self._tables[(n, units_only)] = orbits
        self._lookup[(n, units_only)] = seen

    def orbit_of(self, n: int, i: int, e: int) -> Orbit:
        units = math.gcd(i, n) == 1
        self.orbits(n, units)
        try:
            return self._lookup[(n, units)][(i % n, e % self.order)]
        except KeyError:
            raise FieldMissing(f"({i}, g^{e}) is not in S_{{{n},q}}") from None

    def norbits(self) -> list[NOrbit]:
        r = self.params.r
        out, seen = [], set()
        for i in (1, 5):
            if i in seen:
                continue
            elems = [i]
            j = (r * i) % 6
            while j != i:
                elems.append(j)
                j = (r * j) % 6
            seen.update(elems)
            out.append(NOrbit(tuple(elems)))
        return out

    # structure maps ---------------------------------------------------------

    def project(self, o: Orbit, target_n: int) -> Orbit:
        if o.n % target_n:
            raise ValidationError(f"cannot project mod {o.n} to mod {target_n}")
        return self.orbit_of(target_n, o.i % target_n, o.alpha_log)

    def rho6(self, o: Orbit) -> NOrbit:
        for no in self.norbits():
            if o.i in no.elements:
                return no
        raise AssertionError("unreachable")  # pragma: no cover

    def multipliers(self, o: Orbit) -> tuple[int, int]:
        """(m2, n6) = (|o| / |pi_2(o)|, |o| / |rho_6(o)|)."""
        return o.size // self.project(o, 2).size, o.size // self.rho6(o).size

    def conjugate_orbit(self, o: Orbit) -> Orbit:
        return self.orbit_of(o.n, -o.i, o.alpha_log)

    # counting --------------------------------------------------------------

    @cached_property
    def unit_count(self) -> int:
        n = self.params.n
        return sum(1 for i in range(n) if math.gcd(i, n) == 1) * (self.params.q - 1)


def enumerate_orbits(space: OrbitSpace, n: int, units_only: bool = True) -> list[Orbit]:
    return space.orbits(n, units_only)


def irreducible_count(r: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree d over F_r."""
    return sum(int(mobius(d // e)) * r**e for e in range(1, d + 1) if d % e == 0) // d


def orbit_count_bound(params: TwistParams, n: int = 6) -> dict:
    """Explicit form of |O^x| <= |S^x|/x + c_r r^x / x at x = log q / log r.

    Orbits of length <= x are bounded by phi(n) times the number of monic
    irreducibles of degree <= x over F_r, which is at most
    (r/(r-2)) r^x / x for r >= 5.
    """
    r, q = params.r, params.q
    phi_n = sum(1 for i in range(n) if math.gcd(i, n) == 1)
    S = phi_n * (q - 1)
    x = math.log(q) / math.log(r)
    D = math.floor(x + 1e-12)
    short_exact = phi_n * sum(irreducible_count(r, d) for d in range(1, D + 1))
    c_r = phi_n * r / (r - 2)
    short_bound = c_r * r**x / x if D >= 1 else 0.0
    return {"x": x, "long_bound": S / x, "short_exact": short_exact,
            "short_bound": short_bound, "bound": S / x + short_bound}


def log_size_bound(params: TwistParams, orbit_count: int, n: int = 6) -> float:
    """log y * |O^x| + (log y / y) |S^x| at y = max(log q, e)."""
    phi_n = sum(1 for i in range(n) if math.gcd(i, n) == 1)
    S = phi_n * (params.q - 1)
    y = max(math.log(params.q), math.e)
    return math.log(y) * orbit_count + math.log(y) / y * S
