"""L(E, T) as a product over orbits, in two groupings, plus rank and special value.

Factors are expanded in Z[zeta_{6p}][T]; only the finished product is
required to have rational integer coefficients.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .context import TwistContext
from .cyclo_ring import CycloInt, as_integer, complex_abs, embeddings
from .errors import IdentityFailure
from .orbit_space import Orbit, TwistParams

WEIL_TOL = 1e-9


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple[int, ...]
    params: TwistParams

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, T):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * T + c
        return acc

    def digest(self) -> str:
        data = ",".join(str(c) for c in self.coeffs).encode()
        return hashlib.sha256(data).hexdigest()

    def functional_equation_sign(self) -> int | None:
        """w in {+1, -1} with a_{d-k} = w r^(d-2k) a_k for all k, or None."""
        d, r, a = self.degree, self.params.r, self.coeffs
        for w in (1, -1):
            ok = True
            for k in range(d + 1):
                lhs, rhs = a[d - k] * r**k, w * r ** (d - k) * a[k]
                # a_{d-k} r^k = w r^(d-k) a_k  avoids negative powers
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                return w
        return None


@dataclass(frozen=True)
class OrbitFactor:
    orbit: Orbit
    omega: CycloInt

    @property
    def size(self) -> int:
        return self.orbit.size

    def is_unitary_root(self, r: int) -> bool:
        return self.omega == r**self.orbit.size


def as_factor(ctx: TwistContext, o: Orbit) -> CycloInt:
    """omega(o) = G(pi_2(o))^m2 * G(pi_3(o))."""
    sp = ctx.space
    m2, _ = sp.multipliers(o)
    return ctx.gauss(sp.project(o, 2)) ** m2 * ctx.gauss(sp.project(o, 3))


def st_factor(ctx: TwistContext, o: Orbit) -> CycloInt:
    """J(rho_6(o))^n6 * G(o)."""
    sp = ctx.space
    _, n6 = sp.multipliers(o)
    return ctx.jacobi(sp.rho6(o), o.i) ** n6 * ctx.gauss(o)


def check_weil(omega: CycloInt, r: int, size: int, tol: float = WEIL_TOL) -> bool:
    target = float(r) ** size
    return all(abs(complex_abs(omega, k) - target) <= tol * target for k in embeddings(omega.m))


def orbit_factors(ctx: TwistContext, check: bool = True) -> list[OrbitFactor]:
    out = []
    for o in ctx.orbits(6):
        w = as_factor(ctx, o)
        if check and not check_weil(w, ctx.params.r, o.size):
            raise IdentityFailure(f"omega({o}) is not a Weil integer of size r^{o.size}")
        out.append(OrbitFactor(o, w))
    return out


def _expand(ctx: TwistContext, factors: list[tuple[CycloInt, int]]) -> tuple[int, ...]:
    ring = ctx.ring
    degree = sum(k for _, k in factors)
    poly = [ring.one] + [ring.zero] * degree
    top = 0
    for w, k in factors:
        top += k
        for j in range(top, k - 1, -1):
            if not poly[j - k].is_zero():
                poly[j] = poly[j] - w * poly[j - k]
    return tuple(as_integer(c) for c in poly)


def _finish(ctx: TwistContext, factors) -> LPolynomial:
    coeffs = _expand(ctx, factors)
    L = LPolynomial(coeffs, ctx.params)
    if L.degree != 2 * (ctx.params.q - 1) or coeffs[0] != 1:
        raise IdentityFailure("L-polynomial has the wrong shape")
    return L


def l_poly_orbit(ctx: TwistContext) -> LPolynomial:
    """prod over O^x_{r,6,q} of (1 - G(pi_2 o)^m2 G(pi_3 o) T^|o|)."""
    return _finish(ctx, [(f.omega, f.size) for f in orbit_factors(ctx)])


def l_poly_sextic(ctx: TwistContext) -> LPolynomial:
    """prod over O^x_{r,6,q} of (1 - J(rho_6 o)^n6 G(o) T^|o|)."""
    return _finish(ctx, [(st_factor(ctx, o), o.size) for o in ctx.orbits(6)])


def factor_swap_mismatches(ctx: TwistContext) -> list[Orbit]:
    """Orbits o whose product factor differs from the sextic factor at the conjugate orbit."""
    bad = []
    for o in ctx.orbits(6):
        if as_factor(ctx, o) != st_factor(ctx, ctx.space.conjugate_orbit(o)):
            bad.append(o)
    return bad


# Taylor coefficients -------------------------------------------------------

def power_sums(L: LPolynomial, n_max: int) -> list[int]:
    """s_1..s_n_max with -log L(T) = sum s_n T^n / n (Newton's identities)."""
    a = list(L.coeffs) + [0] * max(0, n_max + 1 - len(L.coeffs))
    s = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        s[n] = -n * a[n] - sum(a[k] * s[n - k] for k in range(1, n))
    return s[1:]


# rank and special value ------------------------------------------------------

def _divide_linear(coeffs: list[Fraction], r: int) -> list[Fraction] | None:
    """Quotient of coeffs by (1 - rT), or None if it does not divide."""
    # (1 - rT) * b = a  =>  b_0 = a_0, b_k = a_k + r b_{k-1}
    b = []
    prev = Fraction(0)
    for k in range(len(coeffs) - 1):
        prev = coeffs[k] + r * prev
        b.append(prev)
    if coeffs[-1] + r * prev != 0:
        return None
    return b


def _rank_split(L: LPolynomial) -> tuple[int, list[Fraction]]:
    r = L.params.r
    cur = [Fraction(c) for c in L.coeffs]
    rank = 0
    while len(cur) > 1:
        q = _divide_linear(cur, r)
        if q is None:
            break
        cur = q
        rank += 1
    return rank, cur


def analytic_rank(L: LPolynomial) -> int:
    return _rank_split(L)[0]


def special_value(L: LPolynomial) -> Fraction:
    """[L(T) / (1 - rT)^rank] at T = 1/r."""
    _, quot = _rank_split(L)
    T = Fraction(1, L.params.r)
    acc = Fraction(0)
    for c in reversed(quot):
        acc = acc * T + c
    den = acc.denominator
    p = L.params.p
    while den % p == 0:
        den //= p
    if den != 1:
        raise IdentityFailure(f"L* = {acc} is not in Z[1/p]")
    return acc


def orbit_partition(ctx: TwistContext, factors: list[OrbitFactor] | None = None):
    """(O_1, O_2): orbits with omega(o) = r^|o| and the rest."""
    factors = orbit_factors(ctx) if factors is None else factors
    r = ctx.params.r
    one = [f for f in factors if f.is_unitary_root(r)]
    two = [f for f in factors if not f.is_unitary_root(r)]
    return one, two


def special_value_from_orbits(ctx: TwistContext, factors: list[OrbitFactor] | None = None) -> Fraction:
    """prod_{O_1} |o| * prod_{O_2} (1 - omega(o)/r^|o|), evaluated exactly."""
    one, two = orbit_partition(ctx, factors)
    r = ctx.params.r
    num = ctx.ring.one
    den = 1
    for f in two:
        R = r**f.size
        num = num * (R - f.omega)
        den *= R
    value = Fraction(as_integer(num), den)
    for f in one:
        value *= f.size
    return value
