"""Invariant suites run per parameter set by ``twistbsd verify`` and the tests."""

from __future__ import annotations

from .bsd_invariants import (Check, analytic_rank, brauer_siegel, build_report, ord_lstar_check,
                             rank_by_corrected_formula, rank_by_formula, reg_sha)
from .char_sums import (expected_orbit_gauss_ord, gauss_jacobi_identity_holds, gauss_power_decompose,
                        gauss_sum, orbit_gauss_at, orbit_gauss_ord)
from .context import Choices, TwistContext
from .cyclo_ring import complex_abs, embeddings, padic_ord_rational
from .l_function import (factor_swap_mismatches, l_poly_orbit, l_poly_sextic, orbit_partition,
                         power_sums, special_value)
from .orbit_space import TwistParams
from .point_count import DEFAULT_ORACLE_CAP, l_taylor_oracle, max_prefix
from .report import dossier, dumps
from .sha_dimension import digit_degree, dim_sha, ord_gj_check, s0_s1_sizes, sha_orbits

DEFAULT_GRID = [(5, 1, 1), (5, 1, 2), (5, 2, 1), (7, 1, 1), (7, 1, 2), (11, 1, 1), (11, 2, 1), (13, 1, 1)]
SUITES = ("gauss", "lfun", "oracle", "rank", "ord", "sha", "choice", "bs")
ABS_TOL = 1e-9
ALT_CHOICES = Choices(generator_rank=1, zeta_p_power=2)


def _magnitude_ok(value, size) -> bool:
    target = size**0.5
    return all(abs(complex_abs(value, k) - target) <= ABS_TOL * target for k in embeddings(value.m))


def gauss_suite(ctx: TwistContext) -> list[Check]:
    P, S, A = ctx.params, ctx.system, ctx.ambient
    M = A.degree
    degrees = [k for k in range(1, M + 1) if M % k == 0]
    out = []
    base = {}
    for k in degrees:
        F = S.field(k)
        psi = S.add(F, A.one)
        for n in (2, 3, 6):
            if (F.size - 1) % n:
                continue
            for i in (1, n - 1):
                G = gauss_sum(S.mult(F, n, i), psi, ctx.enum_cap).value
                base[(k, n, i)] = G
                out.append(Check(f"|G| = sqrt|F| (deg {k}, n={n}, i={i})", _magnitude_ok(G, F.size)))
        G2 = base[(k, 2, 1)]
        pstar = p_star(P.p)
        out.append(Check(f"G^2 = (p*)^mu (deg {k})", G2 * G2 == pstar**k))
        if P.p % 3 == 2 and k % 2 == 0:
            ok = True
            for alpha in (A.one, F.generator, F.generator**5):
                for i in (1, 2):
                    G = gauss_sum(S.mult(F, 3, i), S.add(F, alpha), ctx.enum_cap).value
                    ok &= G == S.mult(F, 3, -i)(alpha) * (-P.p) ** (k // 2)
            out.append(Check(f"cubic supersingular value (deg {k})", ok))
    for (k, n, i), G in base.items():
        for k2 in degrees:
            if k2 > k and k2 % k == 0 and (k2, n, i) in base:
                out.append(Check(f"Hasse-Davenport deg {k} -> {k2} (n={n}, i={i})",
                                 base[(k2, n, i)] == G ** (k2 // k)))
    # orbit sums
    for n in (2, 3, 6):
        for o in ctx.orbits(n):
            G = ctx.gauss(o)
            size = P.r**o.size
            ok = _magnitude_ok(G, size)
            ok &= all(orbit_gauss_at(S, P, o, el, ctx.enum_cap).value == G for el in o.elements)
            out.append(Check(f"G(o) well defined with |G(o)| = r^(|o|/2) (n={n}, o={o.key})", ok))
            if n in (2, 3):
                got, want = orbit_gauss_ord(P, o), expected_orbit_gauss_ord(P, o)
                out.append(Check(f"Stickelberger ord G(o) (n={n}, o={o.key})", got == want, str(want), str(got)))
            gp = gauss_power_decompose(S, P, o, ctx.enum_cap)
            out.append(Check(f"G(o) = zeta g^e (n={n}, o={o.key})",
                             _magnitude_ok(gp.g, P.p**gp.c)))
    for no in ctx.space.norbits():
        F = S.field(P.nu * no.size)
        J = [ctx.jacobi(no, i) for i in no.elements]
        ok = all(x == J[0] for x in J) and _magnitude_ok(J[0], F.size)
        ok &= gauss_jacobi_identity_holds(S.mult(F, 2, -no.i), S.mult(F, 3, -no.i), S.add(F, A.one))
        out.append(Check(f"J(o) well defined, |J| = sqrt|F|, J G = G G (o={no.elements})", ok))
    return out


def p_star(p: int) -> int:
    return p if p % 4 == 1 else -p


def lfun_suite(ctx: TwistContext) -> list[Check]:
    P = ctx.params
    L1, L2 = l_poly_orbit(ctx), l_poly_sextic(ctx)
    bad = factor_swap_mismatches(ctx)
    return [
        Check("orbit product = sextic product", L1 == L2),
        Check("degree 2(q-1)", L1.degree == 2 * (P.q - 1), 2 * (P.q - 1), L1.degree),
        Check("constant term 1", L1.coeffs[0] == 1),
        Check("AS factor at o = ST factor at o'", not bad, [], [o.key for o in bad]),
        Check("functional equation sign exists", L1.functional_equation_sign() is not None),
    ]


def oracle_suite(ctx: TwistContext, oracle_max: int, cap: int = DEFAULT_ORACLE_CAP) -> list[Check]:
    P = ctx.params
    n = min(oracle_max, max_prefix(P, cap))
    if n < 1:
        return [Check("oracle prefix (skipped: r above cap)", True)]
    got = l_taylor_oracle(P, n, cap)
    want = power_sums(l_poly_orbit(ctx), n)
    return [Check(f"point-count prefix c_1..c_{n}", got == want, want, got)]


def rank_suite(ctx: TwistContext) -> list[Check]:
    P = ctx.params
    L = l_poly_orbit(ctx)
    rank = analytic_rank(L)
    one, _ = orbit_partition(ctx)
    out = [
        Check("rank formula = analytic rank", rank_by_formula(ctx) == rank, rank, rank_by_formula(ctx)),
        Check("corrected rank formula = analytic rank", rank_by_corrected_formula(ctx) == rank,
              rank, rank_by_corrected_formula(ctx)),
        Check("|O_1| = analytic rank", len(one) == rank, rank, len(one)),
    ]
    if P.p % 6 == 1:
        rs = reg_sha(P, special_value(L))
        out.append(Check("p = 1 mod 6: rank 0", rank == 0, 0, rank))
        out.append(Check("p = 1 mod 6: Reg*|Sha| is a p-adic unit", padic_ord_rational(rs, P.p) == 0,
                         0, padic_ord_rational(rs, P.p)))
    return out


def ord_suite(ctx: TwistContext) -> list[Check]:
    P = ctx.params
    out = ord_lstar_check(P, special_value(l_poly_orbit(ctx)))
    if P.p % 6 == 1:
        rows = ord_gj_check(P)
        bad = [r.j for r in rows if not r.passed]
        out.append(Check("ord G_j = 2m/3 or m/3 by j mod 3", not bad, [], bad[:12]))
        m = digit_degree(P)
        out.append(Check("0 < ord G_j < m", all(0 < r.ord < m for r in rows)))
    return out


def sha_suite(ctx: TwistContext) -> list[Check]:
    P = ctx.params
    if P.p % 6 == 1:
        return [Check("dim Sha = 0 for p = 1 mod 6", dim_sha(P) == 0)]
    orbs = sha_orbits(P)
    total = sum(o.d for o in orbs)
    s0, s1 = s0_s1_sizes(P)
    lstar = special_value(l_poly_orbit(ctx))
    ord_rs = padic_ord_rational(reg_sha(P, lstar), P.p)
    return [
        Check("|o n S0| = |o n S1| for every orbit", all(o.n_s0 == o.n_s1 for o in orbs)),
        Check("sum d(o) = floor(q/6)", total == P.q // 6, P.q // 6, total),
        Check("|S0| = |S1| = floor(q/6)", s0 == s1 == P.q // 6, P.q // 6, [s0, s1]),
        Check("dim Sha = 0 iff ord_p(Reg*|Sha|) = 0", (total == 0) == (ord_rs == 0), ord_rs, total),
    ]


def choice_free_dossier(ctx: TwistContext) -> str:
    d = dossier(build_report(ctx))
    return dumps(d)


def choice_suite(ctx: TwistContext) -> list[Check]:
    other = TwistContext(ctx.params, ALT_CHOICES, enum_cap=ctx.enum_cap)
    same_l = l_poly_orbit(ctx) == l_poly_orbit(other)
    same_gen = ctx.ambient.generator != other.ambient.generator
    return [
        Check("alternate generator differs", same_gen),
        Check("L-polynomial independent of generator and zeta_p", same_l),
        Check("dossier independent of generator and zeta_p", choice_free_dossier(ctx) == choice_free_dossier(other)),
    ]


def bs_suite(ctx: TwistContext) -> list[Check]:
    P = ctx.params
    bs = brauer_siegel(P, special_value(l_poly_orbit(ctx)))
    finite = all(abs(x) < float("inf") for x in (bs.direct, bs.decomposed))
    return [Check("Brauer-Siegel two-way agreement (1e-12)", bs.agree and finite, bs.direct, bs.decomposed)]


def run_point(params: TwistParams, suites=SUITES, oracle_max: int = 4, enum_cap: int | None = None,
              oracle_cap: int = DEFAULT_ORACLE_CAP) -> dict[str, list[Check]]:
    kwargs = {} if enum_cap is None else {"enum_cap": enum_cap}
    ctx = TwistContext(params, **kwargs)
    runners = {
        "gauss": lambda: gauss_suite(ctx),
        "lfun": lambda: lfun_suite(ctx),
        "oracle": lambda: oracle_suite(ctx, oracle_max, oracle_cap),
        "rank": lambda: rank_suite(ctx),
        "ord": lambda: ord_suite(ctx),
        "sha": lambda: sha_suite(ctx),
        "choice": lambda: choice_suite(ctx),
        "bs": lambda: bs_suite(ctx),
    }
    return {name: runners[name]() for name in suites}


def summarize(results: dict[tuple, dict[str, list[Check]]]) -> dict:
    points = []
    first = None
    for key in sorted(results):
        suites = results[key]
        entry = {"p": key[0], "nu": key[1], "f": key[2], "suites": {}}
        for name, checks in suites.items():
            entry["suites"][name] = [{"name": c.name, "passed": c.passed} for c in checks]
            for c in checks:
                if not c.passed and first is None:
                    first = {"p": key[0], "nu": key[1], "f": key[2], "suite": name, "check": c.name,
                             "expected": c.expected, "actual": c.actual}
        entry["passed"] = all(c.passed for cs in suites.values() for c in cs)
        points.append(entry)
    return {"schema_version": 1, "points": points, "all_passed": first is None,
            "first_counterexample": first}
