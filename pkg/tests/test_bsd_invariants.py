import math
from fractions import Fraction

import pytest

from twistbsd.bsd_invariants import (brauer_siegel, build_report, epsilon, epsilon_cubic_only,
                                     ord_lstar_check, rank_by_corrected_formula, rank_by_formula,
                                     reg_sha, structural_constants)
from twistbsd.errors import WrongResidue
from twistbsd.l_function import analytic_rank, orbit_factors, special_value
from twistbsd.orbit_space import TwistParams

NONSPLIT = [(5, 1, 1), (5, 1, 2), (5, 2, 1), (11, 1, 1), (11, 2, 1)]
SPLIT = [(7, 1, 1), (7, 1, 2), (13, 1, 1)]

# (rank, L*, Reg*|Sha|, dim Sha), computed with the orbit product and cross-checked
# against the point-count oracle
TABLE = {
    (5, 1, 1): (0, Fraction(16), Fraction(16), 0),
    (5, 1, 2): (4, Fraction(20736), Fraction(12960000), 4),
    (5, 2, 1): (0, Fraction(256), Fraction(256), 0),
    (7, 1, 1): (0, Fraction(1, 7), Fraction(1), 0),
    (7, 1, 2): (0, Fraction(531441, 5764801), Fraction(531441), 0),
    (11, 1, 1): (10, Fraction(1024), Fraction(11264), 1),
    (11, 2, 1): (20, Fraction(1), Fraction(121), 1),
    (13, 1, 1): (0, Fraction(729, 169), Fraction(729), 0),
}


@pytest.mark.parametrize("key", sorted(TABLE))
def test_frozen_invariants(ctx_factory, lpoly_factory, key):
    rank, lstar, rs, ds = TABLE[key]
    L = lpoly_factory(*key)
    report = build_report(ctx_factory(*key), L)
    assert analytic_rank(L) == report.rank == rank
    assert special_value(L) == report.lstar == lstar
    assert report.reg_sha == rs
    assert report.dim_sha == ds


@pytest.mark.parametrize("key", NONSPLIT)
def test_corrected_epsilon_matches_factor(ctx_factory, key):
    ctx = ctx_factory(*key)
    for f in orbit_factors(ctx):
        eps = epsilon(ctx, f.orbit, f.omega)  # raises if omega != eps r^|o|
        assert eps ** 6 == 1


def test_cubic_only_epsilon_disagrees_somewhere(ctx_factory):
    ctx = ctx_factory(5, 1, 2)
    r = ctx.params.r
    bad = [f for f in orbit_factors(ctx) if epsilon_cubic_only(ctx, f.orbit) * r**f.size != f.omega]
    assert bad


def test_epsilon_needs_nonsplit(ctx_factory):
    ctx = ctx_factory(7, 1, 1)
    with pytest.raises(WrongResidue):
        epsilon_cubic_only(ctx, ctx.orbits(6)[0])


@pytest.mark.parametrize("key", NONSPLIT + SPLIT)
def test_corrected_rank_formula(ctx_factory, key):
    assert rank_by_corrected_formula(ctx_factory(*key)) == TABLE[key][0]


@pytest.mark.parametrize("key", [k for k in NONSPLIT + SPLIT if k != (5, 1, 2)])
def test_closed_form_rank_where_it_holds(ctx_factory, key):
    assert rank_by_formula(ctx_factory(*key)) == TABLE[key][0]


def test_closed_form_rank_misses_rank_four(ctx_factory):
    assert rank_by_formula(ctx_factory(5, 1, 2)) == 0


@pytest.mark.parametrize("key", sorted(TABLE))
def test_lstar_valuation_checks(key):
    checks = ord_lstar_check(TwistParams(*key), TABLE[key][1])
    assert checks and all(c.passed for c in checks)


def test_strong_conditions_case():
    checks = ord_lstar_check(TwistParams(11, 2, 1), Fraction(1))
    assert [c.name for c in checks] == ["L* is an integer", "L* = 1"]


def test_reg_sha():
    assert reg_sha(TwistParams(11, 1, 1), Fraction(1024)) == 11264
    assert reg_sha(TwistParams(5, 1, 3), Fraction(1)) == 5**20


@pytest.mark.parametrize("q_key,h,inf", [((7, 1, 1), 2, "II*"), ((5, 1, 1), 1, "II"),
                                         ((5, 1, 2), 5, "II*"), ((5, 1, 3), 21, "II"), ((13, 1, 1), 3, "II*")])
def test_structural_constants(q_key, h, inf):
    P = TwistParams(*q_key)
    c = structural_constants(P)
    assert c.height_exponent == h == math.ceil(P.q / 6)
    assert c.conductor_degree == 2 * (P.q + 1)
    assert c.l_degree == 2 * (P.q - 1)
    assert c.reduction_at_infinity == inf
    assert (c.j_invariant, c.torsion_order, c.tamagawa_product) == (0, 1, 1)


def test_brauer_siegel_values():
    bs = brauer_siegel(TwistParams(5, 1, 1), Fraction(16))
    assert bs.agree
    assert bs.direct == pytest.approx(math.log(16) / math.log(5), abs=1e-12)
    bs = brauer_siegel(TwistParams(11, 2, 1), Fraction(1))
    assert bs.direct == pytest.approx(0.5, abs=1e-12)
    bs = brauer_siegel(TwistParams(5, 1, 3), Fraction(17592186044416))
    assert bs.agree


def test_report_flags(ctx_factory):
    good = build_report(ctx_factory(5, 1, 1))
    assert good.all_passed
    bad = build_report(ctx_factory(5, 1, 2))
    failed = [c.name for c in bad.checks if not c.passed]
    assert failed == ["rank = rank formula"]
