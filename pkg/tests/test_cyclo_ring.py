import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import mobius

from twistbsd.cyclo_ring import (CycloRing, as_integer, complex_abs, cyclo_arith, embeddings,
                                 padic_ord_rational)
from twistbsd.errors import BadEmbedding, ConductorMismatch, NotRational, ZeroElement

R30 = CycloRing(30)


def test_ring_is_cached_per_conductor():
    assert CycloRing(30) is R30
    assert R30.phi == 8


def test_zeta_order_and_cyclotomic_relation():
    z = R30.zeta()
    acc = R30.one
    for _ in range(30):
        acc = acc * z
    assert acc == R30.one
    # Horner evaluation of Phi_30 at zeta
    val = R30.zero
    for c in reversed(R30.cyclotomic):
        val = val * z + c
    assert val.is_zero()


def test_small_identity():
    z = R30.zeta()
    assert cyclo_arith(1 + z, 1 - z, "mul") == 1 - z * z


def test_as_integer():
    assert as_integer(R30.integer(3)) == 3
    assert as_integer(R30.zeta(15)) == -1
    with pytest.raises(NotRational):
        as_integer(R30.zeta())


@pytest.mark.parametrize("m", [30, 42, 66, 78])
def test_primitive_root_sum_is_mobius(m):
    R = CycloRing(m)
    total = R.zero
    for k in embeddings(m):
        total = total + R.zeta(k)
    assert as_integer(total) == int(mobius(m))


def test_complex_abs():
    for j in range(30):
        assert abs(complex_abs(R30.zeta(j)) - 1) < 1e-12
    assert abs(complex_abs(1 + R30.root_of_unity(6)) - math.sqrt(3)) < 1e-12
    with pytest.raises(BadEmbedding):
        complex_abs(R30.zeta(), 5)


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        R30.one + CycloRing(42).one
    with pytest.raises(ConductorMismatch):
        R30.root_of_unity(7)


def test_padic_ord():
    assert padic_ord_rational(16, 5) == 0
    assert padic_ord_rational(Fraction(1, 25), 5) == -2
    assert padic_ord_rational(Fraction(7**3, 2), 7) == 3
    with pytest.raises(ZeroElement):
        padic_ord_rational(0, 5)


def test_galois_action_is_ring_map():
    a = R30.element([1, 2, 0, -1, 3])
    b = R30.element([0, 1, 1, 0, 0, -2])
    for k in (7, 11, 29):
        assert (a * b).galois(k) == a.galois(k) * b.galois(k)
        assert (a + b).galois(k) == a.galois(k) + b.galois(k)


coeffs = st.lists(st.integers(-50, 50), min_size=8, max_size=8)


@settings(max_examples=50, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    x, y, z = R30.element(a), R30.element(b), R30.element(c)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_abs_is_multiplicative(a, b):
    x, y = R30.element(a), R30.element(b)
    for k in (1, 7):
        lhs = complex_abs(x * y, k)
        rhs = complex_abs(x, k) * complex_abs(y, k)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)
