import pytest

from twistbsd.errors import CapExceeded, ValidationError
from twistbsd.l_function import power_sums
from twistbsd.orbit_space import TwistParams
from twistbsd.point_count import (coefficient_naive, coefficient_transform, l_taylor_oracle,
                                  max_prefix)


def _brute(params, n):
    """Literal double loop over (t, x) for tiny fields."""
    from twistbsd.ff_core import FiniteField

    F = FiniteField(params.p, params.nu * n)
    els = list(F.elements())
    cubes = [x * x * x for x in els]
    total = 0
    for t in els:
        u = t ** params.q - t
        for c in cubes:
            w = c + u
            if not w.is_zero():
                total += 1 if w ** ((F.size - 1) // 2) == F.one else -1
    return total


def test_first_coefficients_smallest_case():
    P = TwistParams(5, 1, 1)
    assert l_taylor_oracle(P, 2) == [0, -200]
    assert _brute(P, 1) == 0
    assert _brute(P, 2) == -200


@pytest.mark.parametrize("key,n", [((5, 1, 1), 3), ((7, 1, 1), 2), ((5, 1, 2), 2), ((11, 1, 1), 2)])
def test_naive_matches_transform(key, n):
    P = TwistParams(*key)
    assert coefficient_naive(P, n) == coefficient_transform(P, n)


@pytest.mark.parametrize("key,n", [((5, 1, 1), 4), ((7, 1, 1), 4), ((5, 2, 1), 3), ((5, 1, 2), 4),
                                   ((13, 1, 1), 3)])
def test_oracle_matches_l_polynomial(lpoly_factory, key, n):
    assert l_taylor_oracle(TwistParams(*key), n) == power_sums(lpoly_factory(*key), n)


def test_caps():
    P = TwistParams(5, 1, 1)
    with pytest.raises(CapExceeded):
        l_taylor_oracle(P, 3, cap=100)
    with pytest.raises(CapExceeded):
        coefficient_naive(P, 3, cap=1000)
    assert max_prefix(P, cap=125) == 3
    assert max_prefix(TwistParams(11, 2, 1), cap=100) == 0


def test_bad_method():
    with pytest.raises(ValidationError):
        l_taylor_oracle(TwistParams(5, 1, 1), 1, method="fourier")
