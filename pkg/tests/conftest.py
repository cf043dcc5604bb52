from functools import lru_cache

import pytest

from twistbsd.context import Choices, TwistContext
from twistbsd.l_function import l_poly_orbit
from twistbsd.orbit_space import TwistParams


@lru_cache(maxsize=None)
def context(p, nu, f, generator_rank=0, zeta_p_power=1):
    return TwistContext(TwistParams(p, nu, f), Choices(generator_rank, zeta_p_power))


@lru_cache(maxsize=None)
def lpoly(p, nu, f):
    return l_poly_orbit(context(p, nu, f))


@pytest.fixture
def ctx_factory():
    return context


@pytest.fixture
def lpoly_factory():
    return lpoly


# criterion number -> list of (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    def record(n: int, passed: bool, detail: str = ""):
        ACCEPTANCE.setdefault(n, []).append((bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[n]
        ok = all(p for p, _ in rows)
        failed = "; ".join(d for p, d in rows if not p)
        details = failed if failed else "; ".join(d for _, d in rows if d)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {details}")
