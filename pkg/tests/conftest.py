"""Shared fixtures: the level-11 and level-1 eigensymbols are built once per session."""
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from extremal_padic import ManinSymbolSpace, hecke_polynomial_roots, measure_from_symbol, p_stabilize

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@lru_cache(maxsize=None)
def level11():
    S = ManinSymbolSpace(11, 0)
    return S, S.eigensymbol([(2, -2)], 1), S.eigensymbol([(2, -2)], -1)


@lru_cache(maxsize=None)
def delta_symbols():
    S = ManinSymbolSpace(1, 10)
    return S, S.eigensymbol([(2, -24)], 1), S.eigensymbol([(2, -24)], -1)


def a_p_11(p):
    # a_p of X_0(11) from its T_p eigenvalue
    S, plus, _ = level11()
    v = plus.vector()
    i = next(i for i, x in enumerate(v) if x)
    return plus.hecke(p).vector()[i] / v[i]


@lru_cache(maxsize=None)
def stabilized(p):
    """(phi, alpha, beta, phi_alpha, phi_beta) for the level-11 form at p."""
    _, plus, minus = level11()
    phi = plus + minus
    al, be = hecke_polynomial_roots(a_p_11(p), p, 0)
    return phi, al, be, p_stabilize(phi, p, al), p_stabilize(phi, p, be)


@lru_cache(maxsize=None)
def tables(p, depth):
    phi, al, be, fa, fb = stabilized(p)
    return measure_from_symbol(fa, p, al, depth), measure_from_symbol(fb, p, be, depth)


@pytest.fixture(scope="session")
def sym11():
    return level11()


@pytest.fixture(scope="session")
def sym_delta():
    return delta_symbols()


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
