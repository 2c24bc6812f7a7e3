from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import a_p_11, delta_symbols, level11, stabilized
from extremal_padic import ManinSymbolSpace, ResourceBoundError, hecke_polynomial_roots, p_stabilize
from extremal_padic.modsym import _apply_cusp, act_poly, inverse_int, transpose_apply
from extremal_padic.oracles import elliptic_ap, ramanujan_tau

MATS = st.tuples(*[st.integers(-4, 4)] * 4)


def mat_mul(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@given(MATS, MATS, st.lists(st.integers(-9, 9), min_size=5, max_size=5))
def test_polynomial_action_is_multiplicative(A, B, P):
    assert act_poly(A, act_poly(B, P)) == act_poly(mat_mul(A, B), P)
    assert act_poly((1, 0, 0, 1), P) == P


def test_oracles():
    # [DERIVED] point counts and the Delta product
    assert [elliptic_ap(q) for q in (2, 3, 5, 7, 13)] == [-2, -1, 1, -2, 4]
    assert [ramanujan_tau(n) for n in (1, 2, 3, 5, 7)] == [1, -24, 252, 4830, -16744]


@pytest.mark.parametrize("M,k,cusp", [(11, 0, 2), (1, 0, 0), (1, 10, 2), (11, 2, 4), (17, 0, 2)])
def test_cuspidal_dimensions(M, k, cusp):
    S = ManinSymbolSpace(M, k)
    assert S.cuspidal_dimension() == cusp
    assert len(S.cuspidal_basis()) == cusp


def test_basis_satisfies_relations():
    S = ManinSymbolSpace(11, 2)
    for i in range(S.dimension):
        phi = S.symbol([int(i == j) for j in range(S.dimension)])
        assert phi.relation_residual() == []


def test_hecke_operators_commute():
    S = ManinSymbolSpace(11, 2)
    T2, T3 = S.hecke_matrix(2), S.hecke_matrix(3)
    n = S.dimension
    prod = lambda A, B: [[sum(A[i][l] * B[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    assert prod(T2, T3) == prod(T3, T2)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 13])
def test_level_11_eigenvalues_match_point_counts(q):
    _, plus, minus = level11()
    want = elliptic_ap(q)
    assert plus.hecke(q) == plus * want
    assert minus.hecke(q) == minus * want


@pytest.mark.parametrize("q", [2, 3, 5])
def test_level_1_weight_12_matches_delta(q):
    _, plus, minus = delta_symbols()
    assert plus.hecke(q) == plus * ramanujan_tau(q)
    assert minus.hecke(q) == minus * ramanujan_tau(q)


def test_signs_under_involution():
    for _, plus, minus in (level11(), delta_symbols()):
        assert plus.involution() == plus
        assert minus.involution() == minus * -1
        assert not plus.is_zero() and not minus.is_zero()


@given(st.fractions(max_denominator=60))
def test_gamma0_equivariance_and_path_independence(r):
    # phi(g r - g s) = g . phi(r - s) for g in Gamma_0(M); the two sides use
    # different unimodular paths
    for (_, plus, _), gens in ((delta_symbols(), [(1, 1, 0, 1), (2, 1, 1, 1), (0, -1, 1, 0)]),
                               (level11(), [(1, 1, 0, 1), (1, 0, 11, 1), (4, 1, 11, 3)])):
        for g in gens:
            lhs = plus.evaluate(_apply_cusp(g, r), _apply_cusp(g, Fraction(0)))
            assert lhs == transpose_apply(inverse_int(g), plus.evaluate(r, Fraction(0)))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_p_stabilization_eigen_relation(p):
    phi, al, be, fa, fb = stabilized(p)
    assert al * be == p and al + be == a_p_11(p)
    assert fa.up(p) == fa * al
    assert fb.up(p) == fb * be


def test_stabilization_rejects_wrong_root():
    phi = stabilized(3)[0]
    with pytest.raises(ArithmeticError):
        p_stabilize(phi, 3, Fraction(2))


def test_hecke_roots_rational_and_quadratic():
    assert hecke_polynomial_roots(3, 2, 0) == (Fraction(2), Fraction(1))
    al, be = hecke_polynomial_roots(-2, 7, 0)
    assert al.field.D == -6 and al * be == 7 and al + be == -2
    al, be = hecke_polynomial_roots(0, 5, 0)
    assert al.field.kind == "ramified" and al.valuation() == be.valuation() == Fraction(1, 2)


def test_resource_bound(monkeypatch):
    monkeypatch.setenv("EXTREMAL_PADIC_MAX_COORDS", "50")
    with pytest.raises(ResourceBoundError):
        ManinSymbolSpace(11, 10)


def test_bad_weight_rejected():
    with pytest.raises(ValueError):
        ManinSymbolSpace(11, 1)
