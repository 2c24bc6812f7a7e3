import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from extremal_padic import (CycloElement, DirichletCharacter, LocallyConstantFn, UnitSubgroup,
                            characters, gauss_sum, integral_additive, integral_additive_closed,
                            integral_mult_char, integral_mult_char_closed, primitive_characters,
                            psi_value, quadratic_character)
from extremal_padic.cyclotomic import discrete_log, euler_phi_pr, generator


def to_complex(x):
    return sum(float(c) * cmath.exp(2j * cmath.pi * i / x.M) for i, c in enumerate(x.coeffs))


def char_complex(chi, a):
    # independent evaluation: chi(g) = exp(2 pi i index / phi(p^r)) for the fixed generator g
    if chi.conductor == 0:
        return 1
    mod = chi.p ** chi.conductor
    g, x, i = generator(chi.p), 1, 0
    while x != a % mod:
        x, i = x * g % mod, i + 1
    return cmath.exp(2j * cmath.pi * chi.index * i / chi.cyclo_modulus)


MODULI = st.sampled_from([3, 4, 5, 9, 12, 25])


@st.composite
def cyclo(draw, M=None):
    M = M or draw(MODULI)
    n = len(CycloElement(M).coeffs)
    return CycloElement(M, [Fraction(draw(st.integers(-5, 5))) for _ in range(n)])


@given(MODULI.flatmap(lambda M: st.tuples(cyclo(M), cyclo(M), cyclo(M))))
def test_ring_axioms(t):
    x, y, z = t
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == 0
    assert abs(to_complex(x * y) - to_complex(x) * to_complex(y)) < 1e-6


@pytest.mark.parametrize("M", [3, 5, 9, 12, 25])
def test_roots_of_unity(M):
    z = CycloElement.zeta(M)
    assert z ** M == 1
    assert sum((CycloElement.zeta(M, e) for e in range(M)), CycloElement.scalar(M, 0)) == 0
    assert CycloElement.zeta(M, 2).lift(2 * M) == CycloElement.zeta(2 * M, 4)


def test_psi_values():
    assert psi_value(Fraction(7), 5) == 1
    assert psi_value(Fraction(1, 5), 5) == CycloElement.zeta(5)
    with pytest.raises(ValueError):
        psi_value(Fraction(1, 3), 5)


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_character_counts_and_orthogonality(p, r):
    chars = characters(p, r)
    prim = primitive_characters(p, r)
    assert len(chars) == euler_phi_pr(p, r)
    assert len(prim) == euler_phi_pr(p, r) - euler_phi_pr(p, r - 1)
    units = [a for a in range(p ** r) if a % p]
    for chi in chars:
        s = sum((chi(a) for a in units), CycloElement.scalar(1, 0))
        assert s == (len(units) if chi.conductor == 0 else 0)


@given(st.sampled_from([(3, 2), (5, 2), (7, 1)]), st.integers(0, 100), st.integers(1, 10 ** 4),
       st.integers(1, 10 ** 4))
def test_character_multiplicative_and_matches_complex_oracle(pr, idx, a, b):
    p, r = pr
    if a % p == 0 or b % p == 0:
        return
    chi = DirichletCharacter(p, r, idx)
    assert chi(a * b) == chi(a) * chi(b)
    assert abs(to_complex(chi(a)) - char_complex(chi, a)) < 1e-9


def test_conductor_normalization():
    # index divisible by p lives at a lower level
    chi = DirichletCharacter(5, 2, 5)
    assert chi.conductor == 1 and chi == DirichletCharacter(5, 1, 1)
    assert DirichletCharacter(3, 2, 0).conductor == 0
    assert discrete_log(generator(7), 7, 3) == 1


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_gauss_sum_against_complex_oracle(p, r):
    for chi in primitive_characters(p, r):
        tau = gauss_sum(chi)
        mod = p ** r
        direct = sum(char_complex(chi, x) * cmath.exp(-2j * cmath.pi * x / mod)
                     for x in range(mod) if x % p)
        assert abs(to_complex(tau) - direct) < 1e-8
        assert abs(abs(direct) ** 2 - mod) < 1e-8


def test_quadratic_gauss_sum_squares_to_signed_p():
    for p in (3, 5, 7, 11, 13):
        chi = quadratic_character(p)
        sign = 1 if p % 4 == 1 else -1
        assert gauss_sum(chi) ** 2 == sign * p


def test_trivial_gauss_sum_is_volume_of_units():
    assert gauss_sum(DirichletCharacter.trivial(5)) == Fraction(4, 5)


@given(st.sampled_from([3, 5, 7]), st.integers(-4, 2), st.integers(1, 50), st.integers(1, 3),
       st.integers(0, 30))
def test_additive_integrals_match_closed_form(p, v, u, n, s):
    a = Fraction(u) * Fraction(p) ** v
    assert integral_additive(a, p) == integral_additive_closed(a, p)
    assert integral_additive(a, p, ("coset", s, n)) == integral_additive_closed(a, p, ("coset", s, n))


@given(st.sampled_from([(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]), st.integers(0, 60),
       st.integers(-4, 2), st.integers(1, 50))
def test_character_integrals_match_closed_form(pr, idx, v, u):
    p, r = pr
    chi = DirichletCharacter(p, r, idx)
    if chi.conductor == 0:
        return
    a = Fraction(u) * Fraction(p) ** v
    assert integral_mult_char(chi, a) == integral_mult_char_closed(chi, a)


def test_character_integral_at_conductor_is_scaled_gauss_sum():
    # |a| = p^n: integral = tau(chi bar)-type sum over phi(p^n); for a = -1/p^n it is tau(chi)/phi(p^n)
    for chi in primitive_characters(5, 1) + primitive_characters(3, 2):
        n = chi.conductor
        got = integral_mult_char(chi, Fraction(-1, chi.p ** n))
        assert got == gauss_sum(chi) / euler_phi_pr(chi.p, n)


def test_vanishing_needs_nontrivial_character_on_subgroup():
    # index-2 subgroup of Z_3^x with the quadratic character: chi is trivial on U,
    # so the integral over U at a = 1 is vol(U) = 1/2, not 0
    chi = quadratic_character(3)
    U = UnitSubgroup(3, 2)
    assert integral_mult_char(chi, 1, U) == Fraction(1, 2)
    assert integral_mult_char_closed(chi, 1, U) == Fraction(1, 2)
    # on all of Z_3^x the usual vanishing holds
    assert integral_mult_char_closed(chi, 1) == 0 == integral_mult_char(chi, 1)


@pytest.mark.parametrize("p,index", [(5, 2), (5, 4), (7, 3), (7, 6)])
def test_subgroup_integrals_match_closed_form(p, index):
    U = UnitSubgroup(p, index)
    for r in (1, 2):
        for chi in primitive_characters(p, r)[:3]:
            for v in range(-3, 2):
                a = Fraction(2) * Fraction(p) ** v
                assert integral_mult_char(chi, a, U) == integral_mult_char_closed(chi, a, U)


def test_locally_constant_integration():
    h = LocallyConstantFn.indicator(5, 3, 2)
    assert h.integrate() == Fraction(1, 20)
    assert h.refine(3).integrate() == h.integrate()
    assert LocallyConstantFn.constant(5).integrate() == 1
    chi = primitive_characters(5, 1)[0]
    assert LocallyConstantFn.from_character(chi).integrate() == 0
