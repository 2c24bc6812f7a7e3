"""The p-adic measure of X_0(11) at p = 3, from modular symbols to L_p.

Run with: python3 demos/level11_measure.py
"""
from fractions import Fraction

from extremal_padic import (ManinSymbolSpace, admissibility_check, hecke_polynomial_roots,
                            integrate_character, lp_eval, measure_from_symbol, p_stabilize,
                            primitive_characters)
from extremal_padic.oracles import elliptic_ap

p = 3

# The weight-2 cusp form of level 11 is cut out by T_2 = -2.
S = ManinSymbolSpace(11, 0)
print(f"Manin symbols at level 11: dimension {S.dimension}, cuspidal {S.cuspidal_dimension()}")
plus = S.eigensymbol([(2, -2)], 1)
minus = S.eigensymbol([(2, -2)], -1)
for q in (3, 5, 7):
    got = plus.hecke(q).vector()[1] / plus.vector()[1]
    print(f"  a_{q} = {got}   (point count on the curve: {elliptic_ap(q)})")

# a_3 = -1, so the Hecke polynomial X^2 + X + 3 has roots in Q(sqrt(-11)).
phi = plus + minus
alpha, beta = hecke_polynomial_roots(-1, p, 0)
print(f"\nroots at p = {p}: alpha = {alpha} (slope {alpha.valuation()}), "
      f"beta = {beta} (slope {beta.valuation()})")

# Stabilize to level 33; each root gives a U_3 eigensymbol.
f_alpha = p_stabilize(phi, p, alpha)
f_beta = p_stabilize(phi, p, beta)
print("U_3 phi_alpha == alpha phi_alpha:", f_alpha.up(p) == f_alpha * alpha)

# Moments on U(a, n) up to depth 4, and the admissibility bound each table meets.
Ta = measure_from_symbol(f_alpha, p, alpha, 4)
Tb = measure_from_symbol(f_beta, p, beta, 4)
for name, T in (("alpha", Ta), ("beta", Tb)):
    add = T.additivity_check()
    adm = admissibility_check(T, T.h)
    print(f"mu_{name}: additive on {add['checked']} cells, "
          f"{T.h}-admissible: {adm['pass']} (tightest v(A) = {adm['tight_A_valuation']})")

# The two measures are different, but twisted integrals agree after scaling by alpha^r.
for chi in primitive_characters(p, 1):
    lhs = integrate_character(Ta, chi, 0) * alpha
    rhs = integrate_character(Tb, chi, 0) * beta
    print(f"alpha int chi dmu_alpha == beta int chi dmu_beta for {chi}: {lhs == rhs}")

# The ordinary measure is bounded, so L_p converges quickly.
print(f"\nL_p(0) = total mass = {Tb.total_mass()}")
for s in (Fraction(0), Fraction(1), Fraction(-1)):
    print(f"L_p({s}) mod 3^3 = {lp_eval(Tb, s, 3)}")
