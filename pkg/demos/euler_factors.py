"""Euler factors from the Kirillov model, checked against their closed forms.

The oracle sums delta(1_H) shell by shell, so it knows nothing about the
closed form it is compared with.

Run with: python3 demos/euler_factors.py
"""
from fractions import Fraction

from extremal_padic import (EXTREMAL, PRINCIPAL, SPECIAL, LocalCharacter, euler_factor_closed,
                            euler_factor_oracle, primitive_characters)
from extremal_padic.cyclotomic import DirichletCharacter
from extremal_padic.kirillov import theta

p, k, m = 5, 2, 1
triv = DirichletCharacter.trivial(p)
chi = LocalCharacter(triv, Fraction(2))
second = LocalCharacter(triv, Fraction(3))

for chi0 in [triv] + primitive_characters(p, 1)[:1] + primitive_characters(p, 2)[:1]:
    print(f"chi_0 of conductor {p}^{chi0.conductor}")
    for case in (PRINCIPAL, SPECIAL, EXTREMAL):
        closed = euler_factor_closed(case, chi0, m, k, chi, second)
        oracle, info = euler_factor_oracle(case, chi0, m, k, chi, second)
        print(f"  {case:9s} agree: {closed == oracle}   shells used: {info['shells']}")

# The unramified extremal value in terms of alpha = p^(1/2) / chi(p).
alpha = theta(p) / 2
print("\nextremal, chi_0 trivial:", euler_factor_closed(EXTREMAL, triv, m, k, chi))
print("  from alpha:", (Fraction(p) ** (k - m) / alpha + Fraction(p) ** (m - k - 1) * alpha
                        - Fraction(2, p)) / (1 - Fraction(1, p)))

# chi(p) = theta makes the tail a divergent constant series; the oracle says so.
value, info = euler_factor_oracle(EXTREMAL, triv, 0, 0, LocalCharacter(triv, theta(p)))
print("\npole case:", value, info)
