"""A synthetic extremal measure: what happens when U_p has a double root.

No genuine form over Q has a double U_p root, so the symbol values are
generated at random subject to the Jordan relation
U_p E = alpha E, U_p F = alpha (F + E).

Run with: python3 demos/extremal_measure.py
"""
from fractions import Fraction

from extremal_padic import (admissibility_check, extremal_measure, jordan_pair_check, lp_eval,
                            synthetic_extremal_seed)

p, k = 3, 0
seed = synthetic_extremal_seed(p, k, depth=6, rng_seed=0)
print(f"alpha = {seed.alpha}, of slope {seed.alpha.valuation()} = (k+1)/2")

rep = jordan_pair_check(seed)
print("U_p compatibility at every node:", seed.compatibility_check()["pass"])
print("Jordan block of size", rep["nilpotency_order"], "- relation holds:", rep["jordan"])

T = extremal_measure(seed)
print("additive:", T.additivity_check()["pass"])

# (k+1)/2 is the right growth rate: k/2 is too small for some seeds.
for h in (Fraction(k + 1, 2), Fraction(k, 2)):
    a = admissibility_check(T, h)
    w = a["witness"]
    print(f"h = {h}: pass = {a['pass']}, worst cell U({w['a']}, {w['n']}) with slack {w['slack']}")

# Depth 5 and 6 give the same L_p(1) at the certified precision.
x = lp_eval(T, 1, 1, depth=5)
y = lp_eval(T, 1, 1, depth=6)
print(f"L_p(1) mod 3: depth 5 -> {x}, depth 6 -> {y}")
