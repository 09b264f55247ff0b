"""Direct sums: the pairing condition, coefficient factorization, and the
zigzag criterion next to a direct polygon comparison.

Run:  python3 demos/03_direct_sums.py
"""
from fractions import Fraction

from ghostslopes import (EpsilonChar, WStarProfile, direct_sum_compare, factorization_check,
                         partition, s_set, theorem_condition, zigzag_check)

# Balanced partitions put odd parts last
for n, u in ((7, 3), (7, 2), (6, 3)):
    print(f"partition({n}, {u}) = {partition(n, u).parts}")

# p = 7, k0 = 4: s = 3 pairs with its companion s = 0
eps = EpsilonChar.of(7, 0, 4)
for tup in ((0, 3), (3, 3), (1, 3)):
    c = theorem_condition(eps, tup)
    print(f"condition{tup}: {c.holds}  non-generic={c.non_generic}")
print("convention:", theorem_condition(eps, (3,)).convention)

# Joint dagger coefficients factor through the partition of n
eps11 = EpsilonChar.of(11, 0, 4)
print("S for p=11, k0=4:", s_set(eps11))
print("factorization (3, 5) up to n=100:", bool(factorization_check(eps11, (3, 5), 100)))

# The pair (4, 5) at p = 7, k0 = 7 violates the pairing condition; at these
# profiles the zigzag inequalities hold and the polygons agree
eps77 = EpsilonChar.of(7, 0, 7)
for kb, t in ((0, Fraction(1, 2)), (3, Fraction(2)), (10, Fraction(9, 2)), (24, Fraction(7))):
    w = WStarProfile(eps77, eps77.weight_kb(kb), t)
    z = zigzag_check(eps77, (4, 5), w, 60)
    c = direct_sum_compare(eps77, (4, 5), w, 60, dagger=True)
    print(f"{w}: zigzag {'holds' if z else 'fails'} up to {z.checked_upto}, compare {c.label}")
