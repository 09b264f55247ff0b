"""The Delta' table around one ghost zero, its hull, and near-Steinberg ranges.

Run:  python3 demos/04_delta_invariants.py
"""
from fractions import Fraction

from ghostslopes import (EpsilonChar, SParam, WStarProfile, ab_values, delta_hull, delta_increment,
                         f_value, near_steinberg, p_kl, theta)

eps = EpsilonChar.of(7, 0, 4)
sp = SParam(eps, 3)
k = eps.weight(16)

T = delta_hull(sp, k)
print("l  Delta'  hull")
for l, v, h in T.rows():
    print(f"{l:2d}  {v!s:6}  {h}")
print("symmetric:", T.symmetric)
print("increments:", {l: str(d) for l, d in T.hull_increments().items()})
print("closed-form increments:", [str(delta_increment(sp, k, l)) for l in (1, 2)])
print("theta at l=1,2:", theta(sp, k, 1), theta(sp, k, 2), " (A, B) at l=1:", ab_values(sp, k, 1))
print("P_{16,1} =", p_kl(eps, k, 1), " F(1) about 0 =", f_value(sp, k, 1, 0))

# A point close to w_16 sees a long segment around the middle of the polygon
for t in (1, 3, 5):
    ns = near_steinberg(sp, k, WStarProfile(eps, k, Fraction(t)))
    print(f"v(w* - w_16) = {t}:", "no range" if ns is None else f"L={ns.L}, range {ns.range}")

# A larger weight, with asymmetric increments visible in the hull
big = eps.weight_kb(60)
T60 = delta_hull(sp, big)
inc = T60.hull_increments()
print(f"k_bullet=60: d_new={T60.d_new}, first increments {[str(inc[l]) for l in range(1, 8)]}")
