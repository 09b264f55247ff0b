"""Ghost coefficients as exponent maps, and their valuations at a point.

Run:  python3 demos/01_ghost_coefficients.py
"""
from fractions import Fraction

from ghostslopes import EpsilonChar, ModuleSpec, WStarProfile, eval_valuations, series, s_set
from ghostslopes.dims import SParam, d_dagger, d_iw, d_ur, table_row

# A character with p = 7 and k0 = 4; its weights are k = 4, 10, 16, ...
eps = EpsilonChar.of(7, 0, 4)
print("S =", s_set(eps))

# The primitive module s = 3 and its (delta, t1, t2) row
sp = SParam(eps, 3)
print("table row for s=3:", table_row(sp))
for kb in range(6):
    print(f"  k_bullet={kb}: d_ur={d_ur(sp, kb)} d_iw={d_iw(sp, kb)} dagger={d_dagger(sp, kb)}")

# The first few coefficients: each is a product of (w - w_k)^e, stored as {k: e}
gs = series(ModuleSpec.of(eps, [3]), 4)
for c in gs.coeffs:
    print(f"g_{c.n} = {c.factors}  (degree {c.degree})")

# The dagger series is the plain one shifted by delta_s = 1
dag = series(ModuleSpec.of(eps, [3]), 4, dagger=True)
print("dagger:", [c.factors for c in dag.coeffs])

# Valuations at a point at distance 1/2 from the origin: all distances are 1/2,
# so each valuation is half the degree
w = WStarProfile(eps, None, Fraction(1, 2))
print("valuations at origin:t=1/2:", [str(v) for v in eval_valuations(gs, w)])

# Near a ghost zero the picture changes: the anchor weight 16 sits at distance 5/2
w16 = WStarProfile(eps, eps.weight(16), Fraction(5, 2))
print("valuations at k=16:t=5/2:", [str(v) for v in eval_valuations(gs, w16)])
