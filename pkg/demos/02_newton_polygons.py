"""Newton polygons of ghost series, confirmation by doubling, and the # merge.

Run:  python3 demos/02_newton_polygons.py
"""
from fractions import Fraction

from ghostslopes import (EpsilonChar, ModuleSpec, WStarProfile, ghost_polygon, merge, np_equal_upto,
                         np_from_values, stretch)

eps = EpsilonChar.of(7, 0, 4)
spec = ModuleSpec.of(eps, [3])

# Polygon of a hand-made sequence
P = np_from_values([0, 2, 2, 5])
print("vertices:", P.vertices, "slopes:", [str(s) for s in P.slopes])

# Ghost polygon truncated at N = 10; confirmed_upto marks the prefix that is
# unchanged when the truncation is doubled
for t in (Fraction(1, 2), Fraction(3), Fraction(7, 2)):
    G = ghost_polygon(spec, WStarProfile(eps, eps.weight(16), t), 10)
    print(f"k=16 t={t}: slopes {[str(s) for s in G.slopes[:6]]} ... confirmed_upto={G.confirmed_upto}")

# The # merge unites slope multisets; doubling a polygon is the same as stretching it
A = np_from_values([0, 1, 4])
B = np_from_values([0, 2, 4, 7])
print("A # B slopes:", [str(s) for s in merge(A, B).slopes])
print("A # A == stretch(A, 2):", merge(A, A) == stretch(A, 2))

# Comparisons never look past the confirmed prefix
w = WStarProfile(eps, None, Fraction(1, 2))
joint = ghost_polygon(ModuleSpec.of(eps, [3, 3]), w, 30)
single = ghost_polygon(spec, w, 30)
both = merge(single, single)
x = min(joint.confirmed_upto, both.confirmed_upto)
print(f"s=(3,3) polygon equals merge of parts up to x={x}:", bool(np_equal_upto(joint, both, x)))
