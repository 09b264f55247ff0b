"""Scanning a family of points for a pair of modules whose direct sum polygon
might split from the merge of its parts.

A scan over a finite family says nothing about points outside it.  On the
family below (264 profiles, N = 60) no divergence turns up.

Run:  python3 demos/05_witness_scan.py
"""
from ghostslopes import EpsilonChar, parse_profile_family, theorem_condition, witness_search

eps = EpsilonChar.of(7, 0, 7)
s_bar = (4, 5)
print("pairing condition:", theorem_condition(eps, s_bar).holds)
family = parse_profile_family(eps, "anchors=origin,kb:0..20;t=1/2..6/1:step1/2")
print("profiles scanned:", len(family))
hit = witness_search(eps, s_bar, family, 60)
print("witness:", "none found" if hit is None else f"{hit.profile} diverging at x={hit.diverges_at}")
