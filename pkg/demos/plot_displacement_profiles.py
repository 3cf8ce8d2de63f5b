"""
Displacement profiles of bundled scenarios
==========================================

Count word-ball elements that move every base vertex by at most C, as the
radius grows.  A count that keeps growing at C = 0 means infinitely many
elements fix the base vertices.
"""

from dataclasses import replace
from fractions import Fraction

from valtree.probe import displacement_profile, load_scenario, stabilizer_census, ultrametric_cover
from valtree.valfield import PAdic

sc = load_scenario("laurent-bad")
sc = replace(sc, r_max=5)
prof = displacement_profile(sc)
print(prof.to_csv())
print(prof.verdict(Fraction(0)))

# %%
# Every stabilizer found has integer entries.
for g in stabilizer_census(sc, 3):
    print(g.format())

# %%
# p-adic points split into clusters of small diameter.
cert = ultrametric_cover([0, 1, 2, 3, Fraction(1, 2)], PAdic(2), Fraction(1, 2))
print(cert.parts, cert.ok)
