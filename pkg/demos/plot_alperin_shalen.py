"""
Integrality tests over Z[1/s] and Z[t, 1/t]
===========================================

Integral for every synthesized valuation means: a rational integer.
"""

from fractions import Fraction

from valtree.alpsh import LaurentZ, ZInvS, integrality_filter, isotropy_certificate, laurent_sweep, synthesize_valuations
from valtree.exactmat import Mat
from valtree.valfield import RatFunc

print(synthesize_valuations(ZInvS(12)), synthesize_valuations(LaurentZ()))

vs = synthesize_valuations(ZInvS(6))
print([integrality_filter(Fraction(k, 6), vs) for k in range(7)])

# %%
# A small exhaustive sweep over Laurent polynomials finds no counterexample.
res = laurent_sweep(exponents=(-2, 2), coefficients=(-2, 2))
print(res.checked, "checked,", res.accepted, "accepted, ok =", res.ok)

# %%
# The diagonal element diag(t, 1/t) fails the isotropy certificate.
t = RatFunc.t()
print(isotropy_certificate(Mat([[t, 0], [0, 1 / t]]), synthesize_valuations(LaurentZ())))
