"""
A rational representation from traces
=====================================

Pick group elements whose span is the full matrix algebra.  Writing g times each
basis element in that basis gives a linear representation with rational entries.
"""

from fractions import Fraction

from valtree.exactmat import GeneratorSet, Mat
from valtree.tracerep import alpha, burnside_basis, integral_characteristic

S = Mat([[0, -1], [1, 0]])
T = Mat([[1, 1], [0, 1]])
tb = burnside_basis(GeneratorSet([S, T], ["S", "T"]), 4)
print("basis words:", [" ".join(w) or "1" for w in tb.words])
print("Gram determinant:", tb.gram_det())

# %%
# The map is a homomorphism.
print(alpha(S * T, tb) == alpha(S, tb) * alpha(T, tb))
print(alpha(T, tb))

# %%
# Elements of SL(2, Z) have integral characteristic polynomials; a diagonal
# matrix with a 1/2 does not.
print(integral_characteristic(S * T), integral_characteristic(Mat.diag(Fraction(2), Fraction(1, 2))))
