"""
Composition rank of unipotent groups
====================================

For a group of uni-upper-triangular matrices we look at the entries above the
diagonal layer by layer and bound the Q-rank of what they span.
"""

from valtree.exactmat import GeneratorSet, Mat, tilde_length, length
from valtree.unipotent import composition_rank_bounds, entry_span_upper, independence_determinant
from valtree.valfield import PAdic, RatFunc, UniPoly

t = RatFunc.t()
one = RatFunc(1)

heis = GeneratorSet([Mat.elementary(3, 1, 2, 1), Mat.elementary(3, 2, 3, 1)])
sl2 = GeneratorSet([Mat.elementary(2, 1, 2, one, one), Mat.elementary(2, 1, 2, t, one)])

for name, S, L in (("heisenberg", heis, 4), ("sl2 over Q[t]", sl2, 3)):
    b = composition_rank_bounds(S, L)
    print(name, "lower", b.lower, "upper", b.upper, "per layer", b.per_layer)

# %%
# The upper spans come straight from the generators.
for pos, span in entry_span_upper(heis).items():
    print(pos, span.rank)

# %%
# Q-linear independence of polynomials shows up as a nonzero determinant.
print(independence_determinant([UniPoly([1]), UniPoly([0, 1]), UniPoly([0, 0, 1])], 1))

# %%
# The modified length damps entries far from the diagonal.
g = Mat.from_literals(
    [["1", "1/2", "1/4"], ["0", "1", "1/2"], ["0", "0", "1"]])
v = PAdic(2)
print("l =", length(v, g), " modified l =", tilde_length(v, g))
