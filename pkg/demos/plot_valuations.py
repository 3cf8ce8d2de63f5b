"""
Valuations on Q and Q(t)
========================

Exact elements and the discrete valuations the rest of the library is built on.
"""

from fractions import Fraction

from valtree.valfield import OrderAtInfinity, OrderAtZero, PAdic, RatFunc, parse_element, valuate

# %%
# A p-adic valuation counts factors of p in numerator minus denominator.
x = Fraction(45, 8)
for p in (2, 3, 5, 7):
    print(f"nu_{p}({x}) = {valuate(PAdic(p), x)}")

# %%
# Over Q(t) the two valuations we care about are the order at zero and the
# order at infinity.  Literals use the same grammar as scenario files.
f = parse_element("(t^2 + 1)/(t^3)", "Q(t)")
print(f, valuate(OrderAtZero(), f), valuate(OrderAtInfinity(), f))

# %%
# Zero has valuation +inf, and the ultrametric inequality is exact.
t = RatFunc.t()
a, b = t + 1 / t, -t
print(valuate(OrderAtInfinity(), a + b), ">=", min(valuate(OrderAtInfinity(), a), valuate(OrderAtInfinity(), b)))
print(valuate(PAdic(3), Fraction(0)))
