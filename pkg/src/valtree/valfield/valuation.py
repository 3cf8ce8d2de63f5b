"""Discrete valuations on Q and Q(t).

A valuation sends a field element to an integer, or to ``INF`` for zero.
``INF`` is ``math.inf``: it compares above every integer, absorbs addition and
is neutral for ``min``, which is all the extended-integer arithmetic needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from ..errors import DivisionByZero, IncompatibleValuation
from .elements import AlgElem, RatFunc, _canonical
from .poly import MultiPoly, UniPoly

INF = math.inf


def int_valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PAdic:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ValueError(f"p-adic valuation needs a prime, got {self.p!r}")

    def __call__(self, x):
        if not isinstance(x, (int, Fraction)):
            raise IncompatibleValuation(f"p-adic valuation applies to rationals, not {type(x).__name__}")
        if x == 0:
            return INF
        x = Fraction(x)
        return int_valuation(x.numerator, self.p) - int_valuation(x.denominator, self.p)

    def uniformizer(self):
        return Fraction(self.p)

    def describe(self):
        return {"type": "padic", "p": self.p}

    def __str__(self):
        return f"nu_{self.p}"


def _require_ratfunc(v, x):
    if not isinstance(x, RatFunc):
        raise IncompatibleValuation(f"{type(v).__name__} applies to rational functions, not {type(x).__name__}")


@dataclass(frozen=True)
class OrderAtZero:
    """Order of vanishing at t = 0."""

    def __call__(self, x):
        _require_ratfunc(self, x)
        if x.is_zero():
            return INF
        return x.num.low() - x.den.low()

    def uniformizer(self):
        return RatFunc.t()

    def describe(self):
        return {"type": "order_at_zero"}

    def __str__(self):
        return "ord_0"


@dataclass(frozen=True)
class OrderAtInfinity:
    """deg(denominator) - deg(numerator)."""

    def __call__(self, x):
        _require_ratfunc(self, x)
        if x.is_zero():
            return INF
        return x.den.degree - x.num.degree

    def uniformizer(self):
        return RatFunc(1, UniPoly([0, 1]))

    def describe(self):
        return {"type": "order_at_infinity"}

    def __str__(self):
        return "ord_inf"


@dataclass(frozen=True)
class OrderAtIrreducible:
    """Multiplicity of a monic irreducible polynomial ``q``."""

    q: UniPoly

    def __post_init__(self):
        from .elements import is_irreducible

        q = self.q
        if q.is_zero() or q.lc != 1:
            raise ValueError("OrderAtIrreducible needs a monic polynomial")
        scale = math.lcm(*(c.denominator for c in q.coeffs))
        if not is_irreducible(q * scale if scale != 1 else q):
            raise ValueError(f"{q.format()} is not irreducible over Q")

    def _mult(self, p: UniPoly):
        k = 0
        while True:
            quo, rem = p.divmod(self.q)
            if not rem.is_zero():
                return k
            p = quo
            k += 1

    def __call__(self, x):
        _require_ratfunc(self, x)
        if x.is_zero():
            return INF
        return self._mult(x.num) - self._mult(x.den)

    def uniformizer(self):
        return RatFunc(self.q)

    def describe(self):
        return {"type": "order_at_irreducible", "q": [str(c) for c in self.q.coeffs]}

    def __str__(self):
        return f"ord_({self.q.format()})"


Valuation = PAdic | OrderAtZero | OrderAtInfinity | OrderAtIrreducible


def valuate(v, x):
    """Value of the valuation ``v`` at ``x``; ``INF`` exactly when ``x == 0``."""
    if isinstance(x, (AlgElem, MultiPoly)):
        raise IncompatibleValuation(f"no valuation is defined on {type(x).__name__}")
    return v(x)


def uniformizer(v):
    return v.uniformizer()


def is_integral(v, x) -> bool:
    return valuate(v, x) >= 0


def normalize(x):
    """Canonical form of a field element; idempotent."""
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(c, int) for c in x):
        if x[1] == 0:
            raise DivisionByZero("rational with zero denominator")
        return Fraction(*x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, RatFunc):
        num, den = _canonical(x.num, x.den)
        return RatFunc._make(num, den)
    if isinstance(x, AlgElem):
        return AlgElem(x.field, x.coords)
    if isinstance(x, MultiPoly):
        return MultiPoly(x.nvars, x.terms)
    raise TypeError(f"not a field element: {x!r}")


def valuation_from_dict(d: dict):
    kind = d.get("type")
    if kind == "padic":
        return PAdic(int(d["p"]))
    if kind == "order_at_zero":
        return OrderAtZero()
    if kind == "order_at_infinity":
        return OrderAtInfinity()
    if kind == "order_at_irreducible":
        return OrderAtIrreducible(UniPoly([Fraction(c) for c in d["q"]]))
    raise ValueError(f"unknown valuation descriptor {d!r}")
