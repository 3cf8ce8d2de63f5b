"""Valuations attached to finitely generated coefficient rings, and isotropy certificates.

Two ring families are supported: Z[1/s] (one p-adic valuation per prime
divisor of s) and the Laurent ring Z[t, 1/t] (order at zero and order at
infinity).  An element of the ring that is integral for all of them is a
rational integer.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from .exactmat import Mat, char_poly, is_special_linear
from .errors import NotSpecialLinear
from .valfield import OrderAtInfinity, OrderAtZero, PAdic, RatFunc, is_integral


@dataclass(frozen=True)
class ZInvS:
    """The ring Z[1/s]; ``s`` is replaced by its squarefree radical."""

    s: int
    primes: tuple = field(init=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be a positive integer")
        primes = tuple(sorted(factorint(self.s)))
        rad = 1
        for p in primes:
            rad *= p
        object.__setattr__(self, "s", rad)
        object.__setattr__(self, "primes", primes)

    def contains(self, x) -> bool:
        if not isinstance(x, (int, Fraction)):
            return False
        d = Fraction(x).denominator
        for p in self.primes:
            while d % p == 0:
                d //= p
        return d == 1

    def field(self):
        return "Q"

    def describe(self):
        return {"family": "ZInvS", "s": self.s}


@dataclass(frozen=True)
class LaurentZ:
    """The ring Z[t, 1/t]."""

    def contains(self, x) -> bool:
        if isinstance(x, (int, Fraction)):
            return Fraction(x).denominator == 1
        return (
            isinstance(x, RatFunc)
            and x.den.is_monomial()
            and all(c.denominator == 1 for c in x.num.coeffs)
        )

    def field(self):
        return "Q(t)"

    def describe(self):
        return {"family": "LaurentZ"}


def ring_from_dict(d) -> ZInvS | LaurentZ:
    fam = d.get("family") if isinstance(d, dict) else d
    if fam == "ZInvS":
        return ZInvS(int(d["s"]))
    if fam == "LaurentZ":
        return LaurentZ()
    raise ValueError(f"unknown ring family {d!r}")


def synthesize_valuations(ring) -> list:
    if isinstance(ring, ZInvS):
        return [PAdic(p) for p in ring.primes]
    if isinstance(ring, LaurentZ):
        return [OrderAtZero(), OrderAtInfinity()]
    raise TypeError(f"unsupported ring family {ring!r}")


def integrality_filter(x, vs) -> bool:
    """True iff ``x`` is integral for every valuation in ``vs``."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction) and any(not isinstance(v, PAdic) for v in vs):
        x = RatFunc(x)
    return all(is_integral(v, x) for v in vs)


def isotropy_certificate(g: Mat, vs) -> bool:
    """Every characteristic-polynomial coefficient of g passes :func:`integrality_filter`.

    Necessary (not sufficient) for g to fix a vertex in each of the buildings.
    """
    if not is_special_linear(g):
        raise NotSpecialLinear("isotropy certificates are for SL(n) elements")
    return all(integrality_filter(c, vs) for c in char_poly(g).coeffs)


@dataclass(frozen=True)
class SweepResult:
    checked: int
    accepted: int
    counterexamples: tuple

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _sweep_block(block):
    vs = synthesize_valuations(LaurentZ())
    accepted, bad = 0, []
    for lo, coeffs in block:
        x = RatFunc.from_laurent({lo + k: c for k, c in enumerate(coeffs) if c})
        verdict = integrality_filter(x, vs)
        constant = all(c == 0 for k, c in enumerate(coeffs) if lo + k != 0)
        accepted += verdict
        if verdict != constant:
            bad.append((lo, tuple(coeffs)))
    return accepted, bad


def laurent_sweep(exponents=(-3, 3), coefficients=(-5, 5), samples=None, seed=0, workers=1, block=5000):
    """Compare the Laurent filter with "is a constant integer" over a box of Laurent polynomials.

    With ``samples=None`` every coefficient vector in the box is visited; otherwise
    ``samples`` vectors are drawn with ``random.Random(seed)``.  Blocks may be spread
    over worker processes; the aggregate does not depend on ``workers``.
    """
    lo, hi = exponents
    c_lo, c_hi = coefficients
    width = hi - lo + 1
    if samples is None:
        vectors = itertools.product(range(c_lo, c_hi + 1), repeat=width)
    else:
        rng = random.Random(seed)
        vectors = ([rng.randint(c_lo, c_hi) for _ in range(width)] for _ in range(samples))
    blocks = []
    chunk = []
    for vec in vectors:
        chunk.append((lo, vec))
        if len(chunk) == block:
            blocks.append(chunk)
            chunk = []
    if chunk:
        blocks.append(chunk)
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_block, blocks))
    else:
        parts = [_sweep_block(b) for b in blocks]
    checked = sum(len(b) for b in blocks)
    accepted = sum(a for a, _ in parts)
    bad = tuple(x for _, b in parts for x in b)
    return SweepResult(checked, accepted, bad)
