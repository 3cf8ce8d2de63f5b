"""Independent reference computations and random generators shared by the tests.

Nothing here calls into the code under test for the quantity being checked:
valuations are recomputed by repeated division, matrix invariants via sympy,
word balls by multiplying out every word, tree distances through the BFS tree.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import sympy
from sympy.matrices.normalforms import smith_normal_form

from valtree.exactmat import Mat
from valtree.valfield import RatFunc, UniPoly


# -- valuations -------------------------------------------------------------------

def padic_oracle(x: Fraction, p: int):
    if x == 0:
        return float("inf")
    k = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def _sym(f: RatFunc):
    t = sympy.Symbol("t")
    num = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(f.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(f.den.coeffs))
    return num, den, t


def order_at_zero_oracle(f: RatFunc):
    num, den, t = _sym(f)
    if num == 0:
        return float("inf")
    return int(sympy.Poly(num, t).monoms()[-1][0]) - int(sympy.Poly(den, t).monoms()[-1][0])


def order_at_infinity_oracle(f: RatFunc):
    num, den, t = _sym(f)
    if num == 0:
        return float("inf")
    return int(sympy.degree(den, t)) - int(sympy.degree(num, t))


# -- random elements --------------------------------------------------------------

def rand_fraction(rng: random.Random, height: int = 60, zero_rate: float = 0.05) -> Fraction:
    if rng.random() < zero_rate:
        return Fraction(0)
    num = rng.randint(-height, height) or 1
    den = rng.randint(1, height)
    # bias towards small primes so valuations are interesting
    num *= rng.choice([1, 2, 3, 4, 5, 8, 9, 25])
    den *= rng.choice([1, 2, 3, 4, 5, 8, 27])
    return Fraction(num, den)


def rand_unipoly(rng: random.Random, deg: int = 3, height: int = 5) -> UniPoly:
    return UniPoly([Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(rng.randint(0, deg) + 1)])


def rand_ratfunc(rng: random.Random, zero_rate: float = 0.05) -> RatFunc:
    if rng.random() < zero_rate:
        return RatFunc(0)
    num = rand_unipoly(rng)
    if num.is_zero():
        num = UniPoly([Fraction(1)])
    den = rand_unipoly(rng, deg=2)
    if den.is_zero():
        den = UniPoly([Fraction(1)])
    shift = rng.randint(-3, 3)
    f = RatFunc(num, den)
    t = RatFunc.t()
    return f * t**shift if shift >= 0 else f / t ** (-shift)


def rand_sl(rng: random.Random, n: int, scalar, steps: int = 4) -> Mat:
    """Random product of elementary and diagonal SL(n) matrices with entries from ``scalar(rng)``."""
    like = scalar(rng)
    one = like * 0 + 1
    g = Mat.identity(n, one)
    for _ in range(steps):
        if rng.random() < 0.3:
            d = scalar(rng)
            if d == 0:
                continue
            i, j = rng.sample(range(n), 2)
            entries = [one] * n
            entries[i], entries[j] = d, 1 / d
            g = g * Mat.diag(*entries)
        else:
            i, j = rng.sample(range(n), 2)
            g = g * Mat.elementary(n, i + 1, j + 1, scalar(rng), one)
    return g


def rand_unitriangular(rng: random.Random, n: int, scalar) -> Mat:
    one = scalar(rng) * 0 + 1
    zero = one * 0
    rows = [[one if i == j else (scalar(rng) if j > i else zero) for j in range(n)] for i in range(n)]
    return Mat(rows)


# -- matrices ---------------------------------------------------------------------

def sympy_matrix(g: Mat):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in g.rows])


def smith_oracle(g: Mat, p: int):
    """p-adic valuations of the invariant factors of a rational matrix, via sympy's Smith form."""
    n = g.n
    scale = 1
    for x in g.entries():
        scale = sympy.ilcm(scale, x.denominator)
    M = sympy.Matrix([[int(x * scale) for x in row] for row in g.rows])
    S = smith_normal_form(M, domain=sympy.ZZ)
    shift = padic_oracle(Fraction(int(scale)), p)
    vals = sorted(padic_oracle(Fraction(int(S[i, i])), p) - shift for i in range(n))
    return vals


def brute_ball(gens, R: int, identity: Mat):
    """Every product of at most R generators, deduplicated by printed form."""
    seen = {identity.format(): 0}
    for length in range(1, R + 1):
        for word in itertools.product(gens, repeat=length):
            g = identity
            for s in word:
                g = g * s
            seen.setdefault(g.format(), length)
    return seen


# -- tree distances through the BFS tree ------------------------------------------

def ancestor_table(parent, depth) -> np.ndarray:
    """anc[k, i] = ancestor of vertex i at depth k, or -1 when depth(i) < k."""
    parent = np.asarray(parent)
    depth = np.asarray(depth)
    n = len(parent)
    anc = np.full((int(depth.max()) + 1, n), -1, dtype=np.int32)
    cur = np.arange(n)
    alive = np.ones(n, dtype=bool)
    while alive.any():
        idx = np.flatnonzero(alive)
        anc[depth[cur[idx]], idx] = cur[idx]
        nxt = parent[cur[idx]]
        alive[idx] = nxt >= 0
        cur[idx] = np.maximum(nxt, 0)
    return anc


def lca_distances(anc: np.ndarray, depth, rows: slice, cols: slice) -> np.ndarray:
    """Graph distances between the vertex ranges ``rows`` x ``cols`` of a BFS tree."""
    depth = np.asarray(depth)
    a = anc[:, rows]
    # missing ancestors are -1 on the row side and -2 on the column side so they never match
    b = np.where(anc[:, cols] < 0, -2, anc[:, cols])
    common = np.zeros((a.shape[1], b.shape[1]), dtype=np.int8)
    for k in range(anc.shape[0]):
        common += a[k][:, None] == b[k][None, :]
    # common counts shared ancestors including the root, so LCA depth is common - 1
    return depth[rows][:, None] + depth[cols][None, :] - 2 * (common.astype(np.int32) - 1)
