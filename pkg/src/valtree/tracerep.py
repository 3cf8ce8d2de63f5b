"""Burnside bases and the trace representation of a matrix group.

Given group elements g_1..g_N (N = n^2) spanning M_n(K), an element gamma acts
on the functionals f_h = tr(h .) by gamma.f_h = f_{gamma h}.  Writing
gamma g_i = sum_j a_ij g_j, the coefficients solve

    tr(gamma g_i g_k) = sum_j a_ij tr(g_j g_k),   k = 1..N,

a linear system with the Gram matrix of the trace form.  :func:`alpha` returns
the matrix of this action with the solutions as *columns*, so that
alpha(g h) = alpha(g) alpha(h).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotIrreducible, SingularMatrix
from .exactmat import GeneratorSet, Mat, char_poly, det, inverse, word_ball
from .valfield import AlgElem, MultiPoly, RatFunc, is_zero


def _flat(g: Mat):
    return [x for r in g.rows for x in r]


def _field_rank(mats) -> int:
    """Rank over the entries' own field (not over Q) of flattened matrices."""
    rows = [list(_flat(g)) for g in mats]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not is_zero(rows[r][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        for r in range(len(rows)):
            if r != rank and not is_zero(rows[r][col]):
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass
class TraceBasis:
    basis: list
    words: list
    gram: Mat

    @property
    def N(self):
        return len(self.basis)

    def gram_det(self):
        return det(self.gram)


def gram_matrix(basis) -> Mat:
    return Mat([[(a * b).trace() for b in basis] for a in basis])


def burnside_basis(S: GeneratorSet, max_word_len: int, n=None) -> TraceBasis:
    """Greedy basis of M_n(K) made of group elements, scanning words by length.

    Raises :class:`NotIrreducible` once two consecutive word lengths add no rank
    while the span is still short of n^2, or if the cap is reached first.
    """
    n = n or S.n or 1
    target = n * n
    if S.gens:
        ball = word_ball(S, max_word_len)
    else:
        ball = word_ball(S, 0, identity=Mat.identity(n))
    chosen, words = [], []
    stale = 0
    for r in range(0, max_word_len + 1):
        gained = False
        for g in ball.sphere(r):
            if _field_rank(chosen + [g]) > len(chosen):
                chosen.append(g)
                words.append(ball.words[g])
                gained = True
                if len(chosen) == target:
                    return TraceBasis(chosen, words, gram_matrix(chosen))
        stale = 0 if gained else stale + 1
        if r > 0 and stale >= 2:
            raise NotIrreducible(
                f"span of group elements stuck at dimension {len(chosen)} < {target}: action is reducible"
            )
        if r >= ball.radius or (r > 0 and not ball.sphere(r)):
            break
    raise NotIrreducible(f"reached word length {max_word_len} with span dimension {len(chosen)} < {target}")


def alpha_coefficients(gamma: Mat, tb: TraceBasis) -> Mat:
    """Row i holds the coefficients a_ij with gamma g_i = sum_j a_ij g_j."""
    try:
        ginv = inverse(tb.gram)
    except SingularMatrix as exc:  # a TraceBasis always has a nondegenerate Gram matrix
        raise AssertionError("trace form degenerate on a claimed basis") from exc
    T = Mat([[(gamma * gi * gk).trace() for gk in tb.basis] for gi in tb.basis])
    return T * ginv


def alpha(gamma: Mat, tb: TraceBasis) -> Mat:
    """Matrix of gamma acting on span{f_g}; multiplicative in gamma."""
    return alpha_coefficients(gamma, tb).transpose()


def change_of_basis(tb_from: TraceBasis, tb_to: TraceBasis) -> Mat:
    """P with column i = coordinates of tb_to.basis[i] in tb_from.basis, so that
    alpha_to(g) = P^-1 alpha_from(g) P."""
    ginv = inverse(tb_from.gram)
    T = Mat([[(h * gk).trace() for gk in tb_from.basis] for h in tb_to.basis])
    return (T * ginv).transpose()


def integral_characteristic(g: Mat) -> bool:
    """Whether every coefficient of the characteristic polynomial is an algebraic integer."""
    coeffs = char_poly(g).coeffs
    return all(is_algebraic_integer(c) for c in coeffs)


def is_algebraic_integer(c) -> bool:
    if isinstance(c, int):
        return True
    if isinstance(c, Fraction):
        return c.denominator == 1
    if isinstance(c, RatFunc):
        # t is transcendental, so only constants are algebraic
        return c.is_constant() and c.constant_value().denominator == 1
    if isinstance(c, AlgElem):
        mult = Mat(c.multiplication_matrix())
        return all(x.denominator == 1 for x in char_poly(mult).coeffs)
    if isinstance(c, MultiPoly):
        raise TypeError("integral characteristic is not defined for polynomial-ring entries")
    raise TypeError(f"unsupported entry type {type(c).__name__}")


__all__ = [
    "TraceBasis", "burnside_basis", "alpha", "alpha_coefficients", "change_of_basis",
    "gram_matrix", "integral_characteristic", "is_algebraic_integer",
]
