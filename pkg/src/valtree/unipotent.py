"""Composition-rank analysis of uni-upper-triangular groups.

Positions are 1-based ``(i, j)`` pairs, as in matrix notation.  Layer ``k``
consists of the k-th superdiagonal; the last layer ``k = n - 1`` is the single
corner position ``(1, n)`` and plays the role of the residual subgroup.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import DegenerateSpan, MixedFamilies, NotUnipotentForm
from .exactmat import GeneratorSet, Mat, det, inverse, word_ball
from .valfield import AlgElem, MultiPoly, RatFunc, UniPoly, is_zero, poly_gcd


# -- rank over Q ----------------------------------------------------------------

def _poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b) // poly_gcd(a, b)


def q_coordinates(elems) -> list:
    """Sparse rational coordinate vectors (dicts) of the elements, compatible across the list.

    Rational functions are put over a common denominator first, so the
    coordinates are numerator coefficients; number-field elements use their
    power-basis coordinates; multivariate polynomials their monomial coefficients.
    """
    kinds = {type(x) for x in elems if not isinstance(x, (int, Fraction))}
    if len(kinds) > 1:
        raise MixedFamilies(f"q_rank over mixed families: {sorted(k.__name__ for k in kinds)}")
    kind = kinds.pop() if kinds else Fraction
    if kind is Fraction:
        return [{0: Fraction(x)} if x != 0 else {} for x in elems]
    if kind is RatFunc:
        common = UniPoly([1])
        for x in elems:
            if isinstance(x, RatFunc) and not x.den.is_constant():
                common = _poly_lcm(common, x.den)
        out = []
        for x in elems:
            if not isinstance(x, RatFunc):
                x = RatFunc(x)
            p = x.num * (common // x.den)
            out.append({k: c for k, c in enumerate(p.coeffs) if c != 0})
        return out
    if kind is AlgElem:
        out = []
        for x in elems:
            cs = x.coords if isinstance(x, AlgElem) else (Fraction(x),)
            out.append({k: c for k, c in enumerate(cs) if c != 0})
        return out
    if kind is MultiPoly:
        out = []
        for x in elems:
            if isinstance(x, MultiPoly):
                out.append(dict(x.terms))
            else:
                out.append({"const": Fraction(x)} if x != 0 else {})
        return out
    raise MixedFamilies(f"q_rank does not support {kind.__name__}")


def vector_rank(vectors) -> int:
    """Rank of sparse rational vectors (dicts key -> Fraction) by exact elimination."""
    pivots = {}  # pivot key -> reduced row
    rank = 0
    for vec in vectors:
        row = dict(vec)
        for key, prow in pivots.items():
            c = row.get(key)
            if c:
                for k2, v2 in prow.items():
                    s = row.get(k2, 0) - c * v2
                    if s:
                        row[k2] = s
                    else:
                        row.pop(k2, None)
        if not row:
            continue
        key = min(row, key=repr)
        inv = 1 / row[key]
        row = {k: v * inv for k, v in row.items()}
        # keep earlier pivots reduced against the new one
        for pk, prow in pivots.items():
            c = prow.get(key)
            if c:
                for k2, v2 in row.items():
                    s = prow.get(k2, 0) - c * v2
                    if s:
                        prow[k2] = s
                    else:
                        prow.pop(k2, None)
        pivots[key] = row
        rank += 1
    return rank


def q_rank(elems) -> int:
    """Dimension over Q of the span of the given field elements."""
    elems = list(elems)
    if not elems:
        return 0
    return vector_rank(q_coordinates(elems))


def q_basis(elems) -> list:
    """Greedy Q-basis extracted from ``elems`` in order."""
    elems = list(elems)
    if not elems:
        return []
    coords = q_coordinates(elems)
    basis, chosen = [], []
    for x, c in zip(elems, coords):
        if vector_rank(chosen + [c]) > len(chosen):
            chosen.append(c)
            basis.append(x)
    return basis


def _tuple_coordinates(tuples) -> list:
    """Coordinates of tuples in K^m: each slot is coordinatized separately, then concatenated."""
    if not tuples:
        return []
    m = len(tuples[0])
    per_slot = [q_coordinates([t[s] for t in tuples]) for s in range(m)]
    return [{(s, k): v for s in range(m) for k, v in per_slot[s][row].items()} for row in range(len(tuples))]


def tuple_rank(tuples) -> int:
    return vector_rank(_tuple_coordinates(list(tuples)))


# -- layers ---------------------------------------------------------------------

@dataclass(frozen=True)
class LayerMap:
    k: int
    positions: tuple
    residual: bool = False


def layer_decompose(n: int) -> list:
    if n < 2:
        raise ValueError("layers need n >= 2")
    layers = [LayerMap(k, tuple((i, i + k) for i in range(1, n - k + 1))) for k in range(1, n - 1)]
    layers.append(LayerMap(n - 1, ((1, n),), residual=True))
    return layers


@dataclass
class EntrySpan:
    position: tuple
    basis: list

    @property
    def rank(self):
        return len(self.basis)


@dataclass
class LowerSpan:
    """Q-span of the layer-k tuples of sampled group elements lying in G_{k-1}."""

    layer: LayerMap
    rank: int
    tuples: list
    per_position: dict


@dataclass
class RankBounds:
    lower: int
    upper: int
    per_layer: dict
    saturation_length: int
    word_length: int

    @property
    def gap(self):
        return self.upper - self.lower

    @property
    def certified(self):
        return self.lower == self.upper


def _check_unipotent(S: GeneratorSet):
    for g in S.gens:
        if not g.is_uni_upper_triangular():
            raise NotUnipotentForm("generators must be uni-upper-triangular (conjugate them first)")


def _in_layer_group(g: Mat, k: int) -> bool:
    # member of G_{k-1}: zero on every superdiagonal below k
    n = g.n
    return all(is_zero(g.rows[i][i + d]) for d in range(1, k) for i in range(n - d))


def _layer_tuple(g: Mat, layer: LayerMap):
    return tuple(g.rows[i - 1][j - 1] for i, j in layer.positions)


def entry_span_lower(S: GeneratorSet, k: int, L: int, ball=None, n=None) -> LowerSpan:
    """Rank of the layer-k image spanned by word-ball elements that lie in G_{k-1}.

    A lower bound for the asymptotic dimension of phi_k(G_{k-1}) (a torsion-free
    abelian group, whose asdim is its rank); nondecreasing in ``L``.
    """
    _check_unipotent(S)
    n = n or S.n
    layer = next(lay for lay in layer_decompose(n) if lay.k == k)
    if ball is None:
        ball = word_ball(S, L, identity=Mat.identity(n)) if not S.gens else word_ball(S, L)
    tuples = []
    for g in ball.elements(L):
        if _in_layer_group(g, k):
            tup = _layer_tuple(g, layer)
            if any(not is_zero(x) for x in tup):
                tuples.append(tup)
    coords = _tuple_coordinates(tuples)
    chosen, basis = [], []
    for tup, c in zip(tuples, coords):
        if vector_rank(chosen + [c]) > len(chosen):
            chosen.append(c)
            basis.append(tup)
    per_position = {
        pos: EntrySpan(pos, q_basis([t[s] for t in tuples])) for s, pos in enumerate(layer.positions)
    }
    return LowerSpan(layer, len(basis), basis, per_position)


def entry_span_upper(S: GeneratorSet, n=None) -> dict:
    """Per-position Q-spans that contain every entry of every group element.

    Superdiagonal d gets the generator entries plus all products of the spans at
    (i, l) and (l, j), i < l < j; the closure is an induction on word length.
    """
    _check_unipotent(S)
    n = n or S.n
    spans = {}
    for d in range(1, n):
        for i in range(1, n - d + 1):
            j = i + d
            gens = [g.rows[i - 1][j - 1] for g in S.gens if not is_zero(g.rows[i - 1][j - 1])]
            prods = [a * b for l in range(i + 1, j) for a in spans[(i, l)].basis for b in spans[(l, j)].basis]
            spans[(i, j)] = EntrySpan((i, j), q_basis(gens + prods))
    return spans


def _upper_layer_rank(spans, layer):
    # the layer image sits inside the direct sum of the per-position spans
    return sum(spans[pos].rank for pos in layer.positions)


def composition_rank_bounds(S: GeneratorSet, L: int, n=None) -> RankBounds:
    _check_unipotent(S)
    n = n or S.n
    if n is None:
        return RankBounds(0, 0, {}, 0, L)
    ident = Mat.identity(n, S.gens[0].like()) if S.gens else Mat.identity(n)
    ball = word_ball(S, L, identity=ident)
    spans = entry_span_upper(S, n)
    per_layer = {}
    lower_by_len = [0] * (L + 1)
    for layer in layer_decompose(n):
        up = _upper_layer_rank(spans, layer)
        lo = 0
        for ell in range(L + 1):
            lo = entry_span_lower(S, layer.k, ell, ball=ball, n=n).rank
            lower_by_len[ell] = max(lower_by_len[ell], lo)
        per_layer[layer.k] = (lo, up)
    lower = max((lo for lo, _ in per_layer.values()), default=0)
    upper = max((up for _, up in per_layer.values()), default=0)
    saturation = next(ell for ell in range(L + 1) if lower_by_len[ell] == lower)
    return RankBounds(lower, upper, per_layer, saturation, L)


def structure_check(g: Mat, spans: dict) -> bool:
    """Whether every entry above the diagonal lies in the Q-span recorded for its position."""
    if not g.is_uni_upper_triangular():
        return False
    n = g.n
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            x = g.rows[i - 1][j - 1]
            if is_zero(x):
                continue
            basis = spans[(i, j)].basis
            if q_rank(basis + [x]) != len(basis):
                return False
    return True


# -- independence determinant ---------------------------------------------------

def _as_multipoly(p, arity):
    if isinstance(p, MultiPoly):
        return p
    if isinstance(p, UniPoly):
        return MultiPoly.from_unipoly(p, max(arity, 1))
    if isinstance(p, RatFunc):
        if not p.den.is_constant():
            raise ValueError("independence_determinant takes polynomials; clear denominators first")
        return MultiPoly.from_unipoly(p.num * (1 / p.den.coeffs[0]), max(arity, 1))
    return MultiPoly.constant(max(arity, 1), p)


def independence_determinant(polys, arity: int) -> MultiPoly:
    """det [p_j(t_i)] where row i uses its own block of ``arity`` fresh variables.

    Block i occupies variables ``i*arity .. i*arity + arity - 1``.  The result is
    the zero polynomial exactly when the p_j are linearly dependent over Q.
    """
    polys = [_as_multipoly(p, arity) for p in polys]
    n = len(polys)
    if n == 0:
        return MultiPoly(0, {(): 1})
    total = n * arity
    for p in polys:
        if any(any(e[arity:]) for e in p.terms):
            raise ValueError(f"polynomial uses variables beyond the first {arity}")
    rows = []
    for i in range(n):
        row = []
        for p in polys:
            if arity == 0:
                const = p.terms.get((0,) * p.nvars, Fraction(0))
                row.append(MultiPoly(0, {(): const}))
            else:
                trimmed = MultiPoly(arity, {e[:arity]: c for e, c in p.terms.items()})
                row.append(trimmed.substitute_block(i * arity, total))
        rows.append(tuple(row))
    return det(Mat._make(tuple(rows)))


@dataclass
class BoundednessWitness:
    """Finite box containing every integer coefficient tuple with bounded images.

    ``matrix[i][j]`` is the j-th span element evaluated at ``points[i]``; if
    ``|sum_j z_j matrix[i][j]| <= B`` for every i, then ``|z_j| <= box_bound``.
    """

    points: list
    matrix: list
    inverse: list
    bound: Fraction
    box_bound: Fraction


def _evaluate(x, point):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, RatFunc):
        return x(point[0])
    if isinstance(x, MultiPoly):
        return x(tuple(point))
    if isinstance(x, UniPoly):
        return x(point[0])
    raise TypeError(f"cannot evaluate {type(x).__name__}")


def _has_pole(x, point):
    return isinstance(x, RatFunc) and x.den(point[0]) == 0


def boundedness_witness(span, bound_B, max_radius: int = 6) -> BoundednessWitness:
    basis = list(span.basis if isinstance(span, EntrySpan) else span)
    B = Fraction(bound_B)
    if B <= 0:
        raise ValueError("bound must be positive")
    m = len(basis)
    if m == 0 or q_rank(basis) < m:
        raise DegenerateSpan("span elements are linearly dependent over Q")
    if any(isinstance(x, MultiPoly) for x in basis):
        arity = max(x.nvars for x in basis if isinstance(x, MultiPoly))
    elif any(isinstance(x, (RatFunc, UniPoly)) for x in basis):
        arity = 1
    else:
        arity = 0
    polys = _clear_denominators(basis, arity)
    D = independence_determinant(polys, arity)
    if D.is_zero():
        raise DegenerateSpan("independence determinant vanishes identically")
    dim = m * arity
    for radius in range(0, max_radius + 1):
        for flat in product(range(-radius, radius + 1), repeat=dim):
            if radius and max(map(abs, flat), default=0) < radius:
                continue  # already tried at a smaller radius
            point = tuple(Fraction(c) for c in flat)
            if D.nvars and D(point) == 0:
                continue
            pts = [point[i * arity:(i + 1) * arity] for i in range(m)]
            if any(_has_pole(x, p) for x in basis for p in pts):
                continue
            M = Mat([[_evaluate(x, p) for x in basis] for p in pts])
            Minv = inverse(M)
            norm = max(sum(abs(e) for e in row) for row in Minv.rows)
            return BoundednessWitness(
                pts, [list(r) for r in M.rows], [list(r) for r in Minv.rows], B, B * norm
            )
    raise DegenerateSpan(f"no evaluation point with nonzero determinant within radius {max_radius}")


def _clear_denominators(basis, arity):
    if any(isinstance(x, RatFunc) for x in basis):
        common = UniPoly([1])
        for x in basis:
            if isinstance(x, RatFunc):
                common = _poly_lcm(common, x.den)
        out = []
        for x in basis:
            x = x if isinstance(x, RatFunc) else RatFunc(x)
            out.append(MultiPoly.from_unipoly(x.num * (common // x.den), 1))
        return out
    return [_as_multipoly(x, arity) if arity else x for x in basis]
