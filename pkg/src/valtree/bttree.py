"""Homothety classes of lattices and the action of SL(n) on them.

A vertex is stored as a basis matrix whose columns span a lattice over the
valuation ring.  Representatives are not unique; equality of points is decided
by :func:`same_vertex`.  For n = 2 the vertices form a tree and :func:`distance`
is its graph metric; for larger n :func:`displacement` is the invariant-factor
spread, which vanishes exactly on vertex stabilizers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    DimensionMismatch,
    InfiniteResidueField,
    NeedsEvaluationPoint,
    NotSpecialLinear,
    SingularMatrix,
    UnsupportedDimension,
)
from .exactmat import Mat, det, inverse, is_special_linear
from .valfield import INF, PAdic, RatFunc, int_valuation, is_zero, valuate

DEFAULT_T0 = Fraction(3, 2)


@dataclass(frozen=True)
class Vertex:
    basis: Mat
    valuation: object

    def __post_init__(self):
        if is_zero(det(self.basis)):
            raise SingularMatrix("vertex basis must be invertible")

    @property
    def n(self):
        return self.basis.n

    def to_json(self):
        return {"basis": self.basis.to_literals(), "valuation": self.valuation.describe()}


def base_vertex(n: int, v, like=Fraction(1)) -> Vertex:
    return Vertex(Mat.identity(n, like), v)


def act(g: Mat, x: Vertex) -> Vertex:
    if g.n != x.n:
        raise DimensionMismatch(f"{g.n}x{g.n} matrix acting on rank-{x.n} lattices")
    if not is_special_linear(g):
        raise NotSpecialLinear("only SL(n) acts on the building here")
    return Vertex(g * x.basis, x.valuation)


def smith_valuations(C: Mat, v) -> list:
    """Valuations of the elementary divisors of ``C``, ascending.

    The k-th partial sum is the least valuation of a k x k minor.
    """
    n = C.n
    if n == 2:
        (a, b), (c, d) = C.rows
        m1 = min(valuate(v, a), valuate(v, b), valuate(v, c), valuate(v, d))
        m2 = valuate(v, a * d - b * c)
        if m2 == INF:
            raise SingularMatrix("smith_valuations needs an invertible matrix")
        return [m1, m2 - m1]
    partial = [0]
    idx = range(n)
    for k in range(1, n + 1):
        best = INF
        for rows in combinations(idx, k):
            for cols in combinations(idx, k):
                sub = Mat._make(tuple(tuple(C.rows[i][j] for j in cols) for i in rows))
                val = valuate(v, det(sub))
                if val < best:
                    best = val
        if best == INF:
            raise SingularMatrix("smith_valuations needs an invertible matrix")
        partial.append(best)
    return [partial[k] - partial[k - 1] for k in range(1, n + 1)]


def _check_pair(x: Vertex, y: Vertex):
    if x.n != y.n:
        raise DimensionMismatch("vertices of buildings of different rank")
    if x.valuation != y.valuation:
        raise DimensionMismatch("vertices of buildings for different valuations")


def same_vertex(x: Vertex, y: Vertex) -> bool:
    _check_pair(x, y)
    s = smith_valuations(inverse(x.basis) * y.basis, x.valuation)
    return all(k == s[0] for k in s)


def distance(x: Vertex, y: Vertex) -> int:
    """Tree distance between two vertices of the n = 2 building."""
    _check_pair(x, y)
    if x.n != 2:
        raise UnsupportedDimension("the closed tree metric is only defined for n = 2")
    s1, s2 = smith_valuations(inverse(x.basis) * y.basis, x.valuation)
    return s2 - s1


def displacement(g: Mat, x: Vertex) -> int:
    """Invariant-factor spread of g at x; for n = 2 the distance moved."""
    if g.n != x.n:
        raise DimensionMismatch(f"{g.n}x{g.n} matrix acting on rank-{x.n} lattices")
    if not is_special_linear(g):
        raise NotSpecialLinear("displacement is defined for SL(n) elements")
    C = g if x.basis.is_identity() else inverse(x.basis) * g * x.basis
    s = smith_valuations(C, x.valuation)
    return s[-1] - s[0]


def neighbors(x: Vertex) -> list:
    """The p + 1 vertices adjacent to x in the tree of SL(2, Q) for a p-adic valuation."""
    if x.n != 2:
        raise UnsupportedDimension("neighbor enumeration is implemented for n = 2")
    v = x.valuation
    if not isinstance(v, PAdic):
        raise InfiniteResidueField(f"residue field of {v} is infinite")
    p = v.p
    steps = [Mat([[p, j], [0, 1]]) for j in range(p)] + [Mat([[1, 0], [0, p]])]
    return [Vertex(x.basis * s, v) for s in steps]


def sym_displacement(g: Mat, t0=None) -> Fraction:
    """Sum of squared entries of g: a monotone proxy for displacement in the symmetric space.

    Rational-function entries are first evaluated at ``t0``.
    """
    total = Fraction(0)
    for x in g.entries():
        if isinstance(x, RatFunc):
            if t0 is None:
                raise NeedsEvaluationPoint("rational-function entries need an evaluation point t0")
            x = x(Fraction(t0))
        elif not isinstance(x, Fraction):
            raise NeedsEvaluationPoint(f"cannot square {type(x).__name__} entries exactly over Q")
        total += x * x
    return total


@dataclass
class DisplacementReport:
    tree_displacements: list
    sym_proxy: Fraction | None = None
    total: Fraction = field(init=False)

    def __post_init__(self):
        self.total = Fraction(sum(self.tree_displacements)) + (self.sym_proxy or 0)

    def within(self, C, sym_bound=None) -> bool:
        """Componentwise test: every tree displacement <= C and the proxy <= its bound."""
        if any(d > C for d in self.tree_displacements):
            return False
        if sym_bound is not None and self.sym_proxy is not None and self.sym_proxy > sym_bound:
            return False
        return True


def displacement_report(g: Mat, bases, sym=False, t0=None) -> DisplacementReport:
    tree = [displacement(g, x) for x in bases]
    proxy = sym_displacement(g, t0) if sym else None
    return DisplacementReport(tree, proxy)


# -- breadth-first oracle for n = 2 -------------------------------------------

@dataclass
class TreeBall:
    """Vertices within a radius of a root, discovered breadth-first through :func:`neighbors`."""

    vertices: list
    parent: list
    depth: list


def bfs_ball(root: Vertex, radius: int) -> TreeBall:
    """Enumerate the ball around ``root`` one neighbor layer at a time.

    Each vertex must see its parent among its own neighbors exactly once; the
    remaining neighbors are new.  A violation means the neighbor structure is
    not a tree and raises ``AssertionError``.
    """
    verts, parent, depth = [root], [-1], [0]
    frontier = [0]
    for r in range(1, radius + 1):
        nxt = []
        for i in frontier:
            x = verts[i]
            nbrs = neighbors(x)
            if parent[i] >= 0:
                up = verts[parent[i]]
                flags = [same_vertex(y, up) for y in nbrs]
                if sum(flags) != 1:
                    raise AssertionError(f"vertex {i} sees its parent {sum(flags)} times")
                nbrs = [y for y, f in zip(nbrs, flags) if not f]
            for y in nbrs:
                verts.append(y)
                parent.append(i)
                depth.append(r)
                nxt.append(len(verts) - 1)
        frontier = nxt
    return TreeBall(verts, parent, depth)


def _integral_basis(x: Vertex):
    rows = x.basis.rows
    scale = math.lcm(*(e.denominator for r in rows for e in r))
    return [int(e * scale) for r in rows for e in r]


_BIG = 1 << 24


def _nu_array(a: np.ndarray, p: int) -> np.ndarray:
    """p-adic valuation of an integer array; zeros map to a large sentinel."""
    out = np.zeros(a.shape, dtype=np.int32)
    flat = out.ravel()
    zero = a == 0
    out[zero] = _BIG
    idx = np.flatnonzero((a % p == 0) & ~zero)
    vals = a.ravel()[idx]
    while idx.size:
        flat[idx] += 1
        vals = vals // p
        keep = vals % p == 0
        idx, vals = idx[keep], vals[keep]
    return out


def pairwise_distance_blocks(vertices, block: int = 512, upper: bool = False):
    """Yield ``(start, stop, col0, D)`` with ``D[i - start, j - col0]`` the tree distance
    between vertices i and j, for n = 2 and one p-adic valuation.

    With ``upper=True`` only columns ``j >= start`` are produced (``col0 = start``),
    which covers every unordered pair once.

    Same closed form as :func:`distance`: each basis is scaled to an integer
    matrix (same homothety class) and, with X^-1 Y = adj(X) Y / det X, the spread
    is v(det X) + v(det Y) - 2 * (least valuation of an entry of adj(X) Y).
    """
    if not vertices:
        return
    v = vertices[0].valuation
    if not isinstance(v, PAdic) or any(x.n != 2 or x.valuation != v for x in vertices):
        raise UnsupportedDimension("pairwise distances need n = 2 and one p-adic valuation")
    p = v.p
    n = len(vertices)
    ints = [_integral_basis(x) for x in vertices]
    bound = max(abs(e) for b in ints for e in b)
    if bound >= 2**30:
        for start in range(0, n, block):
            stop = min(start + block, n)
            col0 = start if upper else 0
            yield start, stop, col0, np.array(
                [[distance(vertices[i], vertices[j]) for j in range(col0, n)] for i in range(start, stop)],
                dtype=np.int64,
            )
        return
    # entries of adj(X) Y are sums of two products of basis entries
    dtype = np.int32 if 2 * bound * bound < 2**31 else np.int64
    arr = np.array(ints, dtype=dtype)
    a, b, c, d = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    nu_det = np.array([int_valuation(int(x), p) for x in a.astype(object) * d - b.astype(object) * c],
                      dtype=np.int32)
    triangular = not c.any()
    if triangular:
        nu_a, nu_d = _nu_array(a, p), _nu_array(d, p)
    for start in range(0, n, block):
        stop = min(start + block, n)
        col0 = start if upper else 0
        sl, cols = slice(start, stop), slice(col0, n)
        xa, xb, xc, xd = (col[sl, None] for col in (a, b, c, d))
        ya, yb, yc, yd = (col[None, cols] for col in (a, b, c, d))
        if triangular:
            # adj(X) Y = [[dx*ay, dx*by - bx*dy], [0, ax*dy]]
            m = np.minimum(nu_d[sl, None] + nu_a[None, cols], nu_a[sl, None] + nu_d[None, cols])
            m = np.minimum(m, _nu_array(xd * yb - xb * yd, p))
        else:
            g = np.gcd(np.gcd(xd * ya - xb * yc, xd * yb - xb * yd), np.gcd(xa * yc - xc * ya, xa * yd - xc * yb))
            m = _nu_array(g, p)
        yield start, stop, col0, nu_det[sl, None] + nu_det[None, cols] - 2 * m


def pairwise_distances(vertices, block: int = 512) -> np.ndarray:
    """Dense all-pairs version of :func:`pairwise_distance_blocks`."""
    n = len(vertices)
    out = np.zeros((n, n), dtype=np.int64)
    for start, stop, _, blk in pairwise_distance_blocks(vertices, block):
        out[start:stop] = blk
    return out
