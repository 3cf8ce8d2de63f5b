"""Exact square matrices, length functions on SL(n) and word-metric balls."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .errors import (
    BallTooLarge,
    DimensionMismatch,
    MixedFamilies,
    NotDiagonal,
    NotSpecialLinear,
    NotUnipotentForm,
    SingularMatrix,
)
from .valfield import (
    INF,
    MultiPoly,
    UniPoly,
    family_of,
    format_element,
    is_zero,
    one_like,
    parse_element,
    valuate,
    zero_like,
)

DEFAULT_BALL_CAP = 10**6


def _coerce(x):
    return Fraction(x) if isinstance(x, int) else x


class Mat:
    """Immutable n x n matrix over one exact field family."""

    __slots__ = ("rows", "n", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        fams = {family_of(x) for r in rows for x in r}
        if len(fams) > 1:
            # constants (Fractions) mix freely with a single richer family
            fams.discard("Q")
            if len(fams) > 1:
                raise MixedFamilies(f"entries from several field families: {sorted(fams)}")
            like = next(x for r in rows for x in r if family_of(x) != "Q")
            zero = zero_like(like)
            rows = tuple(tuple(x if family_of(x) != "Q" else zero + x for x in r) for r in rows)
        self.rows = rows
        self.n = n
        self._hash = None

    @classmethod
    def _make(cls, rows):
        m = object.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        m._hash = None
        return m

    @classmethod
    def identity(cls, n, like=Fraction(1)):
        zero, one = zero_like(like), one_like(like)
        return cls._make(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, *entries):
        entries = [_coerce(x) for x in entries]
        zero = zero_like(entries[0])
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def elementary(cls, n, i, j, x, like=None):
        """Identity plus ``x`` at 1-based position (i, j)."""
        x = _coerce(x)
        base = cls.identity(n, like if like is not None else x)
        rows = [list(r) for r in base.rows]
        rows[i - 1][j - 1] = rows[i - 1][j - 1] + x
        return cls(rows)

    @classmethod
    def from_literals(cls, rows, field="Q"):
        return cls([[parse_element(x, field) for x in r] for r in rows])

    def to_literals(self):
        return [[format_element(x) for x in r] for r in self.rows]

    def format(self):
        return json.dumps(self.to_literals(), separators=(",", ":"))

    def __repr__(self):
        return f"Mat({self.format()})"

    # -- structure --------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def family(self):
        return family_of(self.rows[0][0])

    def like(self):
        return self.rows[0][0]

    def entries(self):
        return [x for r in self.rows for x in r]

    def transpose(self):
        return Mat._make(tuple(zip(*self.rows)))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self):
        return all((x == 1) if i == j else is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_diagonal(self):
        return all(is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_uni_upper_triangular(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j and not x == 1:
                    return False
                if j < i and not is_zero(x):
                    return False
        return True

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, Mat):
            if other.n != self.n:
                raise DimensionMismatch(f"{self.n}x{self.n} times {other.n}x{other.n}")
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if not is_zero(a)]
                row = []
                for j in range(n):
                    c = cols[j]
                    acc = None
                    for k, a in nz:
                        b = c[k]
                        if is_zero(b):
                            continue
                        term = a * b
                        acc = term if acc is None else acc + term
                    row.append(acc if acc is not None else zero_like(r[0]))
                out.append(tuple(row))
            return Mat._make(tuple(out))
        other = _coerce(other)
        return Mat._make(tuple(tuple(x * other for x in r) for r in self.rows))

    def __rmul__(self, other):
        other = _coerce(other)
        return Mat._make(tuple(tuple(other * x for x in r) for r in self.rows))

    def __add__(self, other):
        return Mat._make(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return Mat._make(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Mat._make(tuple(tuple(-a for a in r) for r in self.rows))

    def __pow__(self, k):
        if k < 0:
            return inverse(self) ** (-k)
        result = Mat.identity(self.n, self.like())
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def map(self, f):
        return Mat._make(tuple(tuple(f(x) for x in r) for r in self.rows))


def det(g: Mat):
    """Exact determinant (elimination over a field, cofactor expansion over polynomials)."""
    if isinstance(g.like(), MultiPoly):
        return _det_expand(g.rows)
    n = g.n
    if n == 1:
        return g.rows[0][0]
    if n == 2:
        (a, b), (c, d) = g.rows
        return a * d - b * c
    a = [list(r) for r in g.rows]
    result = one_like(a[0][0])
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            return zero_like(a[0][0])
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = 1 / p
        for r in range(col + 1, n):
            if is_zero(a[r][col]):
                continue
            f = a[r][col] * inv
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def _det_expand(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        a = rows[0][j]
        if is_zero(a):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det_expand(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else zero_like(rows[0][0])


def det_leibniz(rows):
    """Permutation-sum determinant; slow, kept as an independent check."""
    n = len(rows)
    acc = zero_like(rows[0][0])
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = one_like(rows[0][0])
        for i in range(n):
            term = term * rows[i][perm[i]]
        acc = acc + term if sign > 0 else acc - term
    return acc


def inverse(g: Mat) -> Mat:
    n = g.n
    like = g.like()
    if n == 2:
        (a, b), (c, d) = g.rows
        dt = a * d - b * c
        if is_zero(dt):
            raise SingularMatrix("matrix is singular")
        if dt == 1:
            return Mat._make(((d, -b), (-c, a)))
        inv = 1 / dt
        return Mat._make(((d * inv, -b * inv), (-c * inv, a * inv)))
    zero, one = zero_like(like), one_like(like)
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(g.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return Mat._make(tuple(tuple(r[n:]) for r in a))


def char_poly(g: Mat) -> UniPoly:
    """det(x*I - g) as a polynomial with coefficients in g's field, lowest degree first."""
    n = g.n
    zero = zero_like(g.like())
    coeffs = [zero] * n + [one_like(g.like())]
    m = Mat.identity(n, g.like())
    ident = m
    # Faddeev-LeVerrier; division by k is fine in characteristic zero
    for k in range(1, n + 1):
        am = g * m
        c = -am.trace() * Fraction(1, k)
        coeffs[n - k] = c
        m = am + ident * c
    return UniPoly(coeffs)


def is_special_linear(g: Mat) -> bool:
    return det(g) == 1


def _require_sl(g: Mat):
    if not is_special_linear(g):
        raise NotSpecialLinear("matrix does not have determinant 1")


def length(v, g: Mat):
    """-min over entries of g and g^-1 of their valuations."""
    _require_sl(g)
    gi = inverse(g)
    m = min(valuate(v, x) for x in g.entries() + gi.entries())
    return -m


def tilde_length(v, g: Mat) -> Fraction:
    """Modified length on uni-upper-triangular matrices; entries at distance d from the
    diagonal are damped by 1/2^(d-1)."""
    if not g.is_uni_upper_triangular():
        raise NotUnipotentForm("tilde_length needs a uni-upper-triangular matrix")
    gi = inverse(g)
    m = Fraction(0)
    n = g.n
    for i in range(n):
        for j in range(i + 1, n):
            w = Fraction(1, 2 ** (j - i - 1))
            for x in (g.rows[i][j], gi.rows[i][j]):
                nu = valuate(v, x)
                if nu != INF:
                    m = min(m, w * nu)
    return -m


def pseudometric(v, g: Mat, h: Mat):
    _require_sl(g)
    _require_sl(h)
    return length(v, inverse(g) * h)


def diagonal_coarse(v, g: Mat) -> Mat:
    """Replace each diagonal entry by the uniformizer raised to its valuation."""
    if not g.is_diagonal():
        raise NotDiagonal("diagonal_coarse needs a diagonal matrix")
    _require_sl(g)
    pi = v.uniformizer()
    return Mat.diag(*[pi ** valuate(v, g.rows[i][i]) for i in range(g.n)])


def inequality_chain(a, b):
    a, b = Fraction(a), Fraction(b)
    return (-min(0, a, b / 2), -min(0, a, b), -2 * min(0, a, b / 2))


def check_inequality_lemma(a, b) -> bool:
    """-min{0,a,b/2} <= -min{0,a,b} <= -2 min{0,a,b/2}."""
    lo, mid, hi = inequality_chain(a, b)
    return lo <= mid <= hi


class GeneratorSet:
    """Symmetric generating set: closed under inverses, identity removed."""

    def __init__(self, gens, labels=None, symmetrize=True):
        gens = list(gens)
        labels = list(labels) if labels is not None else [f"g{i}" for i in range(len(gens))]
        if len(labels) != len(gens):
            raise ValueError("one label per generator")
        out, out_labels = [], []
        for g, lab in zip(gens, labels):
            if g.is_identity() or g in out:
                continue
            out.append(g)
            out_labels.append(lab)
        if symmetrize:
            for g, lab in list(zip(out, out_labels)):
                gi = inverse(g)
                if gi not in out:
                    out.append(gi)
                    out_labels.append(lab[:-3] if lab.endswith("^-1") else lab + "^-1")
        dims = {g.n for g in out}
        if len(dims) > 1:
            raise DimensionMismatch("generators of different sizes")
        fams = {g.family for g in out}
        if len(fams) > 1:
            raise MixedFamilies("generators over different fields")
        self.gens = out
        self.labels = out_labels

    @property
    def n(self):
        return self.gens[0].n if self.gens else None

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_symmetric(self):
        return all(inverse(g) in self.gens for g in self.gens)


@dataclass
class WordBall:
    """Distinct group elements of word length <= radius with their lengths and a witness word."""

    radius: int
    lengths: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)
    _order: list = field(default=None, repr=False)

    def __len__(self):
        return len(self.lengths)

    def __contains__(self, g):
        return g in self.lengths

    def elements(self, radius=None):
        """Elements in canonical (printed-form lexicographic) order, optionally restricted."""
        if self._order is None:
            self._order = sorted(self.lengths, key=Mat.format)
        if radius is None:
            return list(self._order)
        return [g for g in self._order if self.lengths[g] <= radius]

    def sphere(self, r):
        return [g for g in self.elements() if self.lengths[g] == r]

    def count(self, radius):
        return sum(1 for k in self.lengths.values() if k <= radius)


def word_ball(S: GeneratorSet, R: int, cap: int = DEFAULT_BALL_CAP, identity: Mat | None = None) -> WordBall:
    """Breadth-first enumeration of the closed ball of radius ``R`` in the word metric."""
    if R < 0:
        raise ValueError("radius must be non-negative")
    if identity is None:
        if not S.gens:
            raise ValueError("empty generating set: pass identity= to fix the dimension")
        identity = Mat.identity(S.n, S.gens[0].like())
    ball = WordBall(radius=R)
    ball.lengths[identity] = 0
    ball.words[identity] = ()
    frontier = [identity]
    for r in range(1, R + 1):
        nxt = []
        for g in frontier:
            w = ball.words[g]
            for s, lab in zip(S.gens, S.labels):
                h = g * s
                if h in ball.lengths:
                    continue
                ball.lengths[h] = r
                ball.words[h] = w + (lab,)
                nxt.append(h)
                if len(ball.lengths) > cap:
                    raise BallTooLarge(cap, r)
        frontier = nxt
        if not frontier:
            break
    return ball
