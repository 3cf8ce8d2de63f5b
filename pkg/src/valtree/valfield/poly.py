"""Dense univariate and sparse multivariate polynomials with exact coefficients."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from ..errors import DivisionByZero


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class UniPoly:
    """Dense polynomial, lowest degree first.

    Coefficients are usually :class:`~fractions.Fraction`, but any exact field
    element with ``+ - * /`` and ``== 0`` works (characteristic polynomials over
    rational function fields use this).  The zero polynomial has no
    coefficients and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs):
        # caller guarantees no trailing zero and coerced entries
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c):
        return cls([c])

    # -- structure ---------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def low(self):
        """Index of the lowest nonzero coefficient (``inf`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return math.inf

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_monomial(self):
        return bool(self.coeffs) and self.low() == len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return UniPoly(cs)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly([other]) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            other = _coerce(other)
            if other == 0:
                return UniPoly()
            return UniPoly._raw(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k):
        """Multiply by ``t**k`` (``k`` may be negative if the division is exact)."""
        if not self.coeffs:
            return self
        if k >= 0:
            return UniPoly._raw((Fraction(0),) * k + self.coeffs)
        return UniPoly(self.coeffs[-k:])

    def divmod(self, other):
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv_lc = Fraction(1) / other.lc
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c * inv_lc
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - q * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == 1:
            return self
        return UniPoly([c / lc for c in self.coeffs])

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.format()!r})"

    def format(self, var="t"):
        """Canonical printed form, highest degree first, e.g. ``3*t^2 - 1/2*t + 1``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if not isinstance(c, Fraction):
                mono = "" if k == 0 else ("*" + (var if k == 1 else f"{var}^{k}"))
                parts.append(("" if not parts else "+ ") + f"[{c}]{mono}")
                continue
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals (zero if both are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    # strip common powers of t first, cheap and very common for Laurent data
    la, lb = a.low(), b.low()
    k = min(la, lb)
    if la:
        a = a.shift(-la)
    if lb:
        b = b.shift(-lb)
    if a.is_constant() or b.is_constant():
        return UniPoly.monomial(k)
    if len(a) < len(b):
        a, b = b, a
    while not b.is_zero():
        a, b = b, a % b
    g = a.monic()
    return g.shift(k) if k else g


def poly_xgcd(a: UniPoly, b: UniPoly):
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    u0, u1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    inv = Fraction(1) / r0.lc
    return r0 * inv, s0 * inv, u0 * inv


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over the rationals.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            c = Fraction(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly, nvars=1, var=0):
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c != 0:
                e = [0] * nvars
                e[var] = k
                terms[tuple(e)] = c
        return cls(nvars, terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-math.inf)

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly._make(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly._make(self.nvars, out)

    __rmul__ = __mul__

    @classmethod
    def _make(cls, nvars, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def substitute_block(self, offset: int, total: int) -> "MultiPoly":
        """Rename variable ``i`` to ``offset + i`` inside a ring of ``total`` variables."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * total
            ne[offset:offset + self.nvars] = e
            out[tuple(ne)] = c
        return MultiPoly._make(total, out)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc += term
        return acc

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash(("MultiPoly", self.nvars, frozenset(self.terms.items())))

    def format(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            sign = ("-" if neg else "") if not parts else ("- " if neg else "+ ")
            parts.append(sign + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.format()!r})"


def integer_points(dim: int, radius: int):
    """All integer vectors with entries in ``[-radius, radius]``, in a fixed order."""
    return product(range(-radius, radius + 1), repeat=dim)
