"""Exact field elements beyond plain rationals.

Rationals are represented by :class:`fractions.Fraction` throughout; this module
adds rational functions in one variable (:class:`RatFunc`) and elements of a
simple algebraic extension of the rationals (:class:`AlgElem`).
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, MixedFamilies, NotIrreducibleModulus
from .poly import MultiPoly, UniPoly, poly_gcd, poly_xgcd

_ONE = UniPoly([1])
_ZERO = UniPoly()


class RatFunc:
    """Element of Q(t), kept as ``num/den`` with coprime parts and monic ``den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly(num if isinstance(num, (list, tuple)) else [num])
        if den is None:
            den = _ONE
        elif not isinstance(den, UniPoly):
            den = UniPoly(den if isinstance(den, (list, tuple)) else [den])
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def raw(cls, num, den):
        """Unnormalized pair, for exercising :func:`normalize`; arithmetic expects canonical input."""
        return cls._make(num, den)

    @classmethod
    def t(cls):
        return cls._make(UniPoly([0, 1]), _ONE)

    @classmethod
    def from_laurent(cls, coeffs: dict):
        """Build ``sum c_k t^k`` from an exponent -> coefficient map (negative exponents allowed)."""
        if not coeffs:
            return cls._make(_ZERO, _ONE)
        lo = min(min(coeffs), 0)
        hi = max(coeffs)
        cs = [0] * (hi - lo + 1)
        for k, c in coeffs.items():
            cs[k - lo] = c
        return cls(UniPoly(cs), UniPoly.monomial(-lo))

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def is_laurent(self):
        return self.den.is_monomial()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc._make(UniPoly([other]), _ONE)
        raise MixedFamilies(f"cannot combine RatFunc with {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = self._lift(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if other == 0:
                return RatFunc._make(_ZERO, _ONE)
            return RatFunc._make(self.num * Fraction(other), self.den)
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc._make(_ZERO, _ONE)
        # cross-cancel so both parts stay coprime without a full gcd of the products
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a = self.num // g1 if len(g1) > 1 else self.num
        d = other.den // g1 if len(g1) > 1 else other.den
        c = other.num // g2 if len(g2) > 1 else other.num
        b = self.den // g2 if len(g2) > 1 else self.den
        return RatFunc._make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        lc = self.num.lc
        return RatFunc._make(self.den * (Fraction(1) / lc), self.num * (Fraction(1) / lc))

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._make(self.num ** k, self.den ** k)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise DivisionByZero(f"{self} has a pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.coeffs == (1,) and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def format(self, var="t"):
        if self.den.coeffs == (1,):
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    __str__ = format

    def __repr__(self):
        return f"RatFunc({self.format()!r})"


def _canonical(num: UniPoly, den: UniPoly):
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    g = poly_gcd(num, den)
    if len(g) > 1:
        num = num // g
        den = den // g
    lc = den.lc
    if lc != 1:
        inv = Fraction(1) / lc
        num, den = num * inv, den * inv
    return num, den


def _is_squarefree_int(p):
    return all(c.denominator == 1 for c in p.coeffs)


def _rational_roots(p: UniPoly):
    """Rational roots of an integer polynomial, by the rational-root test."""
    from sympy import divisors

    cs = [int(c) for c in p.coeffs]
    if cs[0] == 0:
        return [Fraction(0)]
    roots = []
    for a in divisors(abs(cs[0])):
        for b in divisors(abs(cs[-1])):
            for s in (1, -1):
                x = Fraction(s * a, b)
                if p(x) == 0:
                    roots.append(x)
    return roots


def is_irreducible(p: UniPoly) -> bool:
    """Irreducibility over Q of an integer polynomial of degree at most 6."""
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    if _rational_roots(p):
        return False
    if p.degree <= 3:
        return True
    # quadratic/cubic factors remain possible; delegate the trial factorization
    from sympy import Poly, symbols

    x = symbols("x")
    return Poly([int(c) for c in reversed(p.coeffs)], x, domain="QQ").is_irreducible


class NumberField:
    """Q[a]/(f) for a monic irreducible integer polynomial ``f`` of degree <= 6."""

    MAX_DEGREE = 6

    def __init__(self, modulus, var="a"):
        f = modulus if isinstance(modulus, UniPoly) else UniPoly(modulus)
        if f.degree < 1 or f.lc != 1 or not _is_squarefree_int(f):
            raise NotIrreducibleModulus(f"modulus must be monic with integer coefficients: {f}")
        if f.degree > self.MAX_DEGREE:
            raise NotIrreducibleModulus(f"modulus degree {f.degree} exceeds {self.MAX_DEGREE}")
        if not is_irreducible(f):
            raise NotIrreducibleModulus(f"{f.format(var)} is reducible over Q")
        self.modulus = f
        self.var = var
        self.degree = f.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus.coeffs))

    def __repr__(self):
        return f"NumberField({self.modulus.format(self.var)!r})"

    def __call__(self, coords) -> "AlgElem":
        if isinstance(coords, (int, Fraction)):
            coords = [coords]
        return AlgElem(self, coords)

    def from_poly(self, p: UniPoly) -> "AlgElem":
        return AlgElem(self, (p % self.modulus).coeffs)

    def gen(self):
        return self.from_poly(UniPoly([0, 1]))

    def zero(self):
        return AlgElem(self, [])

    def one(self):
        return AlgElem(self, [1])


class AlgElem:
    """Element of a :class:`NumberField`, stored as ``deg f`` rational coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        cs = [Fraction(c) for c in coords]
        if len(cs) > field.degree:
            cs = list((UniPoly(cs) % field.modulus).coeffs)
        cs += [Fraction(0)] * (field.degree - len(cs))
        self.field = field
        self.coords = tuple(cs)

    def poly(self) -> UniPoly:
        return UniPoly(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def _lift(self, other):
        if isinstance(other, AlgElem):
            if other.field != self.field:
                raise MixedFamilies("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.field, [other])
        raise MixedFamilies(f"cannot combine AlgElem with {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, (AlgElem, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        return AlgElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        if not isinstance(other, (AlgElem, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (AlgElem, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        return self.field.from_poly(self.poly() * o.poly())

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a number field")
        g, s, _ = poly_xgcd(self.poly(), self.field.modulus)
        # modulus irreducible, so g == 1
        return self.field.from_poly(s)

    def __truediv__(self, other):
        if not isinstance(other, (AlgElem, int, Fraction)):
            return NotImplemented
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def multiplication_matrix(self):
        """Matrix (list of rows) of ``x -> self*x`` on the power basis, column j = self*a^j."""
        cols = []
        a = self.field.gen()
        basis_el = self.field.one()
        for _ in range(self.field.degree):
            cols.append((self * basis_el).coords)
            basis_el = basis_el * a
        d = self.field.degree
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == AlgElem(self.field, [other]).coords
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(("AlgElem", self.coords))

    def format(self, var=None):
        return self.poly().format(var or self.field.var)

    __str__ = format

    def __repr__(self):
        return f"AlgElem({self.format()!r} mod {self.field.modulus.format(self.field.var)})"


def family_of(x) -> str:
    """Name of the field family an element belongs to."""
    if isinstance(x, (int, Fraction)):
        return "Q"
    if isinstance(x, RatFunc):
        return "Q(t)"
    if isinstance(x, AlgElem):
        return "Q(a)"
    if isinstance(x, MultiPoly):
        return "Q[t...]"
    raise TypeError(f"not a supported field element: {x!r}")


def zero_like(x):
    if isinstance(x, RatFunc):
        return RatFunc._make(_ZERO, _ONE)
    if isinstance(x, AlgElem):
        return x.field.zero()
    if isinstance(x, MultiPoly):
        return MultiPoly(x.nvars)
    return Fraction(0)


def one_like(x):
    if isinstance(x, RatFunc):
        return RatFunc._make(_ONE, _ONE)
    if isinstance(x, AlgElem):
        return x.field.one()
    if isinstance(x, MultiPoly):
        return MultiPoly.constant(x.nvars, 1)
    return Fraction(1)


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
