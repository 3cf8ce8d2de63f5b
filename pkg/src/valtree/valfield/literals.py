"""Text literals for field elements.

Grammar (whitespace ignored)::

    rational  := INT | INT "/" INT
    term      := [coef "*"] VAR ["^" INT] | coef
    poly      := ["-"] term (("+" | "-") term)*
    ratfunc   := "(" poly ")" "/" "(" poly ")" | poly

The printer emits exactly this grammar, so ``parse_element(format_element(x))``
returns ``x`` for every family.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .elements import AlgElem, NumberField, RatFunc
from .poly import UniPoly

_CONST = re.compile(r"^(\d+(?:/\d+)?)$")
_MONO = re.compile(r"^(?:(\d+(?:/\d+)?)\*)?([A-Za-z]\w*)(?:\^(\d+))?$")


def _split_terms(s: str):
    terms = []
    cur = ""
    for ch in s:
        # a sign starts a new term unless it follows '^' or '*' or sits at the start
        if ch in "+-" and cur and cur[-1] not in "^*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


def parse_poly(text: str, var: str = "t") -> UniPoly:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial literal")
    coeffs: dict[int, Fraction] = {}
    for raw in _split_terms(s):
        sign = 1
        term = raw
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        m = _CONST.match(term)
        if m:
            coef_s, name, exp_s = m.group(1), None, None
        else:
            m = _MONO.match(term)
            if not m:
                raise ParseError(f"bad term {raw!r} in {text!r}")
            coef_s, name, exp_s = m.groups()
            if name != var:
                raise ParseError(f"unknown variable {name!r} in {text!r} (expected {var!r})")
        try:
            c = Fraction(coef_s) if coef_s is not None else Fraction(1)
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {raw!r}") from exc
        k = 0 if name is None else (int(exp_s) if exp_s is not None else 1)
        coeffs[k] = coeffs.get(k, 0) + sign * c
    if not coeffs:
        return UniPoly()
    top = max(coeffs)
    return UniPoly([coeffs.get(k, 0) for k in range(top + 1)])


def _parse_rational(s: str) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", s):
        raise ParseError(f"bad rational literal {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {s!r}") from exc


def parse_element(text, field="Q", var=None):
    """Parse a literal into an element of ``field``.

    ``field`` is ``"Q"``, ``"Q(t)"`` or a :class:`NumberField`.  Plain numbers
    in the JSON (ints) are accepted as well.
    """
    if isinstance(text, bool):
        raise ParseError("booleans are not field elements")
    if isinstance(text, int):
        text = str(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a string literal, got {text!r}")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty literal")
    if field == "Q":
        return _parse_rational(s)
    if field == "Q(t)":
        var = var or "t"
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
        if m:
            num, den = parse_poly(m.group(1), var), parse_poly(m.group(2), var)
            if den.is_zero():
                raise ParseError(f"zero denominator in {text!r}")
            return RatFunc(num, den)
        if s.startswith("(") and s.endswith(")") and s.count("(") == 1:
            s = s[1:-1]
        return RatFunc(parse_poly(s, var))
    if isinstance(field, NumberField):
        return field.from_poly(parse_poly(s, var or field.var))
    raise ParseError(f"unsupported field {field!r}")


def format_element(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (RatFunc, AlgElem)):
        return x.format()
    if hasattr(x, "format"):
        return x.format()
    raise TypeError(f"cannot format {x!r}")


def field_from_spec(spec):
    """Resolve a scenario ``field`` entry: ``"Q"``, ``"Q(t)"`` or ``{"modulus": [...], "var": "a"}``."""
    if spec in ("Q", "Q(t)"):
        return spec
    if isinstance(spec, dict) and "modulus" in spec:
        return NumberField(UniPoly([Fraction(c) for c in spec["modulus"]]), spec.get("var", "a"))
    raise ParseError(f"unknown field {spec!r}")
