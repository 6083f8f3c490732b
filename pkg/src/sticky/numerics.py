"""Exact rational scalars and the small geometric primitives built on them.

``Rational`` is :class:`fractions.Fraction`; Python integers are already
arbitrary precision, so no separate big-integer type is needed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple, Union

Rational = Fraction
Point = Tuple[Fraction, Fraction]
RationalLike = Union[int, str, Fraction]

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/([+-]?\d+)$")
_DEC_RE = re.compile(r"^([+-]?)(\d*)\.(\d*)$")


class ParseError(ValueError):
    """Raised when text cannot be read as an exact rational."""


class DegenerateSlopeError(ZeroDivisionError):
    pass


def rational_parse(text: str) -> Fraction:
    """Parse an integer, ``p/q`` fraction or finite decimal exactly.

    >>> rational_parse("1.25")
    Fraction(5, 4)
    """
    token = text.strip() if isinstance(text, str) else text
    if not isinstance(token, str) or not token:
        raise ParseError(f"malformed rational: {text!r}")
    # U+2011 and U+2212 show up when values are pasted from typeset documents
    token = token.replace("−", "-").replace("‑", "-")
    if _INT_RE.match(token):
        return Fraction(int(token))
    m = _FRAC_RE.match(token)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    m = _DEC_RE.match(token)
    if m and (m.group(2) or m.group(3)):
        sign, whole, frac = m.groups()
        value = Fraction(int(whole or "0")) + Fraction(int(frac or "0"), 10 ** len(frac))
        return -value if sign == "-" else value
    raise ParseError(f"malformed rational: {text!r}")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and rational text; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rational_parse(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical text: ``"p/q"``, or just ``"p"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def slope(p1: Sequence, p2: Sequence) -> Fraction:
    run = p2[0] - p1[0]
    if run == 0:
        raise DegenerateSlopeError(f"vertical segment between {p1} and {p2}")
    return Fraction(p2[1] - p1[1]) / run


def cross(o: Sequence, a: Sequence, b: Sequence):
    """z-component of (a - o) x (b - o); > 0 for a counter-clockwise turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def binom_plus(n: int, k: int) -> int:
    """Binomial coefficient that vanishes for negative ``k`` (and for ``k > n``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0:
        return 0
    return comb(n, k)


def ceil_rational(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]
