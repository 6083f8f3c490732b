from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from generators import det_leibniz
from sticky.numerics import (
    DegenerateSlopeError,
    ParseError,
    binom_plus,
    ceil_rational,
    det_bareiss,
    format_rational,
    rational_parse,
    slope,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/3", Fraction(1, 3)),
        ("1.25", Fraction(5, 4)),
        ("-0/7", Fraction(0)),
        ("-3", Fraction(-3)),
        ("‑3", Fraction(-3)),
        ("6/-4", Fraction(-3, 2)),
        ("-.5", Fraction(-1, 2)),
        ("2.", Fraction(2)),
        (" 0.125 ", Fraction(1, 8)),
    ],
)
def test_parse(text, expected):
    value = rational_parse(text)
    assert value == expected
    assert value.denominator > 0


def test_parse_canonical_zero():
    z = rational_parse("-0/7")
    assert (z.numerator, z.denominator) == (0, 1)


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1//2", "1.2.3", ".", "1e5", "0x10", "1/2/3"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        rational_parse(text)


def test_parse_error_names_token():
    with pytest.raises(ParseError, match="7/0"):
        rational_parse("7/0")


@given(rationals)
def test_format_roundtrip(q):
    assert rational_parse(format_rational(q)) == q


@pytest.mark.parametrize(
    "p1, p2, expected",
    [((0, 0), (2, 1), Fraction(1, 2)), ((0, 0), (3, -1), Fraction(-1, 3)), ((1, 5), (4, 5), 0)],
)
def test_slope(p1, p2, expected):
    assert slope(p1, p2) == expected


def test_slope_vertical():
    with pytest.raises(DegenerateSlopeError):
        slope((1, 0), (1, 3))


@given(rationals, rationals, rationals, rationals)
def test_slope_symmetric(a, b, c, d):
    if a != c:
        assert slope((a, b), (c, d)) == slope((c, d), (a, b))


@given(rationals, rationals, rationals)
def test_exact_arithmetic(a, b, c):
    assert (a + b) + c == a + (b + c)
    if b != 0:
        assert a / b * b == a


@pytest.mark.parametrize("n, k, expected", [(3, 2, 3), (5, -1, 0), (2, 3, 0), (0, 0, 1)])
def test_binom_plus(n, k, expected):
    assert binom_plus(n, k) == expected


@given(st.integers(1, 70), st.integers(-5, 75))
def test_binom_plus_pascal(n, k):
    assert binom_plus(n, k) == binom_plus(n - 1, k - 1) + binom_plus(n - 1, k)


def test_binom_plus_big():
    assert binom_plus(64, 32) == 1832624140942590534
    assert binom_plus(120, 60) > 10**30


@given(rationals)
def test_ceil(q):
    c = ceil_rational(q)
    assert c - 1 < q <= c


@given(st.lists(st.lists(st.integers(-30, 30), min_size=5, max_size=5), min_size=1, max_size=5))
def test_bareiss_matches_leibniz(rows):
    k = len(rows)
    matrix = [r[:k] for r in rows]
    assert det_bareiss(matrix) == det_leibniz(matrix)


def test_bareiss_pivoting():
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[0, 0], [1, 2]]) == 0
    assert det_bareiss([]) == 1
