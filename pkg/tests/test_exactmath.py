import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from seshadri.exactmath import (
    ceil_mult_sqrt,
    ceil_sqrt_ratio,
    cmp_ratio_vs_sqrt,
    floor_mult_sqrt,
    format_decimal,
    format_percent,
    format_rational,
    integer_in_open_sqrt_interval,
    is_perfect_square,
    isqrt,
    isqrt_ceil,
    least_rational_above_sqrt,
    parse_rational,
)


@pytest.mark.parametrize(
    "value,expected",
    [(19, 4), (0, 0), (528, 22), (1, 1), (4, 2), (65535, 255), (65536, 256)],
)
def test_isqrt_values(value, expected):
    assert isqrt(value) == expected


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**6))
def test_isqrt_bracketing(x):
    r = isqrt(x)
    assert r * r <= x < (r + 1) * (r + 1)


@given(st.integers(min_value=0, max_value=10**30))
def test_isqrt_bracketing_large(x):
    r = isqrt(x)
    assert r * r <= x < (r + 1) * (r + 1)


@given(st.integers(min_value=1, max_value=10**9))
def test_isqrt_ceil_bracketing(x):
    r = isqrt_ceil(x)
    assert (r - 1) * (r - 1) < x <= r * r


@pytest.mark.parametrize("value,expected", [(16, True), (19, False), (-4, False), (0, True), (1, True)])
def test_is_perfect_square(value, expected):
    assert is_perfect_square(value) is expected


@given(st.integers(min_value=0, max_value=10**9))
def test_squares_are_squares(k):
    assert is_perfect_square(k * k)


@pytest.mark.parametrize(
    "p,q,m,expected",
    [(13, 3, 19, -1), (23, 4, 33, 1), (6, 3, 4, 0), (-1, 5, 3, -1), (0, 1, 0, 0)],
)
def test_cmp_ratio_vs_sqrt(p, q, m, expected):
    assert cmp_ratio_vs_sqrt(p, q, m) == expected


@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=1, max_value=10**4),
    st.integers(min_value=0, max_value=10**6),
)
def test_cmp_agrees_with_float_when_gap_is_clear(p, q, m):
    gap = p / q - math.sqrt(m)
    if abs(gap) > 1e-6:
        assert cmp_ratio_vs_sqrt(p, q, m) == (1 if gap > 0 else -1)


def test_interval_examples():
    # (sqrt(324), sqrt(361)) is the open interval (18, 19): no integer
    assert integer_in_open_sqrt_interval(324, 1, 361, 1) is None
    # (sqrt(234), sqrt(13*361/18)) contains 16
    assert integer_in_open_sqrt_interval(234, 1, 13 * 361, 18) == 16
    assert integer_in_open_sqrt_interval(0, 1, 2, 1) == 1


def test_interval_result_agrees_with_enumeration():
    for a_num, a_den, b_num, b_den in [(234, 1, 13 * 361, 18), (5, 2, 11, 1), (7, 3, 8, 3), (49, 1, 50, 1)]:
        hits = [
            k
            for k in range(0, 100)
            if k * k * a_den > a_num and k * k * b_den < b_num
        ]
        expected = hits[0] if hits else None
        assert integer_in_open_sqrt_interval(a_num, a_den, b_num, b_den) == expected


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=100))
def test_floor_ceil_mult_sqrt(m, d):
    lo = floor_mult_sqrt(d, m)
    hi = ceil_mult_sqrt(d, m)
    assert lo * lo <= d * d * m
    assert hi * hi >= d * d * m
    assert hi - lo <= 1


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**3))
def test_ceil_sqrt_ratio_is_least(num, den):
    d = ceil_sqrt_ratio(num, den)
    assert d * d * den >= num
    assert (d - 1) * (d - 1) * den < num


# rational arithmetic invariants (Fraction is the value type everywhere)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(rationals)
def test_normalization_idempotent(a):
    again = Fraction(a.numerator, a.denominator)
    assert again.numerator == a.numerator and again.denominator == a.denominator
    assert again.denominator > 0
    assert math.gcd(abs(again.numerator), again.denominator) == 1


@pytest.mark.parametrize(
    "value,digits,expected",
    [
        (Fraction(4, 23), 6, "0.173913"),
        (Fraction(1, 2), 6, "0.500000"),
        (Fraction(876, 10), 1, "87.6"),
        (Fraction(25, 1000), 1, "0.0"),   # 0.025 -> half-even to 0.0... at 1 digit: 0.0
        (Fraction(35, 1000), 2, "0.04"),  # 0.035 -> half-even up to 0.04
        (Fraction(45, 1000), 2, "0.04"),  # 0.045 -> half-even down to 0.04
        (Fraction(-1, 3), 3, "-0.333"),
        (Fraction(5), 0, "5"),
    ],
)
def test_format_decimal_half_even(value, digits, expected):
    assert format_decimal(value, digits) == expected


def test_format_percent():
    assert format_percent(Fraction(12, 19)) == "63.2%"


@given(rationals)
def test_rational_string_round_trip(a):
    assert parse_rational(format_rational(a)) == a


@pytest.mark.parametrize("num,den", [(2, 1), (19, 1), (10, 3), (33, 1), (7, 4)])
def test_least_rational_above_sqrt(num, den):
    got = least_rational_above_sqrt(num, den, max_den=50)
    assert got.numerator**2 * den > got.denominator**2 * num
    # nothing smaller with a denominator up to the cap sits above the root
    for q in range(1, 51):
        p = isqrt(num * q * q // den) + 1
        while p * p * den <= q * q * num:
            p += 1
        assert Fraction(p, q) >= got
