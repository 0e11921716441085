"""Exact integer and rational arithmetic helpers.

All decision paths in the package compare ratios against square roots by
clearing denominators and comparing integer squares; nothing is ever
decided in floating point. Rational values are plain `fractions.Fraction`
(always normalized, denominator positive). Decimal strings are
display-only, rounded half-even at a configurable digit count.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


def isqrt(x: int) -> int:
    """Floor square root: the unique k >= 0 with k*k <= x < (k+1)*(k+1)."""
    if x < 0:
        raise ValueError(f"isqrt requires a nonnegative integer, got {x}")
    return math.isqrt(x)


def isqrt_ceil(x: int) -> int:
    """Ceiling square root: the least k >= 0 with k*k >= x."""
    if x < 0:
        raise ValueError(f"isqrt_ceil requires a nonnegative integer, got {x}")
    if x == 0:
        return 0
    return math.isqrt(x - 1) + 1


def is_perfect_square(x: int) -> bool:
    """True iff x is the square of an integer (negatives never are)."""
    if x < 0:
        return False
    r = math.isqrt(x)
    return r * r == x


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for positive b."""
    if b <= 0:
        raise ValueError(f"ceil_div requires a positive divisor, got {b}")
    return -(-a // b)


def ceil_sqrt_ratio(num: int, den: int) -> int:
    """ceil(sqrt(num/den)) for num >= 0, den > 0.

    Equals the least d with d*d*den >= num; computed as the ceiling
    square root of ceil(num/den), which agrees exactly (an integer k
    with k*k*den >= num and k*k < ceil(num/den) would force k*k*den < num).
    """
    return isqrt_ceil(ceil_div(num, den))


def floor_mult_sqrt(d: int, m: int) -> int:
    """floor(d * sqrt(m)) for d >= 0, m >= 0."""
    return isqrt(d * d * m)


def ceil_mult_sqrt(d: int, m: int) -> int:
    """ceil(d * sqrt(m)) for d >= 0, m >= 0."""
    t = d * d * m
    r = isqrt(t)
    return r if r * r == t else r + 1


def cmp_ratio_vs_sqrt(p: int, q: int, m: int) -> int:
    """Sign of p/q - sqrt(m), exactly. Requires q > 0 and m >= 0."""
    if q <= 0:
        raise ValueError(f"cmp_ratio_vs_sqrt requires q > 0, got {q}")
    if m < 0:
        raise ValueError(f"cmp_ratio_vs_sqrt requires m >= 0, got {m}")
    if p < 0:
        # sqrt(m) >= 0 > p/q unless both are zero
        return 0 if (p == 0 and m == 0) else -1
    lhs = p * p
    rhs = q * q * m
    return (lhs > rhs) - (lhs < rhs)


def integer_in_open_sqrt_interval(
    a_num: int, a_den: int, b_num: int, b_den: int
) -> int | None:
    """Least integer k with sqrt(a_num/a_den) < k < sqrt(b_num/b_den), or None.

    Radicands must be nonnegative with positive denominators; both endpoint
    comparisons are strict and performed by squaring: k*k*a_den > a_num and
    k*k*b_den < b_num.
    """
    if a_den <= 0 or b_den <= 0:
        raise ValueError("denominators must be positive")
    if a_num < 0 or b_num < 0:
        raise ValueError("radicands must be nonnegative")
    k = isqrt(a_num // a_den) + 1  # least k with k*k*a_den > a_num
    if k * k * b_den < b_num:
        return k
    return None


def least_rational_above_sqrt(num: int, den: int, max_den: int = 10**6) -> Fraction:
    """Smallest rational with denominator <= max_den strictly above sqrt(num/den).

    Stern-Brocot walk with exact square comparisons; at every step any
    fraction strictly between the bracketing pair has a denominator at
    least the sum of theirs, so the returned upper bracket is minimal in
    value among denominators up to the cap.
    """
    if num < 0 or den <= 0:
        raise ValueError("requires num >= 0 and den > 0")
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    lo_n, lo_d = isqrt(num // den), 1          # lo <= sqrt(num/den)
    hi_n, hi_d = lo_n + 1, 1                   # hi > sqrt(num/den)
    while True:
        med_n, med_d = lo_n + hi_n, lo_d + hi_d
        if med_d > max_den:
            return Fraction(hi_n, hi_d)
        # med > sqrt(num/den) iff med^2 > num/den
        if med_n * med_n * den > med_d * med_d * num:
            hi_n, hi_d = med_n, med_d
        else:
            lo_n, lo_d = med_n, med_d


def format_rational(value: Fraction | int) -> str:
    """Exact "p/q" (or "p" for integers) rendering."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", integer, or decimal strings to an exact Fraction."""
    return Fraction(text.strip())


def format_decimal(value: Fraction | int, digits: int = 6) -> str:
    """Round-half-even decimal rendering at `digits` places (display only)."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    f = Fraction(value)
    sign = "-" if f < 0 else ""
    f = abs(f)
    scale = 10**digits
    quo, rem = divmod(f.numerator * scale, f.denominator)
    double = 2 * rem
    if double > f.denominator or (double == f.denominator and quo % 2 == 1):
        quo += 1
    if digits == 0:
        return f"{sign}{quo}"
    whole, frac = divmod(quo, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_percent(fraction: Fraction, digits: int = 1) -> str:
    """Percentage rendering of a ratio, e.g. Fraction(12, 19) -> "63.2%"."""
    return format_decimal(fraction * 100, digits) + "%"
