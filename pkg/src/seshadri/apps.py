"""Degree thresholds for uniform fat-point systems tL' - m(E_1+...+E_n) on the plane.

Everything is driven by the certified bound eps_n = eps_{n,1}:

    effectivity    t >= m*n*eps_n whenever the system is nonempty
    ampleness      degrees strictly above m/eps_n give ample classes
    regularity     t >= m*d* + ceil((d*-3)/2), d* = ceil(sqrt(n)); and,
                   for non-square n, t >= ceil((m+1)/eps_n) - 3
    freeness / very ampleness   regular from N onward => free from N+1,
                   very ample from N+2; for even square n > 9 with
                   m > (sqrt(n)-2)/4 the sharper m*sqrt(n)+(sqrt(n)-2)/2
                   and m*sqrt(n)+sqrt(n)/2 apply instead

Regularity and the derived thresholds are only provided for n > 9 (the
small range has a complete classical answer and different behavior). The
ampleness threshold keeps unit point coefficients on the divisor; the m
parameter scales the degree bound, matching the uniform system context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import epsilon_basic
from .errors import PreconditionError
from .exactmath import ceil_div, is_perfect_square, isqrt, isqrt_ceil


def _validate(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise PreconditionError(f"n and m must be positive, got n={n}, m={m}")


def effectivity_lower_bound(n: int, m: int) -> Fraction:
    """m*n*eps_n; any degree strictly below is certified non-effective."""
    _validate(n, m)
    return m * n * epsilon_basic(n, 1).value


def ampleness_lower_bound(n: int, m: int) -> Fraction:
    """m/eps_n; rational degrees strictly above give ample classes."""
    _validate(n, m)
    return m / epsilon_basic(n, 1).value


def regularity_bounds(n: int, m: int) -> tuple[int, int | None, bool]:
    """(a_threshold, b_threshold or None, sharp).

    a_threshold = m*d* + ceil((d*-3)/2); b_threshold (non-square n only)
    is the least integer t with t >= (m+1)/eps_n - 3. sharp marks square n
    with m > (d*-2)/4, where a_threshold is also necessary.
    """
    _validate(n, m)
    if n <= 9:
        raise PreconditionError(f"regularity bounds require n > 9, got n={n}")
    d_star = isqrt_ceil(n)
    a_threshold = m * d_star + (d_star - 2) // 2  # ceil((d*-3)/2), d* >= 4
    square = is_perfect_square(n)
    sharp = square and 4 * m > d_star - 2
    b_threshold = None
    if not square:
        eps = epsilon_basic(n, 1).value
        b_threshold = ceil_div((m + 1) * eps.denominator, eps.numerator) - 3
    return a_threshold, b_threshold, sharp


def freeness_va_bounds(n: int, m: int) -> tuple[int, int]:
    """(freeness threshold, very-ampleness threshold) for n > 9.

    Default offsets N+1 and N+2 from the best regularity threshold N; for
    even square n with m > (sqrt(n)-2)/4 the sharper even-square values
    replace them.
    """
    a_threshold, b_threshold, _ = regularity_bounds(n, m)
    candidates = [a_threshold] + ([b_threshold] if b_threshold is not None else [])
    best = min(candidates)
    free_lb, va_lb = best + 1, best + 2
    s = isqrt(n)
    if is_perfect_square(n) and s % 2 == 0 and 4 * m > s - 2:
        free_lb = m * s + (s - 2) // 2
        va_lb = m * s + s // 2
    return free_lb, va_lb


@dataclass(frozen=True)
class ThresholdReport:
    """All thresholds for one (n, m), with caveats in notes."""

    n: int
    m: int
    effectivity_lb: Fraction
    ampleness_lb: Fraction
    regularity_a: int | None
    regularity_b: int | None
    regularity_sharp: bool
    freeness_lb: int | None
    va_lb: int | None
    notes: tuple[str, ...]

    def __post_init__(self):
        if self.freeness_lb is not None and self.va_lb is not None:
            if self.freeness_lb > self.va_lb:
                raise ValueError("freeness threshold cannot exceed the very-ampleness one")


def threshold_report(n: int, m: int) -> ThresholdReport:
    """Assemble the full threshold table; regularity entries are None for n <= 9."""
    _validate(n, m)
    notes: list[str] = []
    bound = epsilon_basic(n, 1)
    if bound.square_case:
        notes.append(
            "effectivity bound uses the square-case value, a supremum over open point sets"
        )
    eff = m * n * bound.value
    amp = m / bound.value
    reg_a = reg_b = free_lb = va_lb = None
    sharp = False
    if n > 9:
        reg_a, reg_b, sharp = regularity_bounds(n, m)
        if sharp:
            notes.append("regularity threshold is sharp (square n with m > (d*-2)/4)")
        free_lb, va_lb = freeness_va_bounds(n, m)
        s = isqrt(n)
        if is_perfect_square(n) and s % 2 == 0 and 4 * m > s - 2:
            notes.append(
                "even-square freeness/very-ampleness override applied; inherits that "
                "construction's characteristic assumptions"
            )
    else:
        notes.append("regularity, freeness and very-ampleness thresholds require n > 9")
    return ThresholdReport(
        n=n,
        m=m,
        effectivity_lb=eff,
        ampleness_lb=amp,
        regularity_a=reg_a,
        regularity_b=reg_b,
        regularity_sharp=sharp,
        freeness_lb=free_lb,
        va_lb=va_lb,
        notes=tuple(notes),
    )
