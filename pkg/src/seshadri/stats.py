"""Counting scans for the sharpness inequality and its interval mechanism.

The inequality tested everywhere here ("star") is

    eps_{n,l} > sqrt(l/n) * sqrt(1 - 1/n)

decided exactly by cross-multiplication. It is driven by two families of
open real intervals whose integer members force it:

    I_l = (sqrt(nl) sqrt(1-1/n), sqrt(nl)/sqrt(1-1/n))
    J_l = ((n+2) sqrt(nl)/(n+1) - 1, n sqrt(nl)/(n+1))

Membership of an integer in I_l or J_l is again decided by clearing the
radicals. The relaxed inequality with 1 - 1/(a*n) under the inner root
("double star") fails for boundedly many n per square window
[s^2 l, (s+1)^2 l); doublestar_failure_count checks the exact count
against that window bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .bounds import epsilon_basic
from .errors import PreconditionError
from .exactmath import isqrt, isqrt_ceil


@lru_cache(maxsize=None)
def _bound(n: int, l: int):
    # scans revisit (n, l) across statistics; bound records are tiny to cache
    return epsilon_basic(n, l)


def _eps(n: int, l: int) -> Fraction:
    return _bound(n, l).value


@dataclass(frozen=True)
class ScanReport:
    n: int
    total_l: int
    holds_count: int
    percentage: Fraction
    detail: tuple[tuple[int, Fraction, bool], ...] | None = None

    def __post_init__(self):
        if not 0 <= self.holds_count <= self.total_l:
            raise ValueError("holds_count out of range")
        if self.percentage != Fraction(self.holds_count, self.total_l):
            raise ValueError("percentage must equal holds_count/total_l")


def star_holds(n: int, l: int) -> bool:
    """Exact verdict of eps_{n,l} > sqrt(l/n)*sqrt(1 - 1/n), by cross-multiplication.

    Square-case pairs (n*l a perfect square, l <= n) count as not holding:
    there the certified bound is only a supremum over open point sets, and
    the reference percentage tables follow exactly that convention.
    """
    if n < 2 or l < 1:
        raise PreconditionError(f"requires n >= 2 and l >= 1, got n={n}, l={l}")
    bound = _bound(n, l)
    if bound.square_case:
        return False
    p, q = bound.value.numerator, bound.value.denominator
    return p * p * n * n > q * q * l * (n - 1)


def star_fraction(n: int, detail: bool = False) -> ScanReport:
    """Fraction of l in 1..n where the sharpness inequality holds."""
    if n < 2:
        raise PreconditionError(f"requires n >= 2, got {n}")
    rows = []
    holds = 0
    for l in range(1, n + 1):
        verdict = star_holds(n, l)
        holds += verdict
        if detail:
            rows.append((l, _eps(n, l), verdict))
    return ScanReport(n, n, holds, Fraction(holds, n), tuple(rows) if detail else None)


def half_range_check(n: int) -> tuple[int, int, bool]:
    """(count, range size, pass) for l from ceil((n-1)/2) to n-1.

    Passes when the inequality holds for at least half of that range.
    """
    if n <= 2:
        raise PreconditionError(f"requires n > 2, got {n}")
    lo = -(-(n - 1) // 2)
    count = sum(star_holds(n, l) for l in range(lo, n))
    size = (n - 1) - lo + 1
    return count, size, 2 * count >= size


def interval_I_contains(n: int, l: int) -> bool:
    """Does the open interval I_l contain an integer?

    Cleared form: some k with k^2 > l(n-1) and k^2 (n-1) < n^2 l; only the
    least k above the left endpoint can qualify.
    """
    if n < 2 or l < 1:
        raise PreconditionError(f"requires n >= 2 and l >= 1, got n={n}, l={l}")
    k = isqrt(l * (n - 1)) + 1
    return k * k * (n - 1) < n * n * l


def interval_J_contains(n: int, l: int) -> bool:
    """Does the open interval J_l contain an integer?

    Cleared form: some k with ((k+1)(n+1))^2 > (n+2)^2 n l and
    (k(n+1))^2 < n^3 l.
    """
    if n < 2 or l < 1:
        raise PreconditionError(f"requires n >= 2 and l >= 1, got n={n}, l={l}")
    # least k with (k+1)(n+1) > (n+2) sqrt(nl)
    k = isqrt((n + 2) * (n + 2) * n * l // ((n + 1) * (n + 1)))
    while (k + 1) * (k + 1) * (n + 1) * (n + 1) <= (n + 2) * (n + 2) * n * l:
        k += 1
    return k * (n + 1) * k * (n + 1) < n * n * n * l


def dirichlet_witness(n: int, l: int) -> tuple[int, int]:
    """Least (d, r) (lexicographic in d, then r) with |r/sqrt(nl) - d| <= 1/(n+1).

    Requires 0 < r < n+1; existence is the pigeonhole approximation
    theorem. The condition is decided exactly by squaring both sides of
    (d(n+1)-1) sqrt(nl) <= r(n+1) <= (d(n+1)+1) sqrt(nl). Returns (r, d).
    """
    if n < 1 or l < 1:
        raise PreconditionError(f"requires n >= 1 and l >= 1, got n={n}, l={l}")
    nl = n * l
    root = isqrt(nl)
    if root * root == nl:
        raise PreconditionError(
            f"n*l = {nl} is a perfect square; the trivial witness (d, r) = (1, {root}) is rejected"
        )
    np1 = n + 1
    half_width = isqrt(nl) // np1 + 2  # |r - d*sqrt(nl)| <= sqrt(nl)/(n+1)
    d = 0
    while True:
        d += 1
        center = isqrt(d * d * nl)
        for r in range(max(1, center - half_width), min(n, center + half_width) + 1):
            lhs = d * np1 - 1
            rhs = d * np1 + 1
            if lhs * lhs * nl <= r * r * np1 * np1 <= rhs * rhs * nl:
                return r, d


def doublestar_failure_count(l: int, s: int, a: int) -> tuple[int, int, bool]:
    """(failures, window bound, pass) over n in [s^2 l, (s+1)^2 l).

    Counts n where eps_{n,l} > sqrt(l/n)*sqrt(1 - 1/(a*n)) fails, checked
    by cross-multiplication; the bound is (2a^2-a+8)l+3 for a > 2, 14l+3
    for a = 2, and 4l+2 for a = 1.
    """
    if s <= 2 or a < 1 or l < 1:
        raise PreconditionError(f"requires s > 2, a >= 1, l >= 1, got s={s}, a={a}, l={l}")
    # Unlike star_holds, the square case enters through its exact rational
    # value here (it never counts as a failure); that keeps the window
    # total well defined.
    failures = 0
    for n in range(s * s * l, (s + 1) * (s + 1) * l):
        eps = _eps(n, l)
        p, q = eps.numerator, eps.denominator
        if not p * p * a * n * n > q * q * l * (a * n - 1):
            failures += 1
    if a > 2:
        bound = (2 * a * a - a + 8) * l + 3
    elif a == 2:
        bound = 14 * l + 3
    else:
        bound = 4 * l + 2
    return failures, bound, failures <= bound


def interval_hit_lower_bound(n: int) -> int:
    """(n-1) - ceil(sqrt(n(n-1)/2)) - 1, the guaranteed count of l in the
    half range whose interval I_l contains an integer (valid for n >= 45)."""
    return (n - 1) - isqrt_ceil(n * (n - 1) // 2) - 1


def scan_rows(n: int, l_range: tuple[int, int] | None = None) -> Iterator[dict]:
    """Per-l rows with the exact bound and all three interval statistics.

    Keys match the CSV columns: n, l, epsilon_num, epsilon_den, star,
    in_I, in_J.
    """
    lo, hi = l_range if l_range is not None else (1, n)
    if not 1 <= lo <= hi:
        raise PreconditionError(f"bad l range [{lo}, {hi}]")
    for l in range(lo, hi + 1):
        eps = _eps(n, l)
        yield {
            "n": n,
            "l": l,
            "epsilon_num": eps.numerator,
            "epsilon_den": eps.denominator,
            "star": star_holds(n, l),
            "in_I": interval_I_contains(n, l),
            "in_J": interval_J_contains(n, l),
        }
