"""Certified lower bounds for multipoint Seshadri constants.

For a surface polarized by a very ample class with self-intersection l,
blown up at n general points, the bound ε_{n,l} is the maximum of a
finite family of ratios indexed by pairs (r, d):

    r/(n*d)   admissible when r/d <= sqrt(n*l)   ("S1" members)
    d*l/r     admissible when r/d >= sqrt(n*l)   ("S2" members)

with 1 <= r <= n. The refined bound ε'_{n,l} lets the numerator slide up
to r + m - 1 with 1 <= m <= f(d) = max(1, d-1), i.e. effectively allows
r as large as n + f(d) - 1. Either maximum is attained at, for each d,
the floor/ceiling of d*sqrt(n*l), so the search is O(sqrt(n/l)) exact
integer-square-root evaluations.

When n*l is a perfect square and l <= n, the maximum sqrt(l/n) (a
rational number here) is only approached on open sets of point
configurations; such results carry a square-case marker and no witness.

The quantity delta = r^2 - n*l*d^2 controls bound quality: |delta| = 1
pins the maximum exactly, which is why fundamental solutions of the
Pell-type equation r^2 - (n*l)*d^2 = ±1 appear throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import PreconditionError
from .exactmath import (
    ceil_sqrt_ratio,
    is_perfect_square,
    isqrt,
)

SET_TAGS = ("S1", "S2", "S1'", "S2'")


def refinement_cap(d: int) -> int:
    """f(d) = max(1, d - 1): largest first-point multiplicity usable at degree multiple d."""
    return max(1, d - 1)


@dataclass(frozen=True)
class BoundWitness:
    """One maximizing member of the bound family.

    `r` and `m` encode the numerator r + m - 1; unprimed tags always have
    m = 1, primed tags allow 1 <= m <= f(d).
    """

    r: int
    d: int
    m: int
    set_tag: str
    value: Fraction

    def __post_init__(self):
        if self.set_tag not in SET_TAGS:
            raise ValueError(f"unknown set tag {self.set_tag!r}")
        if self.r < 1 or self.d < 1 or self.m < 1:
            raise ValueError("witness entries must be positive")
        if self.set_tag in ("S1", "S2") and self.m != 1:
            raise ValueError("unprimed witnesses must have m = 1")
        if self.m > refinement_cap(self.d):
            raise ValueError(f"m = {self.m} exceeds f({self.d}) = {refinement_cap(self.d)}")


@dataclass(frozen=True)
class SeshadriBound:
    """Result of a bound computation for (n, l).

    square_case means n*l is a perfect square with l <= n: the value
    sqrt(l/n) is a supremum over open sets of points rather than an
    attained family member, so no witness is carried.
    """

    n: int
    l: int
    value: Fraction
    witness: BoundWitness | None
    square_case: bool
    refined: bool

    def __post_init__(self):
        num, den = self.value.numerator, self.value.denominator
        if num * num * self.n > den * den * self.l:
            raise ValueError(f"bound {self.value} exceeds sqrt(l/n) for (n, l) = ({self.n}, {self.l})")
        if self.square_case:
            if self.witness is not None:
                raise ValueError("square case carries no witness")
            if num * num * self.n != den * den * self.l:
                raise ValueError("square case value must equal sqrt(l/n)")
        else:
            w = self.witness
            if w is None:
                raise ValueError("non-square results carry a witness")
            rr = w.r + w.m - 1
            expected = (
                Fraction(rr, self.n * w.d)
                if w.set_tag in ("S1", "S1'")
                else Fraction(w.d * self.l, rr)
            )
            if w.value != self.value or expected != self.value:
                raise ValueError("witness does not reproduce the bound value")


@dataclass(frozen=True)
class PellSolution:
    """Solution of r^2 - coeff * d^2 = rhs with rhs in {+1, -1}."""

    coeff: int
    r: int
    d: int
    rhs: int

    def __post_init__(self):
        if self.r * self.r - self.coeff * self.d * self.d != self.rhs:
            raise ValueError("not a Pell solution")
        if self.rhs not in (1, -1):
            raise ValueError("rhs must be +1 or -1")


def _validate_nl(n: int, l: int) -> None:
    if n < 1 or l < 1:
        raise PreconditionError(f"n and l must be positive, got n={n}, l={l}")


def _family_members(n: int, l: int, refined: bool) -> Iterator[tuple[int, int, str, int, int]]:
    """Yield (num, den, tag, r_prime, d) for every per-d maximal family member.

    For each d the best S1-type member uses r' = min(floor(d*sqrt(nl)), cap)
    and the best S2-type member uses r' = ceil(d*sqrt(nl)) when it fits the
    cap, where cap = n (basic) or n + f(d) - 1 (refined). Iteration stops
    once d >= ceil(sqrt(n/l)) and even the ceiling overshoots cap + 1: from
    then on only capped S1 values (cap/(n*d)) remain, and those are
    nonincreasing in d (difference (n-2)/(n d (d+1)) for the refined cap,
    1/d - 1/(d+1) for the basic one; the n = 1 supremum is 1, already
    yielded at d = 1).
    """
    nl = n * l
    tag1, tag2 = ("S1'", "S2'") if refined else ("S1", "S2")
    d_star = ceil_sqrt_ratio(n, l)
    d = 0
    while True:
        d += 1
        cap = n + (refinement_cap(d) - 1 if refined else 0)
        t = d * d * nl
        r_floor = isqrt(t)
        r_ceil = r_floor if r_floor * r_floor == t else r_floor + 1
        r1 = min(r_floor, cap)
        if r1 >= 1:
            yield r1, n * d, tag1, r1, d
        if r_ceil <= cap:
            yield d * l, r_ceil, tag2, r_ceil, d
        if d >= d_star and r_ceil > cap + 1:
            return


def _tag_rank(tag: str) -> int:
    return 0 if tag in ("S1", "S1'") else 1


def _epsilon(n: int, l: int, refined: bool) -> SeshadriBound:
    _validate_nl(n, l)
    nl = n * l
    if l <= n and is_perfect_square(nl):
        return SeshadriBound(n, l, Fraction(isqrt(nl), n), None, True, refined)
    best: Fraction | None = None
    best_key: tuple[int, int, int] | None = None
    best_witness: BoundWitness | None = None
    for num, den, tag, r_prime, d in _family_members(n, l, refined):
        value = Fraction(num, den)
        r = min(r_prime, n)
        m = r_prime - r + 1
        key = (d, r, _tag_rank(tag))
        if best is None or value > best or (value == best and key < best_key):
            best = value
            best_key = key
            best_witness = BoundWitness(r=r, d=d, m=m, set_tag=tag, value=value)
    assert best is not None and best_witness is not None
    return SeshadriBound(n, l, best, best_witness, False, refined)


def epsilon_basic(n: int, l: int) -> SeshadriBound:
    """Exact maximum of the basic family, with witness and square-case handling.

    For l >= n (and n*l not a square) the value is 1, attained at
    (r, d) = (n, 1).
    """
    return _epsilon(n, l, refined=False)


def epsilon_refined(n: int, l: int) -> SeshadriBound:
    """Exact maximum of the refined family; never below epsilon_basic."""
    return _epsilon(n, l, refined=True)


def epsilon_oracle(n: int, l: int) -> Fraction:
    """Brute-force maximum over all admissible (r, d) pairs. Test oracle only.

    Enumerates every r in 1..n for every d in 1..ceil(sqrt(n/l)), testing
    membership by exact cross-multiplied comparison; no square-root
    shortcuts. Restricted to the generic case l < n with n*l non-square.
    """
    _validate_nl(n, l)
    if l >= n:
        raise PreconditionError(f"oracle requires l < n, got l={l}, n={n}")
    nl = n * l
    if is_perfect_square(nl):
        raise PreconditionError(f"oracle requires n*l non-square, got n*l={nl}")
    best_p, best_q = 0, 1
    d_star = ceil_sqrt_ratio(n, l)
    for d in range(1, d_star + 1):
        t = d * d * nl
        nd = n * d
        dl = d * l
        for r in range(1, n + 1):
            rr = r * r
            if rr <= t and r * best_q > best_p * nd:
                best_p, best_q = r, nd
            if rr >= t and dl * best_q > best_p * r:
                best_p, best_q = dl, r
    return Fraction(best_p, best_q)


def pell_defect(r: int, d: int, n: int, l: int) -> int:
    """delta = r^2 - n*l*d^2."""
    return r * r - n * l * d * d


def pell_fundamental(coeff: int) -> PellSolution:
    """Minimal positive (r, d) with r^2 - coeff*d^2 = ±1.

    Computed from the continued-fraction expansion of sqrt(coeff); the
    first convergent hitting defect ±1 is the fundamental solution.
    """
    if coeff < 2:
        raise PreconditionError(f"coefficient must be >= 2, got {coeff}")
    if is_perfect_square(coeff):
        raise PreconditionError(f"coefficient must not be a perfect square, got {coeff}")
    a0 = isqrt(coeff)
    m, den, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        defect = h * h - coeff * k * k
        if defect in (1, -1):
            return PellSolution(coeff, h, k, defect)
        m = den * a - m
        den = (coeff - m * m) // den
        a = (a0 + m) // den
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k


def pell_plus_one(coeff: int) -> PellSolution:
    """Fundamental solution of r^2 - coeff*d^2 = +1.

    Obtained by squaring the ±1 fundamental solution when that one has
    rhs = -1.
    """
    base = pell_fundamental(coeff)
    if base.rhs == 1:
        return base
    return PellSolution(
        coeff, base.r * base.r + coeff * base.d * base.d, 2 * base.r * base.d, 1
    )


def coarse_lower_bounds(n: int, l: int) -> tuple[Fraction, Fraction | None, Fraction | None]:
    """Always-available closed-form lower bounds from rounding sqrt(n/l).

    With d* = ceil(sqrt(n/l)), d_* = floor(sqrt(n/l)), r* = ceil(d_*
    sqrt(nl)) and r_* = floor(d_* sqrt(nl)), returns (1/d*, r_*/(n d_*),
    d_* l / r*). The last two need l <= n (else None): they use d_* >= 1.
    """
    _validate_nl(n, l)
    d_up = ceil_sqrt_ratio(n, l)
    first = Fraction(1, d_up)
    if l > n:
        return first, None, None
    d_down = isqrt(n // l)
    t = d_down * d_down * n * l
    r_down = isqrt(t)
    r_up = r_down if r_down * r_down == t else r_down + 1
    return first, Fraction(r_down, n * d_down), Fraction(d_down * l, r_up)


def plane_lower_bounds(n: int) -> list[tuple[str, Fraction]]:
    """Case bounds for l = 1 from the split n = s^2 + 2t or n = s^2 + 2t + 1.

    s = floor(sqrt(n)), t = floor((n - s^2)/2), 0 <= t <= s. Side
    conditions of cases (c) and (d) are evaluated in cleared integer form:
    t < (sqrt(2)-1)(s-1) becomes (t+s-1)^2 < 2(s-1)^2, and
    t < sqrt(1.25 s^2 - s) - s/2 becomes (2t+s)^2 < 5 s^2 - 4 s.
    """
    if n < 2:
        raise PreconditionError(f"plane bounds require n >= 2, got {n}")
    s = isqrt(n)
    t = (n - s * s) // 2
    out: list[tuple[str, Fraction]] = []
    if n == s * s + 2 * t:
        out.append(("a", Fraction(s, s * s + t)))
        return out
    # n = s^2 + 2t + 1 with t < s automatically
    out.append(("b", Fraction(s * s + t, s * n)))
    if s > 1:
        gap = (t + s - 1) ** 2 - 2 * (s - 1) ** 2
        if 0 < t and gap < 0:
            out.append(("c", Fraction(s * (s - 1) + t, (s - 1) * n)))
        if gap > 0 and (2 * t + s) ** 2 < 5 * s * s - 4 * s:
            out.append(("d", Fraction(s - 1, s * (s - 1) + t)))
    return out


@dataclass(frozen=True)
class SpecialBound:
    """A closed-form bound for l = 1 near a square, with unverified caveats.

    validity_flags carry geometric hypotheses (characteristic conditions)
    that the arithmetic cannot check; they are surfaced in all reports.
    """

    tag: str
    value: Fraction
    validity_flags: tuple[str, ...] = ()


def _smallest_odd_prime_factor(s: int) -> int | None:
    for p in range(3, s + 1, 2):
        if s % p == 0:
            return p
    return None


def _adhoc_family_bounds(n: int) -> list[SpecialBound]:
    # Degree-2s pencil construction at n = s^2 + j, j >= 1; needs an odd
    # prime factor of s and characteristic != 2 (carried as a flag).
    s = isqrt(n)
    j = n - s * s
    if j == 0 or s < 3 or _smallest_odd_prime_factor(s) is None:
        return []
    flags = ("requires field characteristic != 2",)
    out = [SpecialBound("adhoc_i_eq_j", Fraction(2 * s, 2 * s * s + j), flags)]
    # i = j - 1 flips the defect sign: 4 s^2 (i - j) + i^2 = (j-1)^2 - 4 s^2 < 0
    out.append(
        SpecialBound("adhoc_i_eq_j_minus_1", Fraction(2 * s * s + j - 1, 2 * s * n), flags)
    )
    return out


def special_square_bounds(n: int) -> list[SpecialBound]:
    """Bounds for l = 1 when one of n+2, n+1, n-1 is a perfect square.

    Empty when none applies. The adhoc family entries (when present) are
    certified only up to the flags they carry.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    out: list[SpecialBound] = []
    if n >= 7 and is_perfect_square(n + 2):
        s = isqrt(n + 2) - 1  # n = s^2 + 2s - 1, s >= 2
        out.append(SpecialBound("n_plus_2_square", Fraction(s + 1, s * s + 2 * s)))
    if n >= 8 and is_perfect_square(n + 1):
        s = isqrt(n + 1) - 1  # n = s^2 + 2s, s >= 2
        out.append(
            SpecialBound("n_plus_1_square", Fraction(s * s + 3 * s + 1, s * (s + 2) ** 2))
        )
    if n >= 10 and is_perfect_square(n - 1):
        s = isqrt(n - 1)  # n = s^2 + 1, s >= 3
        out.append(SpecialBound("n_minus_1_square", Fraction(s + 1, s * s + s + 1)))
    if out:  # the adhoc family is only reported when some square-adjacent case applies
        out.extend(_adhoc_family_bounds(n))
    return out


def scaled_pell_bound(n: int, l: int, r: int, d: int, a: int, b: int) -> Fraction:
    """Certified lower bound b*l/r for the configuration scaled to a^2*n points.

    Requires d = a*b, r^2 - n*l*d^2 = 1 and a^2*n > b^2*l. The scaled
    uniform-divisor preconditions r^2 > b^2*(a^2*n)*l and r <= a^2*n are
    re-derived internally.
    """
    _validate_nl(n, l)
    if a < 1 or b < 1 or r < 1 or d < 1:
        raise PreconditionError("r, d, a, b must be positive")
    if d != a * b:
        raise PreconditionError(f"d = {d} is not a*b = {a * b}")
    if r * r - n * l * d * d != 1:
        raise PreconditionError(f"r^2 - n*l*d^2 = {r * r - n * l * d * d}, must be 1")
    if a * a * n <= b * b * l:
        raise PreconditionError(f"a^2*n = {a * a * n} must exceed b^2*l = {b * b * l}")
    n_scaled = a * a * n
    assert r * r > b * b * n_scaled * l  # r^2 = 1 + (ab)^2 n l
    assert r <= n_scaled  # r^2 = 1 + a^2 n b^2 l <= a^4 n^2
    return Fraction(b * l, r)


@dataclass(frozen=True)
class ReferenceComparison:
    """Exact comparison of ε_n against reference bounds for l = 1.

    vs_sqrt_np1 is the sign of ε_n - 1/sqrt(n+1), computed by
    cross-multiplication; pell_bound is the rational d/r (rhs = +1) or
    r/(n d) (rhs = -1) built from the fundamental Pell solution, which
    equals ε_n exactly when its r does not exceed n (pell_applies).
    """

    n: int
    epsilon: Fraction
    epsilon_refined: Fraction
    vs_sqrt_np1: int
    near_square: bool
    pell: PellSolution | None
    pell_bound: Fraction | None
    pell_applies: bool


def compare_references(n: int) -> ReferenceComparison:
    """Build one exact comparison row for l = 1."""
    if n < 2:
        raise PreconditionError(f"comparisons require n >= 2, got {n}")
    eps = epsilon_basic(n, 1).value
    eps_ref = epsilon_refined(n, 1).value
    lhs = eps.numerator * eps.numerator * (n + 1)
    rhs = eps.denominator * eps.denominator
    vs = (lhs > rhs) - (lhs < rhs)
    near = is_perfect_square(n - 1) or is_perfect_square(n + 1)
    pell = pell_bound = None
    applies = False
    if not is_perfect_square(n):
        pell = pell_fundamental(n)
        pell_bound = (
            Fraction(pell.d, pell.r) if pell.rhs == 1 else Fraction(pell.r, n * pell.d)
        )
        applies = pell.r <= n
    return ReferenceComparison(n, eps, eps_ref, vs, near, pell, pell_bound, applies)
