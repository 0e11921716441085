"""Nef divisor certificates on blow-ups at n points.

A divisor class c0*L' - sum(e_i * E_i) on the blow-up of a surface
(polarization self-intersection l) is certified nef against curve data
(d, m_1 >= ... >= m_r >= 0) by five exact checks on a_0 = c0/d and
a_1..a_n = e:

    coeffs_ordered              a_1 >= a_2 >= ... >= a_n >= 0
    meets_curve                 a_0 d^2 l >= a_1 m_1 + ... + a_r m_r
    positive_self_intersection  a_0^2 d^2 l > a_1^2 + ... + a_n^2   (strict)
    prefix_dominance            (m_1+...+m_i) a_0 >= a_1+...+a_i, 1 <= i <= r
    total_dominance             (m_1+...+m_r) a_0 >= a_1+...+a_n

Constructors store the explicit coefficient instantiation that makes each
divisor family pass, so a failure localizes to a named check. Hypotheses
the arithmetic cannot see (irreducibility of the curve class,
characteristic restrictions) travel as validity_flags strings and are
surfaced in every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .exactmath import (
    format_rational,
    least_rational_above_sqrt,
    parse_rational,
)

CHECK_NAMES = (
    "coeffs_ordered",
    "meets_curve",
    "positive_self_intersection",
    "prefix_dominance",
    "total_dominance",
)


@dataclass(frozen=True)
class BlowupDivisorClass:
    """c0*L' - sum(e_i * E_i) on the blow-up at n points, l = (L')^2 pullback square."""

    n: int
    l: int
    c0: Fraction
    e: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.e) != self.n:
            raise ValueError(f"expected {self.n} exceptional coefficients, got {len(self.e)}")

    def self_pairing(self) -> Fraction:
        return self.c0 * self.c0 * self.l - sum(c * c for c in self.e)


@dataclass(frozen=True)
class CurveData:
    """Curve class d*L' - m_1 E_1 - ... - m_r E_r with nonincreasing multiplicities."""

    d: int
    mults: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("curve degree multiple must be >= 1")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities must be nonnegative")
        if any(self.mults[i] < self.mults[i + 1] for i in range(len(self.mults) - 1)):
            raise ValueError("multiplicities must be nonincreasing")


@dataclass(frozen=True)
class NefCertificate:
    """Per-check verdicts for one divisor against one curve datum."""

    divisor: BlowupDivisorClass
    curve: CurveData
    a0: Fraction
    checks: dict[str, bool]
    valid: bool
    provenance: str
    validity_flags: tuple[str, ...] = ()

    def failed_checks(self) -> tuple[str, ...]:
        return tuple(name for name in CHECK_NAMES if not self.checks[name])

    def uniform_bound(self) -> Fraction:
        """e_1/c0, the certified lower bound when all e_i are equal."""
        if not self.divisor.e or any(c != self.divisor.e[0] for c in self.divisor.e):
            raise ValueError("divisor is not uniform")
        return self.divisor.e[0] / self.divisor.c0

    def to_dict(self) -> dict:
        return {
            "n": self.divisor.n,
            "l": self.divisor.l,
            "c0": format_rational(self.divisor.c0),
            "e": [format_rational(c) for c in self.divisor.e],
            "curve": {"d": self.curve.d, "mults": list(self.curve.mults)},
            "a0": format_rational(self.a0),
            "checks": dict(self.checks),
            "valid": self.valid,
            "provenance": self.provenance,
            "flags": list(self.validity_flags),
        }


def certificate_from_dict(data: dict) -> NefCertificate:
    """Rebuild a certificate from its JSON form, re-running every check."""
    curve = CurveData(int(data["curve"]["d"]), tuple(int(m) for m in data["curve"]["mults"]))
    coeffs = tuple(parse_rational(str(c)) for c in data["e"])
    if "a0" in data:
        a0 = parse_rational(str(data["a0"]))
    else:
        a0 = parse_rational(str(data["c0"])) / curve.d
    return check_nef_conditions(
        a0,
        coeffs,
        curve,
        int(data["l"]),
        provenance=str(data.get("provenance", "parsed")),
        validity_flags=tuple(data.get("flags", ())),
    )


def pairing(d1: BlowupDivisorClass, d2: BlowupDivisorClass) -> Fraction:
    """Intersection pairing c0*c0'*l - sum(e_i * e_i')."""
    if d1.n != d2.n or d1.l != d2.l:
        raise ValueError(
            f"mismatched ambient data: ({d1.n}, {d1.l}) vs ({d2.n}, {d2.l})"
        )
    return d1.c0 * d2.c0 * d1.l - sum(a * b for a, b in zip(d1.e, d2.e))


def check_nef_conditions(
    a0: Fraction | int,
    coeffs,
    curve: CurveData,
    l: int,
    *,
    provenance: str = "manual",
    validity_flags: tuple[str, ...] = (),
) -> NefCertificate:
    """Evaluate the five nef conditions exactly; failures are verdicts, not errors."""
    if l < 1:
        raise PreconditionError(f"l must be >= 1, got {l}")
    a0 = Fraction(a0)
    coeffs = tuple(Fraction(c) for c in coeffs)
    n = len(coeffs)
    r = len(curve.mults)
    if r > n:
        raise PreconditionError(f"curve touches {r} points but only {n} are blown up")
    dsql = curve.d * curve.d * l

    ordered = all(coeffs[i] >= coeffs[i + 1] for i in range(n - 1))
    if n and coeffs[-1] < 0:
        ordered = False

    meets = a0 * dsql >= sum(c * m for c, m in zip(coeffs, curve.mults))
    positive = a0 * a0 * dsql > sum(c * c for c in coeffs)

    prefix = True
    mult_sum = 0
    coeff_sum = Fraction(0)
    for i in range(r):
        mult_sum += curve.mults[i]
        coeff_sum += coeffs[i]
        if mult_sum * a0 < coeff_sum:
            prefix = False
            break

    total = sum(curve.mults) * a0 >= sum(coeffs)

    checks = {
        "coeffs_ordered": ordered,
        "meets_curve": meets,
        "positive_self_intersection": positive,
        "prefix_dominance": prefix,
        "total_dominance": total,
    }
    divisor = BlowupDivisorClass(n=n, l=l, c0=a0 * curve.d, e=coeffs)
    return NefCertificate(
        divisor=divisor,
        curve=curve,
        a0=a0,
        checks=checks,
        valid=all(checks.values()),
        provenance=provenance,
        validity_flags=validity_flags,
    )


def suggest_degree(n: int, l: int, max_den: int = 10**6) -> Fraction:
    """Minimal rational strictly above sqrt(n/l) with denominator <= max_den.

    Convenience for the equal-defect constructors, which take the rational
    degree as input rather than choosing one.
    """
    return least_rational_above_sqrt(n, l, max_den)


def _validate_common(n: int, l: int, r: int, d: int) -> None:
    if n < 1 or l < 1:
        raise PreconditionError(f"n and l must be positive, got n={n}, l={l}")
    if d < 1:
        raise PreconditionError(f"d must be >= 1, got {d}")
    if not 1 <= r <= n:
        raise PreconditionError(f"r must satisfy 1 <= r <= n, got r={r}, n={n}")


def _equal_defect_degree(t, n: int, l: int) -> Fraction:
    if t is None:
        raise PreconditionError(
            f"equal-defect case needs a rational degree t > sqrt(n/l); "
            f"e.g. t = {format_rational(suggest_degree(n, l))}"
        )
    t = Fraction(t)
    if t.numerator * t.numerator * l <= t.denominator * t.denominator * n:
        raise PreconditionError(f"t = {t} does not exceed sqrt(n/l)")
    return t


def build_uniform(n: int, l: int, r: int, d: int, case: str, t=None) -> NefCertificate:
    """Uniform nef divisors from one pair (r, d) with simple points.

    case "a" (r^2 > n d^2 l):  r L' - d l (E_1+...+E_n),  a_0 = r/d, a_i = l d
    case "b" (r^2 < n d^2 l):  n d L' - r (E_1+...+E_n),  a_0 = n,   a_i = r
    case "c" (r^2 = n d^2 l):  t L' - (E_1+...+E_n) for rational t > sqrt(n/l)
    """
    _validate_common(n, l, r, d)
    defect = r * r - n * l * d * d
    curve = CurveData(d, (1,) * r)
    if case == "a":
        if defect <= 0:
            raise PreconditionError(f"case a requires r^2 > n*d^2*l, defect is {defect}")
        return check_nef_conditions(
            Fraction(r, d), (Fraction(l * d),) * n, curve, l, provenance="uniform-a"
        )
    if case == "b":
        if defect >= 0:
            raise PreconditionError(f"case b requires r^2 < n*d^2*l, defect is {defect}")
        return check_nef_conditions(
            Fraction(n), (Fraction(r),) * n, curve, l, provenance="uniform-b"
        )
    if case == "c":
        if defect != 0:
            raise PreconditionError(f"case c requires r^2 = n*d^2*l, defect is {defect}")
        t = _equal_defect_degree(t, n, l)
        return check_nef_conditions(
            t / d, (Fraction(1),) * n, curve, l, provenance="uniform-c"
        )
    raise PreconditionError(f"unknown case {case!r}, expected a, b or c")


def build_nonuniform(n: int, l: int, r: int, d: int, j: int | None = None, dprime=None) -> NefCertificate:
    """Nonuniform nef divisors supported on a leading block of points.

    With P = d^2 l:
      P > r:   d L' - (E_1+...+E_r)                                  (case a)
      P <= r:  d' L' - (E_1+...+E_P) for rational d' > d             (case b, j absent)
               d' L' - (E_1+...+E_j) - v (E_{j+1}+...+E_{floor(lam)}
                        + (lam - floor(lam)) E_{ceil(lam)})          (case b, 1 <= j < P)
    where v = (P-j)/(r-j), lam = min(r + (r-P)(r-j)/(P-j), n), and d' >= d
    is any rational with d' > d required whenever lam is an integer.
    """
    _validate_common(n, l, r, d)
    p = d * d * l
    curve = CurveData(d, (1,) * r)
    if p > r:
        if j is not None or dprime is not None:
            raise PreconditionError("j and d' only apply when d^2*l <= r")
        coeffs = (Fraction(1),) * r + (Fraction(0),) * (n - r)
        return check_nef_conditions(Fraction(1), coeffs, curve, l, provenance="nonuniform-a")
    if j is None:
        if dprime is None:
            raise PreconditionError(
                f"d^2*l <= r needs a rational degree d' > d; e.g. d' = {d} + 1/10"
            )
        dprime = Fraction(dprime)
        if dprime <= d:
            raise PreconditionError(f"d' = {dprime} must exceed d = {d}")
        coeffs = (Fraction(1),) * p + (Fraction(0),) * (n - p)
        return check_nef_conditions(dprime / d, coeffs, curve, l, provenance="nonuniform-b")
    if not 1 <= j < p:
        raise PreconditionError(f"j must satisfy 1 <= j < d^2*l = {p}, got {j}")
    v = Fraction(p - j, r - j)
    lam = min(Fraction(r) + Fraction((r - p) * (r - j), p - j), Fraction(n))
    lam_floor = lam.numerator // lam.denominator
    frac = lam - lam_floor
    dprime = Fraction(dprime) if dprime is not None else Fraction(d)
    if dprime < d:
        raise PreconditionError(f"d' = {dprime} must be >= d = {d}")
    if frac == 0 and dprime == d:
        raise PreconditionError(
            f"lam = {lam_floor} is an integer; a rational d' > d is required"
        )
    coeffs = [Fraction(1)] * j + [v] * (lam_floor - j)
    if frac > 0:
        coeffs.append(frac * v)
    coeffs.extend([Fraction(0)] * (n - len(coeffs)))
    return check_nef_conditions(dprime / d, tuple(coeffs), curve, l, provenance="nonuniform-b")


def build_refined(n: int, l: int, r: int, d: int, m: int, t=None) -> NefCertificate:
    """Uniform nef divisors with an m-fold first point, r' = r + m - 1.

    Branches on the sign of r'^2 - n d^2 l exactly as build_uniform; the
    curve datum is (d, (m, 1, ..., 1)) and m may not exceed f(d) = max(1, d-1).
    """
    _validate_common(n, l, r, d)
    if not 1 <= m <= max(1, d - 1):
        raise PreconditionError("m exceeds f(d)" if m > max(1, d - 1) else f"m must be >= 1, got {m}")
    r_prime = r + m - 1
    curve = CurveData(d, (m,) + (1,) * (r - 1))
    defect = r_prime * r_prime - n * l * d * d
    if defect > 0:
        return check_nef_conditions(
            Fraction(r_prime, d), (Fraction(l * d),) * n, curve, l, provenance="refined-a"
        )
    if defect < 0:
        return check_nef_conditions(
            Fraction(n), (Fraction(r_prime),) * n, curve, l, provenance="refined-b"
        )
    t = _equal_defect_degree(t, n, l)
    return check_nef_conditions(t / d, (Fraction(1),) * n, curve, l, provenance="refined-c")


def build_extended(n: int, d: int, rprime: int) -> NefCertificate:
    """Plane (l = 1) divisors with r' up to n + d - 1 via deeper singular points.

    For r' <= n + d - 2 this is the refined construction with r = min(n, r')
    and m = r' - r + 1. At the boundary r' = n + d - 1 the curve datum is
    (d, (d-2, 2, 2, 1, ..., 1)) of length n.
    """
    if n < 5:
        raise PreconditionError(f"requires n >= 5, got {n}")
    if d < 4:
        raise PreconditionError(f"requires d >= 4, got {d}")
    if not 1 <= rprime <= n + d - 1:
        raise PreconditionError(f"r' must satisfy 1 <= r' <= n + d - 1, got {rprime}")
    defect = rprime * rprime - n * d * d
    if defect == 0:
        raise PreconditionError(f"r'^2 = n*d^2 = {n * d * d}: no branch applies")
    if rprime <= n + d - 2:
        r = min(n, rprime)
        m = rprime - r + 1
        curve = CurveData(d, (m,) + (1,) * (r - 1))
    else:
        curve = CurveData(d, (d - 2, 2, 2) + (1,) * (n - 3))
    if defect > 0:
        return check_nef_conditions(
            Fraction(rprime, d), (Fraction(d),) * n, curve, 1, provenance="extended-a"
        )
    return check_nef_conditions(
        Fraction(n), (Fraction(rprime),) * n, curve, 1, provenance="extended-b"
    )


def build_adhoc(n: int, a: int, b: int, c: int, rprime: int) -> NefCertificate:
    """Plane (l = 1) divisors from a degree d = a*b*c pencil construction.

    Needs c < a coprime, r' >= a^2 b^2 c and n >= a^2 b^2 + (r' - a^2 b^2 c).
    The curve datum is (d, (c, ..., c, 1, ..., 1)) with a^2 b^2 entries equal
    to c. Irreducibility of that class additionally requires the field
    characteristic not to divide c; this is carried as a flag, not verified.
    """
    if min(a, b, c) < 1:
        raise PreconditionError("a, b, c must be positive")
    if math.gcd(a, c) != 1:
        raise PreconditionError(f"gcd(a, c) = {math.gcd(a, c)} != 1")
    if c >= a:
        raise PreconditionError(f"requires c < a, got c={c}, a={a}")
    base = a * a * b * b
    if rprime < base * c:
        raise PreconditionError(f"r' must be >= a^2*b^2*c = {base * c}, got {rprime}")
    r = base + (rprime - base * c)
    if n < r:
        raise PreconditionError(f"n must be >= a^2*b^2 + (r' - a^2*b^2*c) = {r}, got {n}")
    d = a * b * c
    defect = rprime * rprime - n * d * d
    if defect == 0:
        raise PreconditionError(f"r'^2 = n*d^2 = {n * d * d}: no branch applies")
    curve = CurveData(d, (c,) * base + (1,) * (r - base))
    flags = ("requires field characteristic not dividing c",)
    if defect > 0:
        return check_nef_conditions(
            Fraction(rprime, d), (Fraction(d),) * n, curve, 1,
            provenance="adhoc-a", validity_flags=flags,
        )
    return check_nef_conditions(
        Fraction(n), (Fraction(rprime),) * n, curve, 1,
        provenance="adhoc-b", validity_flags=flags,
    )
