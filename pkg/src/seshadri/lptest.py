"""Optimal nef test divisors for fat-point linear systems, by exact LP.

Emptiness of H = t*L' - sum(b_i E_i) is certified by any nef divisor F
with F.H < 0. Normalizing F = d L' - sum(a_i E_i) (a_0 = 1), the best
test divisor for a given (r, d) maximizes sum(a_i b_i) subject to

    1 >= a_1 >= ... >= a_n >= 0
    a_1 + ... + a_r <= d^2 l          (P, the curve-degree budget)
    a_1 + ... + a_n <= r              (R, the total budget)

and the emptiness threshold on t is the maximum over (r, d) of the
optimum divided by d*l. Only r <= n and d <= ceil(sqrt(n/l)) + 1 need be
scanned: the objective is capped by sum(b_i) independently of d, so the
threshold obj/(d*l) decreases once d passes the uniform optimum range.

Two interchangeable exact solvers are provided and tested against each
other: a dense rational simplex over the (n+2)-constraint polytope, and
a direct vertex search in the prefix-vector parametrization
(lp_optimum_vertex). The strict self-intersection condition of the nef
check is open, so a tight optimum is scaled down by (1 - 1/K) for a
power of ten K without affecting the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import PreconditionError
from .exactmath import ceil_sqrt_ratio
from .nefcert import (
    BlowupDivisorClass,
    CurveData,
    NefCertificate,
    check_nef_conditions,
)


@dataclass(frozen=True)
class TargetSystem:
    """t*L' - sum(b_i E_i) with nonincreasing nonnegative multiplicities."""

    t: Fraction
    b: tuple[int, ...]
    n: int
    l: int

    def __post_init__(self):
        if self.n < 1 or self.l < 1:
            raise PreconditionError(f"n and l must be positive, got n={self.n}, l={self.l}")
        if len(self.b) != self.n:
            raise PreconditionError(f"expected {self.n} multiplicities, got {len(self.b)}")
        if any(m < 0 for m in self.b):
            raise PreconditionError("multiplicities must be nonnegative")
        if any(self.b[i] < self.b[i + 1] for i in range(self.n - 1)):
            raise PreconditionError("multiplicities must be nonincreasing")

    def divisor(self) -> BlowupDivisorClass:
        return BlowupDivisorClass(self.n, self.l, Fraction(self.t), tuple(Fraction(m) for m in self.b))


@dataclass(frozen=True)
class EffectivityVerdict:
    """empty_certified iff some nef test divisor meets the target negatively.

    threshold is the exact infimum degree: emptiness is certified for
    every t strictly below it and never at or above it.
    """

    empty_certified: bool
    best_test_divisor: NefCertificate | None
    threshold: Fraction


# ---------------------------------------------------------------------------
# exact simplex solver


def _simplex_max(a_rows: list[list[Fraction]], rhs: list[Fraction], cost: list[Fraction]):
    """max cost.x subject to a_rows x <= rhs, x >= 0, all rhs >= 0.

    Dense tableau over Fractions; the all-slack basis is feasible, and
    Bland's rule keeps degenerate pivots from cycling. Returns
    (optimal value, x).
    """
    m = len(a_rows)
    nv = len(cost)
    tableau = [
        [Fraction(v) for v in a_rows[i]]
        + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        + [Fraction(rhs[i])]
        for i in range(m)
    ]
    z = [-Fraction(c) for c in cost] + [Fraction(0)] * (m + 1)
    basis = list(range(nv, nv + m))
    while True:
        enter = next((j for j in range(nv + m) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][-1] / tableau[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise ArithmeticError("LP unbounded; the test-divisor polytope never is")
        pivot = tableau[leave][enter]
        tableau[leave] = [v / pivot for v in tableau[leave]]
        row = tableau[leave]
        for i in range(m):
            f = tableau[i][enter]
            if i != leave and f:
                tableau[i] = [u - f * w for u, w in zip(tableau[i], row)]
        f = z[enter]
        if f:
            z = [u - f * w for u, w in zip(z, row)]
        basis[leave] = enter
    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = tableau[i][-1]
    return z[-1], x


def lp_optimum_simplex(b, n: int, l: int, r: int, d: int):
    """(objective, coefficients) for the (r, d) test-divisor LP via simplex."""
    one, zero = Fraction(1), Fraction(0)
    rows: list[list[Fraction]] = [[one] + [zero] * (n - 1)]   # a_1 <= 1
    rhs: list[Fraction] = [one]
    for i in range(n - 1):                                    # a_{i+1} <= a_i
        row = [zero] * n
        row[i], row[i + 1] = -one, one
        rows.append(row)
        rhs.append(zero)
    rows.append([one] * r + [zero] * (n - r))                 # prefix budget
    rhs.append(Fraction(d * d * l))
    rows.append([one] * n)                                    # total budget
    rhs.append(Fraction(r))
    value, x = _simplex_max(rows, rhs, [Fraction(c) for c in b])
    return value, tuple(x)


# ---------------------------------------------------------------------------
# vertex-family solver


def _lp_vertex_candidates(prefix_sums, n: int, r: int, p: int, total: int):
    """(objective, prefix weights) over a family containing an optimal vertex.

    Write a = sum_k lam_k u_k with u_k the k-prefix indicator; the LP
    becomes max sum lam_k B_k subject to sum lam_k <= 1 (C0),
    sum lam_k min(k, r) <= P (C1), sum lam_k k <= R (C2), lam >= 0.
    Because B is concave (b nonincreasing) and both constraint coefficient
    maps are affine in k on each side of r, mass on two indices on the
    same side of r can be moved to their mean without changing any
    constraint value or decreasing the objective, until the pair is
    adjacent. So it suffices to enumerate: single indices at their binding
    cap; index pairs with two of {C0, C1, C2} tight; and triples with all
    three tight formed by an adjacent same-side pair plus an index on the
    other side.
    """
    big_b = prefix_sums
    caps = (1, p, total)

    def coeff_rows(k: int) -> tuple[int, int, int]:
        return 1, min(k, r), k

    out: list[tuple[Fraction, dict[int, Fraction]]] = []

    for k in range(1, n + 1):
        lam = min(Fraction(1), Fraction(p, min(k, r)), Fraction(total, k))
        if lam > 0:
            out.append((big_b[k] * lam, {k: lam}))

    def try_pair(k1: int, k2: int) -> None:
        row1, row2 = coeff_rows(k1), coeff_rows(k2)
        for i in range(3):
            for j in range(i + 1, 3):
                det = row1[i] * row2[j] - row2[i] * row1[j]
                if det == 0:
                    continue
                lam1 = Fraction(caps[i] * row2[j] - row2[i] * caps[j], det)
                lam2 = Fraction(row1[i] * caps[j] - caps[i] * row1[j], det)
                if lam1 < 0 or lam2 < 0:
                    continue
                other = 3 - i - j
                if lam1 * row1[other] + lam2 * row2[other] > caps[other]:
                    continue
                out.append((big_b[k1] * lam1 + big_b[k2] * lam2, {k1: lam1, k2: lam2}))

    def try_triple(k1: int, k2: int, k3: int) -> None:
        cols = (coeff_rows(k1), coeff_rows(k2), coeff_rows(k3))
        det = _det3(cols[0], cols[1], cols[2])
        if det == 0:
            return
        lams = []
        for idx in range(3):
            replaced = tuple(
                caps if i == idx else cols[i] for i in range(3)
            )
            lams.append(Fraction(_det3(*replaced), det))
        if any(v < 0 for v in lams):
            return
        obj = sum(big_b[k] * v for k, v in zip((k1, k2, k3), lams))
        out.append((obj, dict(zip((k1, k2, k3), lams))))

    r_eff = min(r, n)
    for k1 in range(1, r_eff + 1):               # cross pairs k1 <= r < k2
        for k2 in range(r + 1, n + 1):
            try_pair(k1, k2)
    for k in range(1, n):                        # adjacent same-side pairs
        if k + 1 <= r or k > r:
            try_pair(k, k + 1)
    for k in range(1, r_eff):                    # left adjacent pair + right single
        for k2 in range(r + 1, n + 1):
            try_triple(k, k + 1, k2)
    for k1 in range(1, r_eff + 1):               # left single + right adjacent pair
        for k in range(r + 1, n):
            try_triple(k1, k, k + 1)
    return out


def _det3(c1, c2, c3) -> int:
    # columns of a 3x3 integer matrix
    return (
        c1[0] * (c2[1] * c3[2] - c2[2] * c3[1])
        - c2[0] * (c1[1] * c3[2] - c1[2] * c3[1])
        + c3[0] * (c1[1] * c2[2] - c1[2] * c2[1])
    )


def lp_optimum_vertex(b, n: int, l: int, r: int, d: int):
    """(objective, coefficients) for the (r, d) test-divisor LP via vertex search."""
    prefix = [0]
    for v in b:
        prefix.append(prefix[-1] + v)
    p = d * d * l
    best_obj = Fraction(0)
    best_lam: dict[int, Fraction] = {}
    for obj, lam in _lp_vertex_candidates(prefix, n, r, p, r):
        if obj > best_obj:
            best_obj, best_lam = obj, lam
    coeffs = [Fraction(0)] * n
    for k, lam in best_lam.items():
        for i in range(k):
            coeffs[i] += lam
    # exact feasibility audit of the reconstructed point
    assert all(coeffs[i] >= coeffs[i + 1] for i in range(n - 1))
    assert coeffs[0] <= 1 and coeffs[-1] >= 0
    assert sum(coeffs[:r]) <= p and sum(coeffs) <= r
    assert sum(c * v for c, v in zip(coeffs, b)) == best_obj
    return best_obj, tuple(coeffs)


# ---------------------------------------------------------------------------
# search over (r, d) and certification


def _certificate_for(coeffs, l: int, r: int, d: int, target: TargetSystem | None) -> NefCertificate:
    """Certificate for an LP optimum, shrunk when the open check is tight.

    The positive-self-intersection check is strict; if the optimum sits
    on the boundary (sum a_i^2 = d^2 l) every coefficient is scaled by
    1 - 1/K for the smallest power of ten K keeping the pairing with the
    target negative (plain K = 10 when no target is in play or the target
    cannot be met anyway).
    """
    if sum(c * c for c in coeffs) == d * d * l:
        k = Fraction(10)
        if target is not None:
            obj = sum(c * v for c, v in zip(coeffs, target.b))
            goal = Fraction(target.t) * d * target.l
            if obj > goal:
                while (1 - 1 / k) * obj <= goal:
                    k *= 10
        coeffs = tuple(c * (1 - 1 / k) for c in coeffs)
    return check_nef_conditions(
        Fraction(1), coeffs, CurveData(d, (1,) * r), l, provenance="lp-test-divisor"
    )


def _uniform_optimum(b, n: int, l: int, r: int, d: int):
    level = min(Fraction(1), Fraction(r, n), Fraction(d * d * l, r))
    return level * sum(b), (level,) * n


def optimal_test_divisor(
    b: Iterable[int],
    n: int | None = None,
    l: int = 1,
    r_max: int | None = None,
    d_max: int | None = None,
    *,
    solver: str = "vertex",
    uniform: bool = False,
    target: TargetSystem | None = None,
) -> tuple[NefCertificate, Fraction]:
    """Best nef test divisor and the exact emptiness threshold on t.

    Scans r in 1..r_max (default n) and d in 1..d_max (default
    ceil(sqrt(n/l)) + 1), solving the coefficient LP exactly for each
    pair; ties prefer smaller d, then smaller r. With uniform=True the
    coefficients are forced constant, which reproduces the plain
    uniform-divisor threshold sum(b)*eps/l.
    """
    b = tuple(int(v) for v in b)
    if n is None:
        n = len(b)
    if len(b) != n or any(v < 0 for v in b) or any(b[i] < b[i + 1] for i in range(n - 1)):
        raise PreconditionError("multiplicities must be a nonincreasing nonnegative vector of length n")
    if l < 1:
        raise PreconditionError(f"l must be >= 1, got {l}")
    if solver == "vertex":
        solve = lp_optimum_vertex
    elif solver == "simplex":
        solve = lp_optimum_simplex
    else:
        raise PreconditionError(f"unknown solver {solver!r}")
    r_max = n if r_max is None else min(r_max, n)
    d_max = d_max if d_max is not None else ceil_sqrt_ratio(n, l) + 1
    if not any(b):
        cert = _certificate_for((Fraction(0),) * n, l, 1, 1, None)
        return cert, Fraction(0)
    best = None  # (threshold, d, r, coeffs)
    for d in range(1, d_max + 1):
        for r in range(1, r_max + 1):
            if uniform:
                obj, coeffs = _uniform_optimum(b, n, l, r, d)
            else:
                obj, coeffs = solve(b, n, l, r, d)
            threshold = obj / (d * l)
            if best is None or threshold > best[0] or (threshold == best[0] and (d, r) < (best[1], best[2])):
                best = (threshold, d, r, coeffs)
    threshold, d, r, coeffs = best
    return _certificate_for(coeffs, l, r, d, target), threshold


def certify_empty(
    target: TargetSystem,
    r_max: int | None = None,
    d_max: int | None = None,
    *,
    solver: str = "vertex",
) -> EffectivityVerdict:
    """Decide emptiness of the target system by the best nef test divisor.

    empty_certified iff t < threshold; at the boundary F.H = 0 is not
    negative, so the verdict stays undecided.
    """
    cert, threshold = optimal_test_divisor(
        target.b, target.n, target.l, r_max, d_max, solver=solver, target=target
    )
    return EffectivityVerdict(Fraction(target.t) < threshold, cert, threshold)
