from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seshadri.bounds import (
    coarse_lower_bounds,
    compare_references,
    epsilon_basic,
    epsilon_oracle,
    epsilon_refined,
    pell_defect,
    pell_fundamental,
    pell_plus_one,
    plane_lower_bounds,
    scaled_pell_bound,
    special_square_bounds,
)
from seshadri.errors import PreconditionError
from seshadri.exactmath import is_perfect_square

F = Fraction


@pytest.mark.parametrize(
    "n,l,value,witness",
    [
        (33, 1, F(4, 23), (23, 4, 1, "S2")),
        (7, 1, F(5, 14), (5, 2, 1, "S1")),
        (8, 1, F(1, 3), (3, 1, 1, "S2")),
        (19, 1, F(13, 57), (13, 3, 1, "S1")),
        (10, 1, F(3, 10), (3, 1, 1, "S1")),
        (2, 1, F(1, 2), (1, 1, 1, "S1")),
        (3, 5, F(1), (3, 1, 1, "S1")),
    ],
)
def test_epsilon_basic_golden(n, l, value, witness):
    bound = epsilon_basic(n, l)
    assert bound.value == value
    assert not bound.square_case
    w = bound.witness
    assert (w.r, w.d, w.m, w.set_tag) == witness
    assert w.value == value


def test_square_case_marker():
    bound = epsilon_basic(4, 1)
    assert bound.value == F(1, 2)
    assert bound.square_case and bound.witness is None
    # l = n is a square case with value 1
    bound = epsilon_basic(6, 6)
    assert bound.value == 1 and bound.square_case


@pytest.mark.parametrize("n,l", [(3, 5), (2, 9), (1, 7), (4, 8)])
def test_l_at_least_n_gives_one(n, l):
    assert epsilon_basic(n, l).value == 1


def test_epsilon_rejects_nonpositive():
    with pytest.raises(PreconditionError):
        epsilon_basic(0, 1)
    with pytest.raises(PreconditionError):
        epsilon_basic(3, -1)


def test_oracle_examples():
    assert epsilon_oracle(33, 1) == F(4, 23)
    assert epsilon_oracle(7, 1) == F(5, 14)
    assert epsilon_oracle(2, 1) == F(1, 2)


def test_oracle_refuses_outside_generic_case():
    with pytest.raises(PreconditionError):
        epsilon_oracle(4, 1)  # square
    with pytest.raises(PreconditionError):
        epsilon_oracle(3, 5)  # l >= n


def test_oracle_equivalence_sample():
    for n in range(2, 80):
        for l in range(1, n):
            if is_perfect_square(n * l):
                continue
            assert epsilon_basic(n, l).value == epsilon_oracle(n, l), (n, l)


def test_epsilon_refined_golden():
    bound = epsilon_refined(7, 1)
    assert bound.value == F(3, 8)
    w = bound.witness
    assert (w.r, w.d, w.m, w.set_tag) == (7, 3, 2, "S2'")
    assert epsilon_refined(14, 1).value == F(4, 15)
    assert epsilon_refined(33, 1).value >= F(4, 23)
    assert epsilon_refined(4, 1).square_case and epsilon_refined(4, 1).refined


def test_refined_never_decreases():
    for n in range(1, 61):
        for l in (1, 2, 3, 7):
            assert epsilon_refined(n, l).value >= epsilon_basic(n, l).value, (n, l)


@given(st.integers(min_value=1, max_value=400), st.integers(min_value=1, max_value=400))
@settings(max_examples=150)
def test_upper_bound_sqrt_l_over_n(n, l):
    for bound in (epsilon_basic(n, l), epsilon_refined(n, l)):
        v = bound.value
        assert v.numerator**2 * n <= v.denominator**2 * l
        if bound.square_case:
            assert v.numerator**2 * n == v.denominator**2 * l


@pytest.mark.parametrize(
    "r,d,n,l,expected",
    [(23, 4, 33, 1, 1), (170, 39, 19, 1, 1), (3, 1, 10, 1, -1)],
)
def test_pell_defect(r, d, n, l, expected):
    assert pell_defect(r, d, n, l) == expected


def test_pell_fundamental():
    # minimal solution overall; for coeff 2 that is (1, 1) on the -1 side
    sol = pell_fundamental(2)
    assert (sol.r, sol.d, sol.rhs) == (1, 1, -1)
    sol = pell_fundamental(19)
    assert (sol.r, sol.d, sol.rhs) == (170, 39, 1)
    sol = pell_fundamental(10)
    assert (sol.r, sol.d, sol.rhs) == (3, 1, -1)


def test_pell_minimality_scan():
    from seshadri.exactmath import isqrt

    for coeff in range(2, 201):
        if is_perfect_square(coeff):
            continue
        sol = pell_fundamental(coeff)
        assert sol.r * sol.r - coeff * sol.d * sol.d == sol.rhs
        # |r^2 - d^2 coeff| = 1 forces r to bracket d*sqrt(coeff); fundamental
        # solutions can be astronomically large, so cap the exhaustive scan
        for d in range(1, min(sol.d, 2000)):
            t = d * d * coeff
            r0 = isqrt(t)
            assert r0 * r0 != t - 1 and (r0 + 1) ** 2 != t + 1, (coeff, d)


def test_pell_rejects_squares():
    with pytest.raises(PreconditionError):
        pell_fundamental(16)
    with pytest.raises(PreconditionError):
        pell_fundamental(1)


def test_pell_plus_one():
    assert (pell_plus_one(2).r, pell_plus_one(2).d) == (3, 2)
    assert pell_plus_one(2).rhs == 1
    assert (pell_plus_one(19).r, pell_plus_one(19).d) == (170, 39)


def test_delta_one_forces_equality():
    # wherever the fundamental solution has r <= n, it pins the exact bound
    for n in range(2, 120):
        for l in range(1, n):
            coeff = n * l
            if coeff > 200 or is_perfect_square(coeff):
                continue
            sol = pell_fundamental(coeff)
            if sol.r > n:
                continue
            value = epsilon_basic(n, l).value
            if sol.rhs == 1:
                assert value == F(sol.d * l, sol.r), (n, l)
            else:
                assert value == F(sol.r, n * sol.d), (n, l)


def test_coarse_lower_bounds():
    assert coarse_lower_bounds(33, 1) == (F(1, 6), F(28, 165), F(5, 29))
    assert coarse_lower_bounds(16, 1) == (F(1, 4), F(1, 4), F(1, 4))
    # frozen from the floor/ceiling formula: d* = 4, d_* = 3, r_* = 9, r* = 10
    assert coarse_lower_bounds(10, 1) == (F(1, 4), F(3, 10), F(3, 10))
    first, second, third = coarse_lower_bounds(3, 7)
    assert first == F(1, 1) and second is None and third is None


def test_coarse_bounds_never_exceed_epsilon():
    for n in range(1, 80):
        for l in (1, 2, 5):
            value = epsilon_basic(n, l).value
            for b in coarse_lower_bounds(n, l):
                if b is not None:
                    assert b <= value, (n, l, b)


def test_plane_lower_bounds_cases():
    assert plane_lower_bounds(8) == [("a", F(1, 3))]
    assert plane_lower_bounds(10) == [("b", F(3, 10))]
    cases = dict(plane_lower_bounds(28))
    assert cases["b"] == F(13, 70)
    assert cases["c"] == F(3, 16)
    assert F(3, 16) > F(13, 70)
    # perfect square degenerates to case (a) with value 1/s
    assert plane_lower_bounds(16) == [("a", F(1, 4))]


def test_plane_bounds_never_exceed_epsilon():
    for n in range(2, 200):
        value = epsilon_basic(n, 1).value
        for _, b in plane_lower_bounds(n):
            assert b <= value, (n, b)


def test_special_square_bounds():
    by_tag = {s.tag: s for s in special_square_bounds(7)}
    assert by_tag["n_plus_2_square"].value == F(3, 8)
    by_tag = {s.tag: s for s in special_square_bounds(8)}
    assert by_tag["n_plus_1_square"].value == F(11, 32)
    by_tag = {s.tag: s for s in special_square_bounds(10)}
    assert by_tag["n_minus_1_square"].value == F(4, 13)
    assert by_tag["adhoc_i_eq_j"].value == F(6, 19)
    assert by_tag["adhoc_i_eq_j"].validity_flags
    # none of n-1, n+1, n+2 square: empty, and no adhoc entries either
    assert special_square_bounds(12) == []
    assert special_square_bounds(6) == []


def test_scaled_pell_bound():
    assert scaled_pell_bound(2, 1, 3, 2, 2, 1) == F(1, 3)
    assert scaled_pell_bound(19, 1, 170, 39, 39, 1) == F(1, 170)
    with pytest.raises(PreconditionError, match="a\\^2\\*n"):
        scaled_pell_bound(2, 1, 3, 2, 1, 2)
    with pytest.raises(PreconditionError, match="r\\^2"):
        scaled_pell_bound(3, 1, 3, 2, 2, 1)


def test_compare_references_rows():
    row = compare_references(10)
    assert row.epsilon == F(3, 10)
    assert row.vs_sqrt_np1 == -1      # 9 * 11 = 99 < 100
    assert row.near_square            # n - 1 = 9
    row = compare_references(12)
    assert row.epsilon == F(2, 7)     # enumeration; 4 * 13 = 52 > 49
    assert row.vs_sqrt_np1 == 1
    assert not row.near_square
    row = compare_references(19)
    assert row.epsilon == F(13, 57)
    assert row.pell_bound == F(39, 170)
    assert not row.pell_applies       # fundamental r = 170 > 19


def test_not_near_square_beats_st_reference():
    # whenever neither n-1 nor n+1 is a square, the bound beats 1/sqrt(n+1)
    for n in range(2, 200):
        row = compare_references(n)
        if not row.near_square:
            assert row.vs_sqrt_np1 == 1, n
