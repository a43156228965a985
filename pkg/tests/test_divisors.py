from fractions import Fraction

import pytest
from sympy import divisor_count

from symprop.divisors import (
    C0_CUBED,
    CUBE_CONSTANTS,
    applicable_variants,
    check_divisor_count_bound,
    check_quadratic_divisor_sum,
    divisor_count_sieve,
    divisor_list,
    divisor_ratio_factor,
    divisor_rich_candidates,
    gamma_value,
    is_divisor_rich_candidate,
    peak_exponent,
    sweep_divisor_count_bounds,
    sweep_quadratic_divisor_sums,
)


def test_divisor_list_basics():
    assert divisor_list(1) == (1,)
    assert divisor_list(12) == (1, 2, 3, 4, 6, 12)
    assert len(divisor_list(360)) == 24


def test_divisor_list_invariants():
    for n in range(1, 200):
        ds = divisor_list(n)
        assert list(ds) == sorted(set(ds))
        assert ds[0] == 1 and ds[-1] == n
        assert all(n % d == 0 for d in ds)


def test_gamma_value_thresholds():
    assert gamma_value(361) == 2
    assert gamma_value(360) == Fraction(5, 2)
    assert gamma_value(61) == Fraction(5, 2)
    assert gamma_value(60) == Fraction(3345, 1000)
    assert gamma_value(1) == Fraction(3345, 1000)
    with pytest.raises(ValueError):
        gamma_value(0)


def test_peak_exponents():
    assert peak_exponent(2) == 3
    assert peak_exponent(3) == 2
    assert peak_exponent(5) == 1
    assert peak_exponent(7) == 1
    assert peak_exponent(17) == 0


def test_ratio_factor_identity():
    box = divisor_ratio_factor(17, 0)
    assert box.lo == box.hi == 1


def test_cube_constant_encloses_c0():
    # the refined constant comes from the factor product with the power
    # of two pushed to exponent 7 instead of its peak at 3
    prod = (
        divisor_ratio_factor(2, 7)
        * divisor_ratio_factor(3, 2)
        * divisor_ratio_factor(5, 1)
        * divisor_ratio_factor(7, 1)
    )
    cube = prod * prod * prod
    assert cube.lo <= C0_CUBED <= cube.hi
    assert CUBE_CONSTANTS["c0"] == Fraction(768, 35)


def test_count_bound_variants():
    rep = check_divisor_count_bound(15, "odd")
    assert rep.passed
    assert len(divisor_list(15)) == 4
    for variant in applicable_variants(1):
        assert check_divisor_count_bound(1, variant).passed


def test_count_bound_candidate_exception():
    # the plain bound holds at the largest candidate; membership is the claim
    n = 2**6 * 3**4 * 5**2 * 7 * 13
    assert is_divisor_rich_candidate(n)
    assert check_divisor_count_bound(n, "c0").passed
    # at 72 the bound itself fails and the report leans on the listed set
    rep = check_divisor_count_bound(72, "c0")
    assert rep.passed
    assert "candidate" in rep.witness


def test_candidate_set_shape():
    cands = divisor_rich_candidates()
    # 6 * 5 * 3 * 2 * 3 exponent boxes, all products distinct
    assert len(cands) == 540
    assert cands[0] == 2
    assert cands[-1] == 11_793_600
    assert list(cands) == sorted(set(cands))


def test_candidate_containment_below_10000():
    # every n with d(n)^3 > (768/35) n must be a listed candidate
    counts = divisor_count_sieve(10_000)
    for n in range(1, 10_001):
        if int(counts[n]) ** 3 * 35 > 768 * n:
            assert is_divisor_rich_candidate(n), n


def test_quadratic_sum_examples():
    rep = check_quadratic_divisor_sum(12, 3, 6)
    assert rep.passed
    assert rep.lhs == 2 + 6 + 20
    assert rep.rhs == 5 * 4 + 72 - 36
    for n in (7, 30):
        rep = check_quadratic_divisor_sum(n, n, n)
        assert rep.passed
        assert rep.lhs == rep.rhs == (n - 1) * (n - 2)
    assert check_quadratic_divisor_sum(60, 4, 30).passed


def test_quadratic_sweep_clean_small():
    assert sweep_quadratic_divisor_sums(300) == []


def test_sieve_matches_sympy():
    counts = divisor_count_sieve(2_000)
    for n in (1, 2, 17, 36, 256, 360, 1024, 1999, 2000):
        assert int(counts[n]) == divisor_count(n)


def test_count_bound_sweep_clean_small():
    assert sweep_divisor_count_bounds(20_000) == []
