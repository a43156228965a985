from fractions import Fraction

import pytest

from symprop.bounds import (
    EXPECTED_MAJORANT_FAILURES,
    check_excess_monotone,
    check_excess_threshold,
    check_prop_upper_bound,
    excess_ratio_bound,
    prop_upper_bound,
    prop_upper_bound_near,
    sweep_divisor_majorant,
    sweep_prop_bound,
    verify_exceptional_m,
    verify_shat_condition,
)


def test_upper_bound_values():
    assert prop_upper_bound(10, 10) == Fraction(4345, 10000)
    assert prop_upper_bound(100, 99) == Fraction(1, 100) + Fraction(5, 2) * 99 / 100**2
    assert prop_upper_bound(400, 400) == Fraction(1, 400) + Fraction(1, 200)
    with pytest.raises(ValueError):
        prop_upper_bound(10, 8)


def test_check_at_small_degrees(table):
    rep = check_prop_upper_bound(5, 4, table=table)
    assert rep.passed
    assert rep.lhs == Fraction(7, 15)
    # out of the sweep window but the inequality still holds
    rep = check_prop_upper_bound(4, 3, table=table)
    assert rep.passed
    assert rep.lhs == Fraction(3, 8)
    assert Fraction(3, 8) < Fraction(1, 4) + Fraction(3345, 1000) * 3 / 16


def test_sweep_clean_window():
    assert sweep_prop_bound(5, 60, 3) == []


def test_sweep_rejects_bad_window():
    with pytest.raises(ValueError):
        sweep_prop_bound(3, 60, 3)
    with pytest.raises(ValueError):
        sweep_prop_bound(5, 4, 3)


def test_near_bound(table):
    for n, m in ((20, 19), (20, 20), (300, 299)):
        assert table.prop(n, m) <= prop_upper_bound_near(n, m)
    with pytest.raises(ValueError):
        prop_upper_bound_near(20, 18)


def test_shat_condition_exceptions():
    rep72 = verify_shat_condition(72)
    assert not rep72.passed
    assert "24" in rep72.witness and "36" in rep72.witness
    rep120 = verify_shat_condition(120)
    assert not rep120.passed
    assert "30" in rep120.witness and "40" in rep120.witness


def test_shat_condition_vacuous_and_boundary():
    assert verify_shat_condition(2).passed
    # at square m the threshold can be hit exactly; strict comparison
    # leaves such divisors out and the witness says so
    rep = verify_shat_condition(100)
    assert rep.passed
    assert "25" in rep.witness and "excluded" in rep.witness


def test_exceptional_direct_checks():
    for m in (72, 120):
        rep = verify_exceptional_m(m)
        assert rep.passed
        # n runs from the first integer at or above sqrt(gamma*m) to m+1
        assert f"{m + 1}" in rep.witness
    with pytest.raises(ValueError):
        verify_exceptional_m(96)


def test_majorant_sweep_failure_set():
    failures = sweep_divisor_majorant(2000)
    assert sorted(r.m for r in failures) == [72, 120]
    assert EXPECTED_MAJORANT_FAILURES == frozenset({72, 120})


def test_majorant_sweep_small_range():
    failures = sweep_divisor_majorant(60, include_candidates=False)
    assert failures == []


def test_excess_ratio_certificates():
    assert check_excess_threshold().passed
    assert check_excess_monotone().passed
    box = excess_ratio_bound(19020)
    assert box.hi < 1
    assert box.lo > Fraction(99, 100)


def test_excess_ratio_guards():
    with pytest.raises(ValueError):
        check_excess_monotone((100, 19020))
    with pytest.raises(ValueError):
        check_excess_monotone((40000, 19020))
