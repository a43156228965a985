from fractions import Fraction

import pytest

from symprop.recognition import (
    CASE1_WEAK_NS,
    TABLE2_EXCEPTIONS,
    admissible_degrees,
    admissible_divisor_check,
    admissible_n,
    case_params,
    check_n23_bound,
    cond_prob,
    lower_bound_for,
    prob_A,
    prob_A_centralizer,
    prob_A_rcycle,
    prob_B,
    prob_B_upper_bound,
    verify_theorem2,
)

ALL_CASES = range(1, 11)


def test_case_params_examples():
    spec = case_params(6, 14)
    assert spec.r == 11 and spec.cycle_type.parts == (3, 11)
    spec = case_params(1, 9)
    assert spec.r == 9 and spec.cycle_type.parts == (9,)
    spec = case_params(10, 13)
    assert spec.r == 8 and spec.cycle_type.parts == (2, 3, 8)
    assert spec.cycle_type.n == 13  # no fixed points


def test_case_params_rejections():
    with pytest.raises(ValueError):
        case_params(0, 9)
    with pytest.raises(ValueError):
        case_params(11, 9)
    with pytest.raises(ValueError):
        case_params(2, 10)  # needs odd n
    with pytest.raises(ValueError):
        case_params(9, 12)  # needs n = 1 mod 6
    with pytest.raises(ValueError):
        case_params(6, 7)  # below the family threshold


def test_admissible_degrees_partition_mod6():
    # families 6..10 tile the residues; 9 and 10 share 1 mod 6
    for n in range(8, 60):
        hits = [c for c in (6, 7, 8, 9) if admissible_n(c, n)]
        assert len(hits) == 1
        assert admissible_n(10, n) == admissible_n(9, n)
    assert list(admissible_degrees(9, 8, 32)) == [13, 19, 25, 31]


def test_calc_group_convention():
    # cases 4, 5, 10 draw from the alternating group; the rest, including
    # the even-type families 6..9, compute inside the symmetric group
    for cid in ALL_CASES:
        n = next(iter(admissible_degrees(cid, 8, 40)))
        spec = case_params(cid, n)
        assert spec.calc_group == ("A" if cid in (4, 5, 10) else "S")


def test_prob_a_closed_forms():
    assert prob_A(case_params(1, 5)) == Fraction(1, 5)
    assert prob_A(case_params(9, 13)) == Fraction(1, 126)
    assert prob_A(case_params(10, 13)) == Fraction(1, 24)
    assert prob_A(case_params(2, 9)) == Fraction(1, 14)
    assert prob_A(case_params(4, 9)) == Fraction(2, 9)


def test_prob_a_centralizer_route():
    for cid in ALL_CASES:
        for n in admissible_degrees(cid, 8, 40):
            spec = case_params(cid, n)
            assert prob_A(spec) == prob_A_centralizer(spec), (cid, n)


def test_prob_a_rcycle_route(table):
    # counting whole types whose r-th power is an s-cycle product picks up
    # a second class only in family 9, where 3^2 r^1 also lands on type 3^1
    for cid in ALL_CASES:
        for n in admissible_degrees(cid, 8, 36):
            spec = case_params(cid, n)
            via_types = prob_A_rcycle(spec, table=table)
            factor = 2 if cid == 9 else 1
            assert via_types == factor * prob_A(spec), (cid, n)


def test_prob_b_forms(table):
    assert prob_B(case_params(1, 5), table=table) == Fraction(5, 24)
    assert prob_B(case_params(4, 5), table=table) == Fraction(5, 12)
    expected = table.prop(9, 14) - table.prop(9, 7)
    assert prob_B(case_params(2, 9), table=table) == expected


def test_prob_b_upper_bound_window(table):
    for cid in (2, 3, 6, 7, 8, 9, 10):
        for n in admissible_degrees(cid, 20, 120):
            spec = case_params(cid, n)
            assert prob_B(spec, table=table) <= prob_B_upper_bound(spec), (cid, n)
    with pytest.raises(ValueError):
        prob_B_upper_bound(case_params(1, 20))


def test_lower_bound_selection():
    assert lower_bound_for(case_params(1, 5)) == Fraction(1, 2)
    for n in sorted(CASE1_WEAK_NS):
        assert lower_bound_for(case_params(1, n)) == Fraction(2, 7)
    for n in (11, 17):
        assert lower_bound_for(case_params(2, n)) == Fraction(1, 4)
    assert lower_bound_for(case_params(3, 18)) == Fraction(1, 4)
    assert lower_bound_for(case_params(2, 13)) == Fraction(1, 3)
    assert lower_bound_for(case_params(9, 31)) == Fraction(3, 10)
    assert lower_bound_for(case_params(10, 13)) == Fraction(3, 20)
    assert lower_bound_for(case_params(10, 25)) == Fraction(3, 20)
    assert lower_bound_for(case_params(10, 85)) == Fraction(3, 10)
    assert lower_bound_for(case_params(7, 15)) == Fraction(1, 3)


def test_cond_prob_case1_small(table):
    rep = cond_prob(case_params(1, 5), table=table)
    assert rep.p_A_given_B == Fraction(24, 25)
    assert rep.passed


def test_cond_prob_table2_rows(table):
    # the two exceptional rows that genuinely clear their printed floors
    rep = cond_prob(case_params(10, 13), table=table)
    assert rep.p_A_given_B == Fraction(14175, 62896)
    assert rep.passed
    rep = cond_prob(case_params(9, 31), table=table)
    assert Fraction(3, 10) < rep.p_A_given_B < Fraction(32, 100)
    assert rep.passed
    rep = cond_prob(case_params(10, 25), table=table)
    assert Fraction(3, 20) < rep.p_A_given_B < Fraction(16, 100)
    assert rep.passed


def test_cond_prob_known_shortfalls(table):
    # two admissible degrees in family 10 sit below their listed floors;
    # the exact values are frozen here so any drift is loud
    rep = cond_prob(case_params(10, 37), table=table)
    assert not rep.passed
    assert Fraction(319, 1000) < rep.p_A_given_B < Fraction(1, 3)
    rep = cond_prob(case_params(10, 85), table=table)
    assert not rep.passed
    assert Fraction(2, 7) < rep.p_A_given_B < Fraction(3, 10)
    assert abs(rep.p_A_given_B - Fraction(298274, 1000000)) < Fraction(1, 1000000)


def test_verify_theorem2_families_clean(table):
    for cid in (1, 4, 5):
        reports = verify_theorem2(cid, 5, 120, table=table)
        assert all(r.passed for r in reports), cid
    for cid in (2, 3, 6, 7, 8, 9):
        reports = verify_theorem2(cid, 8, 120, table=table)
        assert reports and all(r.passed for r in reports), cid


def test_verify_theorem2_case10_failures(table):
    reports = verify_theorem2(10, 8, 300, table=table)
    failing = sorted(r.n for r in reports if not r.passed)
    assert failing == [37, 85]


def test_n23_bound_samples(table):
    for cid in ALL_CASES:
        for n in admissible_degrees(cid, 30, 90):
            spec = case_params(cid, n)
            value = cond_prob(spec, table=table).p_A_given_B
            assert check_n23_bound(spec, value).passed, (cid, n)


def test_divisor_classification_examples():
    rep = admissible_divisor_check(2, 9)
    assert rep.passed
    rep = admissible_divisor_check(10, 13)
    assert rep.passed  # d = 12 is the listed stray triple
    for cid in (6, 7, 8, 9):
        for n in admissible_degrees(cid, 8, 80):
            assert admissible_divisor_check(cid, n).passed, (cid, n)
    with pytest.raises(ValueError):
        admissible_divisor_check(1, 9)
    with pytest.raises(ValueError):
        admissible_divisor_check(2, 5)


def test_divisor_classification_stray_is_unique_to_13():
    # without the stray allowance n = 13 would fail: d = 12 divides 24,
    # is neither 8 nor 18/...; every later family-10 degree stays clean
    for n in admissible_degrees(10, 14, 200):
        assert admissible_divisor_check(10, n).passed, n


def test_table2_keys_are_admissible():
    for (cid, n), floor in TABLE2_EXCEPTIONS.items():
        assert admissible_n(cid, n)
        assert floor in (Fraction(3, 10), Fraction(3, 20))
