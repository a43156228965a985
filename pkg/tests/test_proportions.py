import io
from fractions import Fraction
from math import factorial

import pytest

from symprop.proportions import (
    CycleType,
    ProportionTable,
    brute_force_prop,
    divisor_sum_capped,
    divisor_sum_relaxed,
    _divisor_sum_relaxed_naive,
    iter_partitions,
    prop_alternating,
    prop_order_dividing,
    prop_order_dividing_signed,
    prop_split,
)


def test_cycle_type_basics():
    t = CycleType((3, 1, 2))
    assert t.parts == (1, 2, 3)
    assert t.n == 6
    assert t.order == 6
    assert not t.is_even
    assert CycleType((5,)).is_even
    assert CycleType((2, 2)).is_even


def test_cycle_type_centralizer():
    # 2^2 * 2! * 3 = 24 permutations commute with (..)(..)(...)  in S_7
    t = CycleType((2, 2, 3))
    assert t.centralizer_order() == 24
    assert t.proportion_of_sym() == Fraction(1, 24)


def test_class_sizes_sum_to_one():
    for n in range(1, 9):
        total = sum(CycleType(p).proportion_of_sym() for p in iter_partitions(n))
        assert total == 1


def test_iter_partitions_counts():
    # partition numbers 1, 2, 3, 5, 7, 11, 15, 22
    for n, count in enumerate((1, 2, 3, 5, 7, 11, 15, 22), start=1):
        assert sum(1 for _ in iter_partitions(n)) == count
    assert list(iter_partitions(5, max_part=2)) == [(2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_prop_anchors(table):
    assert table.prop(4, 3) == Fraction(3, 8)
    assert table.prop(5, 5) == Fraction(5, 24)
    assert table.prop(4, 2) == Fraction(5, 12)
    for m in (1, 2, 7, 30):
        assert table.prop(1, m) == 1
    assert prop_order_dividing(9, 6) == table.prop(9, 6)


def test_prop_nonpositive_degree_convention(table):
    for n in (0, -1, -5):
        assert table.prop(n, 4) == 1
        assert table.prop(n, 4, signed=True) == 1


def test_prop_range(table):
    for n in range(1, 12):
        for m in range(1, 13):
            v = table.prop(n, m)
            s = table.prop(n, m, signed=True)
            assert 0 <= v <= 1
            assert -1 <= s <= 1
            assert abs(s) <= v


def test_signed_anchors(table):
    assert table.prop(4, 2, signed=True) == Fraction(-1, 12)
    assert table.prop(3, 2, signed=True) == Fraction(-1, 3)
    assert prop_order_dividing_signed(4, 2) == Fraction(-1, 12)
    # odd m keeps every contributing element even
    for n in range(1, 10):
        for m in (1, 3, 5, 7, 9, 15):
            assert table.prop(n, m, signed=True) == table.prop(n, m)


def test_alternating_anchors(table):
    assert prop_alternating(4, 2, table=table) == Fraction(1, 3)
    assert prop_alternating(5, 5, table=table) == Fraction(5, 12)
    for n in range(2, 9):
        assert prop_alternating(n, 1, table=table) == Fraction(2, factorial(n))


def test_alternating_vs_enumeration(table):
    for n in range(2, 8):
        for m in range(1, 10):
            share = sum(
                CycleType(p).proportion_of_sym()
                for p in iter_partitions(n)
                if CycleType(p).is_even and m % CycleType(p).order == 0
            )
            assert prop_alternating(n, m, table=table) == 2 * share


def test_split_anchors(table):
    part = prop_split(3, 3, table=table)
    assert part == (Fraction(1, 3), Fraction(0), Fraction(1, 6))
    assert prop_split(4, 3, table=table).total == Fraction(3, 8)
    # order dividing 7 in S_8 means identity or 7-cycle; a 7-cycle fixes
    # one of the 8 points, which lands among the three marked ones with
    # probability 3/8, so the shared-pair component is (1/7)(3/8)
    part = prop_split(8, 7, table=table)
    assert part.two_cycles == Fraction(3, 56)
    assert part.one_cycle == Fraction(1, 7) - Fraction(3, 56)
    assert part.total == table.prop(8, 7)


def test_split_identity_window(table):
    for n in range(3, 16):
        for m in range(1, 2 * n + 1):
            assert prop_split(n, m, table=table).total == table.prop(n, m)


def test_brute_force_modes_agree(table):
    for n in range(1, 8):
        for m in (1, 2, 3, 4, 6, 12):
            by_perm = brute_force_prop(n, m, mode="permutations")
            by_part = brute_force_prop(n, m, mode="partitions")
            assert by_perm == by_part == table.prop(n, m)
            assert brute_force_prop(n, m, mode="permutations", signed=True) == table.prop(
                n, m, signed=True
            )


def test_recursion_vs_partition_oracle(table):
    for n in (20, 33, 40):
        for m in (7, 24, n, 2 * n):
            assert table.prop(n, m) == brute_force_prop(n, m, mode="partitions")
            assert table.prop(n, m, signed=True) == brute_force_prop(
                n, m, mode="partitions", signed=True
            )


def test_divisor_sum_relaxed_vs_naive():
    for n, m in ((10, 10), (12, 24), (25, 24), (17, 16), (30, 60)):
        assert divisor_sum_relaxed(n, m) == _divisor_sum_relaxed_naive(n, m)


def test_divisor_sum_capped_below_relaxed():
    # the capped triple sum stays below the uncapped majorant while n <= m
    for m in (6, 10, 12, 24, 36):
        for n in range(3, m + 1):
            assert divisor_sum_capped(n, m) <= divisor_sum_relaxed(n, m)


def test_divisor_sum_relaxed_m1():
    for n in (3, 5, 10):
        assert divisor_sum_relaxed(n, 1) == 0


def test_capped_sum_brute(table):
    # S(n,m) against a direct triple loop over ordered divisor triples
    def naive(n, m):
        from symprop.divisors import divisor_list

        ds = [d for d in divisor_list(m) if d <= n]
        tot = 0
        for d1 in ds:
            if 3 <= d1:
                tot += (d1 - 1) * (d1 - 2)
        for d1 in ds:
            for d2 in ds:
                if 2 <= d2 and d1 + d2 <= n:
                    tot += 3 * (d2 - 1)
        for d1 in ds:
            for d2 in ds:
                for d3 in ds:
                    if d1 + d2 + d3 <= n:
                        tot += 1
        return tot

    for n, m in ((6, 6), (10, 10), (12, 6), (9, 12), (20, 19)):
        assert divisor_sum_capped(n, m) == naive(n, m)


def test_table_rows_are_immutable_views(table):
    v1 = table.prop(6, 6)
    before = {(n, m, s): v for n, m, s, v in table.entries()}
    table.prop(12, 6)
    table.prop(6, 6, signed=True)
    after = {(n, m, s): v for n, m, s, v in table.entries()}
    assert v1 == table.prop(6, 6)
    for key, val in before.items():
        assert after[key] == val


def test_csv_round_trip(table):
    table.ensure(9, 14)
    table.ensure(5, 12, signed=True)
    buf = io.StringIO()
    table.save_csv(buf)
    clone = ProportionTable.load_csv(io.StringIO(buf.getvalue()))
    assert clone.prop(14, 9) == table.prop(14, 9)
    assert clone.prop(12, 5, signed=True) == table.prop(12, 5, signed=True)
    buf2 = io.StringIO()
    clone.save_csv(buf2)
    assert buf.getvalue() == buf2.getvalue()


def test_load_rejects_corrupt_value():
    bad = "n,m,signed,numerator,denominator\n1,3,0,1,2\n"
    with pytest.raises(ValueError):
        ProportionTable.load_csv(io.StringIO(bad))


def test_brute_force_prop_guards():
    with pytest.raises(ValueError):
        brute_force_prop(11, 3, mode="permutations")
    with pytest.raises(ValueError):
        brute_force_prop(61, 3, mode="partitions")
    with pytest.raises(ValueError):
        brute_force_prop(5, 3, mode="nonsense")
