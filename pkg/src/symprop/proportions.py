"""Exact proportions of permutations whose order divides m.

Let P(n, m) be the proportion of the symmetric group S_n whose elements
have order dividing m, equivalently whose cycle lengths all divide m.
Conditioning on the length d of the cycle through a fixed point gives the
recursion

    P(n, m) = (1/n) * sum_{d | m, d <= n} P(n - d, m),      P(r, m) = 1 for r <= 0,

because a cycle of length d through the point can be completed in
(n-1)!/(n-d)! ways.  The signed variant attaches the sign of the
permutation, which multiplies each d-cycle by (-1)**(d-1); adding the two
and halving nothing (the normalisation is by n! throughout) yields the
proportion inside the alternating group:

    prop_alternating(n, m) = P(n, m) + Psigned(n, m)        for n >= 2.

Everything here is exact.  The memo table stores integer counts
C(n) = n! * P(n, m) rather than fractions, so a row is built with pure
big-integer arithmetic and a Fraction is only formed at query time.

The module also provides the split of P(n, m) by how three marked points
fall among the cycles, two divisor summations S and S-hat that majorize
n(n-1)(n-2) times cycle-count contributions, and brute-force oracles used
by the test suite.
"""

from __future__ import annotations

import csv
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _iter_permutations
from math import lcm
from typing import IO, Iterator, NamedTuple

from .divisors import divisor_list

__all__ = [
    "CycleType",
    "ProportionTable",
    "default_table",
    "prop_order_dividing",
    "prop_order_dividing_signed",
    "prop_alternating",
    "SplitProportions",
    "prop_split",
    "divisor_sum_capped",
    "divisor_sum_relaxed",
    "brute_force_prop",
    "iter_partitions",
]


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths of a permutation, stored ascending.

    Fixed points are included, so the parts sum to the degree n.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive integers")
        ordered = tuple(sorted(self.parts))
        if ordered != self.parts:
            object.__setattr__(self, "parts", ordered)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def order(self) -> int:
        return lcm(*self.parts)

    @property
    def is_even(self) -> bool:
        """Parity of the permutation: even iff n minus the cycle count is even."""
        return (self.n - len(self.parts)) % 2 == 0

    def counts(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def centralizer_order(self) -> int:
        out = 1
        for d, k in self.counts().items():
            out *= d**k
            for j in range(2, k + 1):
                out *= j
        return out

    def proportion_of_sym(self) -> Fraction:
        """Proportion of S_n with this cycle type (1 over the centralizer order)."""
        return Fraction(1, self.centralizer_order())


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield the partitions of n as descending tuples."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    top = n if max_part is None or max_part > n else max_part
    for first in range(top, 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


class ProportionTable:
    """Memoized rows of weighted counts C(n) = n! * P(n, m).

    One row per (m, signed) pair.  The recursion in integer counts is

        C(n) = sum_{d | m, d <= n} (n-1)!/(n-d)! * C(n-d),   C(0) = 1,

    with the factor (-1)**(d-1) inserted in signed rows.  Rows grow on
    demand and are never trimmed.
    """

    def __init__(self) -> None:
        self._rows: dict[tuple[int, bool], list[int]] = {}
        self._fact: list[int] = [1]

    def factorial(self, n: int) -> int:
        f = self._fact
        while len(f) <= n:
            f.append(f[-1] * len(f))
        return f[n]

    def _row(self, m: int, signed: bool, upto: int) -> list[int]:
        key = (m, signed)
        row = self._rows.get(key)
        if row is None:
            row = [1]
            self._rows[key] = row
        if len(row) <= upto:
            divs = divisor_list(m)
            self.factorial(upto)
            fact = self._fact
            for n in range(len(row), upto + 1):
                fn1 = fact[n - 1]
                total = 0
                for d in divs:
                    if d > n:
                        break
                    term = (fn1 // fact[n - d]) * row[n - d]
                    if signed and d % 2 == 0:
                        total -= term
                    else:
                        total += term
                row.append(total)
        return row

    def count(self, n: int, m: int, signed: bool = False) -> int:
        """The weighted count C(n) itself (n! times the proportion)."""
        if m < 1:
            raise ValueError("m must be positive")
        if n < 0:
            raise ValueError("count is defined for n >= 0")
        return self._row(m, signed, n)[n]

    def prop(self, n: int, m: int, signed: bool = False) -> Fraction:
        if m < 1:
            raise ValueError("m must be positive")
        if n <= 0:
            return Fraction(1)
        row = self._row(m, signed, n)
        return Fraction(row[n], self.factorial(n))

    def ensure(self, m: int, upto: int, signed: bool = False) -> None:
        self._row(m, signed, upto)

    def entries(self) -> Iterator[tuple[int, int, bool, Fraction]]:
        """All memoized values as (n, m, signed, value), sorted, n >= 1."""
        for m, signed in sorted(self._rows):
            row = self._rows[(m, signed)]
            for n in range(1, len(row)):
                yield n, m, signed, Fraction(row[n], self.factorial(n))

    def save_csv(self, out: IO[str]) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "m", "signed", "numerator", "denominator"])
        for n, m, signed, value in self.entries():
            writer.writerow([n, m, "1" if signed else "0", value.numerator, value.denominator])

    @classmethod
    def load_csv(cls, src: IO[str]) -> "ProportionTable":
        """Rebuild a table from ``save_csv`` output.

        Rows must be contiguous in n starting at 1 for each (m, signed);
        anything after a gap is ignored.  A value that is not an exact
        multiple of 1/n! is rejected.
        """
        table = cls()
        reader = csv.reader(src)
        header = next(reader, None)
        if header != ["n", "m", "signed", "numerator", "denominator"]:
            raise ValueError("unrecognized proportion-table CSV header")
        grouped: dict[tuple[int, bool], dict[int, Fraction]] = {}
        for rec in reader:
            if not rec:
                continue
            n, m, signed = int(rec[0]), int(rec[1]), rec[2] == "1"
            grouped.setdefault((m, signed), {})[n] = Fraction(int(rec[3]), int(rec[4]))
        for (m, signed), values in grouped.items():
            row = [1]
            n = 1
            while n in values:
                fact = table.factorial(n)
                num = values[n] * fact
                if num.denominator != 1:
                    raise ValueError(f"corrupt table entry at n={n}, m={m}")
                row.append(num.numerator)
                n += 1
            table._rows[(m, signed)] = row
        return table


_DEFAULT_TABLE = ProportionTable()


def default_table() -> ProportionTable:
    """The process-wide shared memo table."""
    return _DEFAULT_TABLE


def _table(table: ProportionTable | None) -> ProportionTable:
    return _DEFAULT_TABLE if table is None else table


def prop_order_dividing(n: int, m: int, *, table: ProportionTable | None = None) -> Fraction:
    """Proportion of S_n whose element orders divide m (n <= 0 gives 1)."""
    return _table(table).prop(n, m)


def prop_order_dividing_signed(
    n: int, m: int, *, table: ProportionTable | None = None
) -> Fraction:
    """Signed version: each permutation weighted by its sign before averaging."""
    return _table(table).prop(n, m, signed=True)


def prop_alternating(n: int, m: int, *, table: ProportionTable | None = None) -> Fraction:
    """Proportion of A_n whose element orders divide m; needs n >= 2.

    Averaging 1 + sign(g) over S_n keeps exactly the even permutations,
    at twice their weight, hence the sum of the plain and signed values.
    """
    if n < 2:
        raise ValueError("alternating-group proportion needs n >= 2")
    t = _table(table)
    return t.prop(n, m) + t.prop(n, m, signed=True)


class SplitProportions(NamedTuple):
    """P(n, m) split by how three marked points fall among the cycles."""

    one_cycle: Fraction  # all three points on a common cycle
    two_cycles: Fraction  # exactly two of them share a cycle
    three_cycles: Fraction  # pairwise distinct cycles

    @property
    def total(self) -> Fraction:
        return self.one_cycle + self.two_cycles + self.three_cycles


def prop_split(n: int, m: int, *, table: ProportionTable | None = None) -> SplitProportions:
    """Split P(n, m) by the cycle arrangement of three marked points.

    With divisors d of m as admissible cycle lengths:

      one_cycle   = (n-3)!/n! * sum_{d, 3 <= d <= n} (d-1)(d-2) P(n-d, m)
      two_cycles  = 3 (n-3)!/n! * sum_{d1, d2 >= 2, d1+d2 <= n} (d2-1) P(n-d1-d2, m)
      three_cycles= (n-3)!/n! * sum_{d1, d2, d3, sum <= n} P(n-d1-d2-d3, m)

    The three parts sum to P(n, m) exactly.
    """
    if n < 3:
        raise ValueError("the split needs n >= 3")
    if m < 1:
        raise ValueError("m must be positive")
    t = _table(table)
    divs = divisor_list(m)
    pref = Fraction(1, n * (n - 1) * (n - 2))

    p1 = sum(
        (((d - 1) * (d - 2)) * t.prop(n - d, m) for d in divs if 3 <= d <= n),
        Fraction(0),
    )

    pair_weight: Counter[int] = Counter()
    pair_count: Counter[int] = Counter()
    for d2 in divs:
        for d1 in divs:
            s = d1 + d2
            if s > n:
                break
            pair_count[s] += 1
            if d2 >= 2:
                pair_weight[s] += d2 - 1
    p2 = sum((w * t.prop(n - s, m) for s, w in sorted(pair_weight.items())), Fraction(0))

    triple_weight: Counter[int] = Counter()
    for s2, cnt in pair_count.items():
        for d3 in divs:
            s = s2 + d3
            if s > n:
                break
            triple_weight[s] += cnt
    p3 = sum((w * t.prop(n - s, m) for s, w in sorted(triple_weight.items())), Fraction(0))

    return SplitProportions(pref * p1, 3 * pref * p2, pref * p3)


# --- the two majorizing divisor summations -----------------------------------


def divisor_sum_capped(n: int, m: int) -> Fraction:
    """The summation S(n, m): partial sums of divisors capped at n.

    S(n,m) = sum_{d|m, 3<=d<=n} (d-1)(d-2)
             + 3 * sum_{d1,d2|m, 2<=d2, d1+d2<=n} (d2-1)
             + #{(d1,d2,d3): di|m, d1+d2+d3 <= n}         (ordered tuples).

    (n-3)!/n! times this majorizes P(n, m); needs n >= 3.
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    divs = divisor_list(m)
    first = sum((d - 1) * (d - 2) for d in divs if 3 <= d <= n)
    pairs = 0
    for d2 in divs:
        if d2 < 2:
            continue
        if d2 + 1 > n:
            break
        for d1 in divs:
            if d1 + d2 > n:
                break
            pairs += d2 - 1
    triples = 0
    for d1 in divs:
        if d1 + 2 > n:
            break
        for d2 in divs:
            if d1 + d2 + 1 > n:
                break
            for d3 in divs:
                if d1 + d2 + d3 > n:
                    break
                triples += 1
    return Fraction(first + 3 * pairs + triples)


class _RelaxedEvaluator:
    """Per-m closed-form evaluation of the relaxed summation.

    The relaxed variant caps individual divisors at the first argument but
    partial sums at m.  Split the admissible divisors into the small ones
    (3d <= m, so any pair or triple of them passes the sum cap) and the
    rest, which can only be m/2 or m: a divisor in (m/3, m] other than
    those would leave a cofactor strictly between 1 and 3.  Everything
    then reduces to prefix sums over the small divisors plus a correction
    for m/2, with one genuinely quadratic piece (pairs of small divisors
    summing to at most m/2) precomputed incrementally.
    """

    __slots__ = ("m", "ds", "quad", "lin", "s_cap", "half", "pc")

    def __init__(self, m: int) -> None:
        ds = divisor_list(m)
        self.m = m
        self.ds = ds
        quad = [0]
        lin = [0]
        for d in ds:
            quad.append(quad[-1] + (d - 1) * (d - 2))
            lin.append(lin[-1] + (d - 1))
        self.quad = quad
        self.lin = lin
        self.s_cap = bisect_right(ds, m // 3)
        for d in ds[self.s_cap :]:
            assert d == m or 2 * d == m
        self.half = m // 2 if m % 2 == 0 else 0
        cap = m // 2
        pc = [0] * (self.s_cap + 1)
        for k in range(1, self.s_cap + 1):
            x = ds[k - 1]
            j = bisect_right(ds, cap - x, 0, k - 1)
            pc[k] = pc[k - 1] + 2 * j + (1 if 2 * x <= cap else 0)
        self.pc = pc

    def value(self, arg: int) -> int:
        ds = self.ds
        m = self.m
        i = bisect_right(ds, arg)
        first = self.quad[i]
        s = min(i, self.s_cap)
        h = 1 if self.half and self.half <= arg else 0
        w = self.lin[s]
        pairs = w * (s + h)
        if h:
            pairs += (m // 2 - 1) * (s + 1)
        third = s**3 + 3 * h * self.pc[s]
        return first + 3 * pairs + third


@lru_cache(maxsize=None)
def _relaxed_evaluator(m: int) -> _RelaxedEvaluator:
    return _RelaxedEvaluator(m)


def divisor_sum_relaxed(n: int, m: int) -> Fraction:
    """The relaxed summation: divisors capped at n, partial sums at m.

    Same three sums as :func:`divisor_sum_capped` but with pair and triple
    sums allowed up to m while each divisor stays <= n.  Needs n >= 3.
    Evaluated in closed form; the test suite compares it against naive
    triple loops.
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    if m < 1:
        raise ValueError("m must be positive")
    return Fraction(_relaxed_evaluator(m).value(n))


def _divisor_sum_relaxed_naive(n: int, m: int) -> int:
    # reference implementation, kept for the dual-route tests
    divs = [d for d in divisor_list(m) if d <= n]
    first = sum((d - 1) * (d - 2) for d in divs if d >= 3)
    pairs = sum(
        d2 - 1 for d2 in divs for d1 in divs if d2 >= 2 and d1 + d2 <= m
    )
    triples = sum(
        1
        for d1 in divs
        for d2 in divs
        for d3 in divs
        if d1 + d2 + d3 <= m
    )
    return first + 3 * pairs + triples


# --- oracles -----------------------------------------------------------------


def _cycle_parts_of_mapping(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            parts.append(length)
    return tuple(sorted(parts))


@lru_cache(maxsize=None)
def _sym_type_census(n: int) -> dict[tuple[int, ...], int]:
    """Cycle-type counts of S_n by full enumeration.  Keep n small."""
    counts: Counter[tuple[int, ...]] = Counter()
    for perm in _iter_permutations(range(n)):
        counts[_cycle_parts_of_mapping(perm)] += 1
    return dict(counts)


def brute_force_prop(
    n: int, m: int, mode: str = "permutations", signed: bool = False
) -> Fraction:
    """Oracle for the order-dividing proportion, independent of the recursion.

    mode "permutations" enumerates all n! elements (n <= 10); mode
    "partitions" sums 1/(prod d**k_d * k_d!) over partitions of n into
    divisors of m via dynamic programming (n <= 60).  ``signed`` weights
    each element by its sign.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if mode == "permutations":
        if not 1 <= n <= 10:
            raise ValueError("permutation enumeration is limited to n <= 10")
        total = 0
        fact = 1
        for k in range(2, n + 1):
            fact *= k
        for parts, cnt in _sym_type_census(n).items():
            if m % lcm(*parts) == 0:
                if signed and (n - len(parts)) % 2 == 1:
                    total -= cnt
                else:
                    total += cnt
        return Fraction(total, fact)
    if mode == "partitions":
        if not 1 <= n <= 60:
            raise ValueError("partition DP is limited to n <= 60")
        return _partition_dp(n, m, signed)
    raise ValueError(f"unknown mode: {mode!r}")


def _partition_dp(n: int, m: int, signed: bool) -> Fraction:
    divs = [d for d in divisor_list(m) if d <= n]

    memo: dict[tuple[int, int], Fraction] = {}

    def f(i: int, rem: int) -> Fraction:
        if rem == 0:
            return Fraction(1)
        if i == len(divs):
            return Fraction(0)
        key = (i, rem)
        got = memo.get(key)
        if got is not None:
            return got
        d = divs[i]
        total = Fraction(0)
        coef = Fraction(1)
        k = 0
        while k * d <= rem:
            if k:
                coef /= d * k
            w = -coef if signed and d % 2 == 0 and k % 2 == 1 else coef
            total += w * f(i + 1, rem - k * d)
            k += 1
        memo[key] = total
        return total

    return f(0, n)
