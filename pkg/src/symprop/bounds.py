"""Upper bounds on the order-dividing proportions, verified exactly.

The central claim handled here: for m >= n - 1,

    P(n, m) <= 1/n + gamma(m) * m / n**2,

with gamma the three-step constant from :mod:`symprop.divisors`.  The
sweep checks it by cross-multiplied big-integer comparison, so no
rounding is involved anywhere.

The supporting computational step works divisor by divisor: for every
divisor d of m lying above gamma(m)*sqrt(m), the relaxed summation must
stay below (d-1)(d-2)(1 + gamma*m/d).  That check fails precisely for
m = 72 and m = 120, and for those two values the capped summation is
instead compared directly against (n-1)(n-2)(1 + gamma*m/n) over the
whole range sqrt(gamma*m) <= n <= m + 1.

For the tail in m there is a closed expression

    f(m, c) = 3c^2 sqrt(gm) / (m^(1/3) (sqrt(gm) - 1))
              + c^3 sqrt(gm) / ((sqrt(gm) - 1)(sqrt(gm) - 2)),

g = gamma(m), evaluated here in certified rational enclosures; the fact
that f(19020, c0) <= 1 anchors the large-m branch.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from .divisors import C0_CUBED, divisor_list, divisor_rich_candidates, gamma_value
from .enclosure import Interval, cbrt_enclosure, sqrt_enclosure
from .proportions import (
    ProportionTable,
    _relaxed_evaluator,
    default_table,
    divisor_sum_capped,
)
from .reports import BoundReport

__all__ = [
    "prop_upper_bound",
    "check_prop_upper_bound",
    "sweep_prop_bound",
    "prop_upper_bound_near",
    "verify_shat_condition",
    "verify_exceptional_m",
    "sweep_divisor_majorant",
    "excess_ratio_bound",
    "check_excess_threshold",
    "check_excess_monotone",
    "EXPECTED_MAJORANT_FAILURES",
]

EXPECTED_MAJORANT_FAILURES = frozenset({72, 120})


def prop_upper_bound(n: int, m: int) -> Fraction:
    """The bound 1/n + gamma(m)*m/n**2; requires m >= n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if m < n - 1:
        raise ValueError("the bound needs m >= n - 1")
    return Fraction(1, n) + gamma_value(m) * m / n**2


def check_prop_upper_bound(
    n: int, m: int, *, table: ProportionTable | None = None
) -> BoundReport:
    t = table if table is not None else default_table()
    lhs = t.prop(n, m)
    rhs = prop_upper_bound(n, m)
    return BoundReport("prop-upper", n, m, None, lhs, rhs, lhs <= rhs)


def _sweep_one_m(args: tuple[int, int, int]) -> list[tuple[int, int]]:
    m, n_first, n_last = args
    table = ProportionTable()
    table.ensure(m, n_last)
    return _scan_row(table, m, n_first, n_last)


def _scan_row(table: ProportionTable, m: int, n_first: int, n_last: int) -> list[tuple[int, int]]:
    g = gamma_value(m)
    p, q = g.numerator, g.denominator
    bad = []
    table.ensure(m, n_last)
    for n in range(n_first, n_last + 1):
        # P <= 1/n + g*m/n^2  <=>  C(n) * n^2 * q <= n! * (n*q + p*m)
        lhs = table.count(n, m) * n * n * q
        rhs = table.factorial(n) * (n * q + p * m)
        if lhs > rhs:
            bad.append((n, m))
    return bad


def sweep_prop_bound(
    n_lo: int = 5,
    n_hi: int = 300,
    m_multiplier: int = 3,
    *,
    table: ProportionTable | None = None,
    progress: Callable[[str], None] | None = None,
    jobs: int = 1,
) -> list[BoundReport]:
    """Check P(n,m) <= 1/n + gamma(m)m/n^2 for n_lo <= n <= n_hi and
    n-1 <= m <= m_multiplier*n.  Returns only the failures (expected none).
    """
    if not 5 <= n_lo <= n_hi:
        raise ValueError("need 5 <= n_lo <= n_hi")
    if m_multiplier < 1:
        raise ValueError("m_multiplier must be >= 1")
    tasks: list[tuple[int, int, int]] = []
    for m in range(n_lo - 1, m_multiplier * n_hi + 1):
        # n must satisfy n_lo <= n <= n_hi, n <= m+1 and m <= mult*n
        n_first = max(n_lo, -(-m // m_multiplier))
        n_last = min(n_hi, m + 1)
        if n_first <= n_last:
            tasks.append((m, n_first, n_last))

    bad_pairs: list[tuple[int, int]] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, res in enumerate(pool.map(_sweep_one_m, tasks, chunksize=16)):
                bad_pairs.extend(res)
                if progress is not None and (i + 1) % 200 == 0:
                    progress(f"bound sweep: {i + 1}/{len(tasks)} rows")
    else:
        t = table if table is not None else default_table()
        for i, (m, n_first, n_last) in enumerate(tasks):
            bad_pairs.extend(_scan_row(t, m, n_first, n_last))
            if progress is not None and (i + 1) % 200 == 0:
                progress(f"bound sweep: {i + 1}/{len(tasks)} rows")

    bad_pairs.sort()
    out = []
    t = table if table is not None else default_table()
    for n, m in bad_pairs:
        out.append(check_prop_upper_bound(n, m, table=t))
    return out


def prop_upper_bound_near(n: int, m: int) -> Fraction:
    """Sharper bound 1/m + d(m)(2 + 4*gamma(m))/n^2, valid for m in {n-1, n}."""
    if m not in (n - 1, n):
        raise ValueError("this bound needs m = n - 1 or m = n")
    d = len(divisor_list(m))
    return Fraction(1, m) + Fraction(d * (2 + 4 * gamma_value(m)), 1) / n**2


# --- the divisor-by-divisor computational step -------------------------------


def verify_shat_condition(m: int) -> BoundReport:
    """Check, for every divisor d of m with d > gamma(m) * sqrt(m), that

        S_relaxed(d, m) <= (d-1)(d-2)(1 + gamma(m)*m/d).

    The threshold comparison is exact (d**2 * q**2 > p**2 * m for
    gamma = p/q) and the main comparison is cross-multiplied by d*q.
    The report fails iff some qualifying divisor violates the
    inequality; the witness names all of them.  Across 2 <= m <= 2000
    together with the refined divisor-count candidates, the failures
    are exactly m = 72 and m = 120; for those two values
    :func:`verify_exceptional_m` settles the full n-range directly.
    A divisor landing exactly on the threshold (d*q == p*sqrt(m),
    which happens at square m such as m = 100, d = 25) is excluded,
    as the comparison is strict; the witness notes any such divisor.
    """
    if m < 2:
        raise ValueError("needs m >= 2")
    g = gamma_value(m)
    p, q = g.numerator, g.denominator
    ev = _relaxed_evaluator(m)
    failing: list[int] = []
    boundary: list[int] = []
    tight: tuple[Fraction, int] | None = None  # (lhs/rhs ratio, d)
    checked = 0
    p2m = p * p * m
    for d in divisor_list(m):
        d2q2 = d * d * q * q
        if d2q2 == p2m:
            boundary.append(d)
        if d2q2 <= p2m:
            continue
        checked += 1
        lhs = ev.value(d) * d * q
        rhs = (d - 1) * (d - 2) * (d * q + p * m)
        if lhs > rhs:
            failing.append(d)
            if tight is None or Fraction(lhs, rhs) > tight[0]:
                tight = (Fraction(lhs, rhs), d)
        else:
            ratio = Fraction(lhs, rhs)
            if tight is None or ratio > tight[0]:
                tight = (ratio, d)
    notes = []
    if failing:
        notes.append("fails at d=" + ",".join(map(str, failing)))
    elif checked == 0:
        notes.append("no divisor above gamma*sqrt(m)")
    if boundary:
        notes.append(
            "d == gamma*sqrt(m) at d=" + ",".join(map(str, boundary)) + " (excluded, strict)"
        )
    if tight is not None:
        d = tight[1]
        lhs = Fraction(ev.value(d) * d * q)
        rhs = Fraction((d - 1) * (d - 2) * (d * q + p * m))
    else:
        d = None
        lhs = rhs = Fraction(0)
    return BoundReport(
        "relaxed-majorant", None, m, d, lhs, rhs, not failing, "; ".join(notes)
    )


def verify_exceptional_m(m: int) -> BoundReport:
    """Direct check S_capped(n, m) <= (n-1)(n-2)(1 + gamma*m/n) for all
    n with sqrt(gamma*m) <= n <= m + 1; only m = 72 and m = 120 qualify.
    """
    if m not in (72, 120):
        raise ValueError("direct check applies to m = 72 and m = 120 only")
    g = gamma_value(m)
    p, q = g.numerator, g.denominator
    n0 = isqrt(p * m // q)
    while n0 * n0 * q < p * m:
        n0 += 1
    while n0 > 1 and (n0 - 1) * (n0 - 1) * q >= p * m:
        n0 -= 1
    failing: list[int] = []
    tight: tuple[Fraction, int] | None = None
    for n in range(n0, m + 2):
        lhs = int(divisor_sum_capped(n, m)) * n * q
        rhs = (n - 1) * (n - 2) * (n * q + p * m)
        ratio = Fraction(lhs, rhs)
        if lhs > rhs:
            failing.append(n)
        if tight is None or ratio > tight[0]:
            tight = (ratio, n)
    n_t = tight[1] if tight is not None else None
    lhs = Fraction(int(divisor_sum_capped(n_t, m)) * n_t * q) if n_t else Fraction(0)
    rhs = Fraction((n_t - 1) * (n_t - 2) * (n_t * q + p * m)) if n_t else Fraction(0)
    witness = f"n range {n0}..{m + 1}"
    if failing:
        witness += "; fails at n=" + ",".join(map(str, failing))
    return BoundReport("capped-majorant", n_t, m, None, lhs, rhs, not failing, witness)


def _majorant_worker(m: int) -> tuple[int, bool]:
    return m, verify_shat_condition(m).passed


def sweep_divisor_majorant(
    m_max: int = 2000,
    *,
    include_candidates: bool = True,
    progress: Callable[[str], None] | None = None,
    jobs: int = 1,
) -> list[BoundReport]:
    """Run the divisor-by-divisor check for 2 <= m <= m_max, plus every
    candidate from the refined divisor-count bound exceeding m_max.

    Returns the failing reports; the expected failure set is
    {72, 120} intersected with the scanned range.
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    ms: list[int] = list(range(2, m_max + 1))
    if include_candidates:
        ms.extend(c for c in divisor_rich_candidates() if c > m_max)
    failures: list[BoundReport] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, (m, ok) in enumerate(pool.map(_majorant_worker, ms, chunksize=64)):
                if not ok:
                    failures.append(verify_shat_condition(m))
                if progress is not None and (i + 1) % 2000 == 0:
                    progress(f"divisor majorant: {i + 1}/{len(ms)} values of m")
    else:
        for i, m in enumerate(ms):
            rep = verify_shat_condition(m)
            if not rep.passed:
                failures.append(rep)
            if progress is not None and (i + 1) % 2000 == 0:
                progress(f"divisor majorant: {i + 1}/{len(ms)} values of m")
    failures.sort(key=lambda rep: rep.m or 0)
    return failures


# --- certified tail evaluation -----------------------------------------------


def excess_ratio_bound(m: int, c_cubed: Fraction = C0_CUBED, digits: int = 40) -> Interval:
    """Certified enclosure of f(m, c) for c = c_cubed**(1/3); needs gamma*m > 4."""
    if m < 2:
        raise ValueError("needs m >= 2 so that sqrt(gamma*m) > 2")
    c_cubed = Fraction(c_cubed)
    if c_cubed <= 0:
        raise ValueError("c_cubed must be positive")
    g = sqrt_enclosure(gamma_value(m) * m, digits)
    if not g.lo > 2:
        raise ValueError("sqrt(gamma*m) must exceed 2")
    c_sq = cbrt_enclosure(c_cubed * c_cubed, digits)
    m_cbrt = cbrt_enclosure(m, digits)
    term1 = (3 * c_sq * g) / (m_cbrt * (g - 1))
    term2 = (c_cubed * g) / ((g - 1) * (g - 2))
    return term1 + term2


def check_excess_threshold(digits: int = 40) -> BoundReport:
    """Certify f(19020, c0) <= 1 by enclosure."""
    box = excess_ratio_bound(19020, C0_CUBED, digits)
    return BoundReport(
        "excess-threshold",
        None,
        19020,
        None,
        box.hi,
        Fraction(1),
        box.entirely_le(1),
        f"enclosure width {float(box.width):.2e}",
    )


def check_excess_monotone(
    m_values: Sequence[int] = (19020, 40000, 10**5, 10**6, 10**7, 10**8),
    c_cubed: Fraction = C0_CUBED,
    digits: int = 40,
) -> BoundReport:
    """Check f(m, c) is non-increasing across the sampled grid.

    All sampled m must lie in the constant-gamma tail (m > 360); each
    adjacent pair is compared through the enclosures, so a pass proves
    the ordering of the true values at the sampled points.
    """
    if any(m <= 360 for m in m_values):
        raise ValueError("sample the constant-gamma tail only (m > 360)")
    if list(m_values) != sorted(set(m_values)):
        raise ValueError("m_values must be strictly increasing")
    boxes = [excess_ratio_bound(m, c_cubed, digits) for m in m_values]
    bad = [
        i for i in range(len(boxes) - 1) if not boxes[i].lo >= boxes[i + 1].hi
    ]
    witness = "grid " + ",".join(map(str, m_values))
    if bad:
        pairs = ", ".join(f"({m_values[i]},{m_values[i + 1]})" for i in bad)
        witness += "; order not certified at " + pairs
        lhs, rhs = boxes[bad[0] + 1].hi, boxes[bad[0]].lo
    else:
        lhs, rhs = boxes[-1].hi, boxes[0].lo
    return BoundReport(
        "excess-monotone",
        None,
        m_values[0],
        None,
        lhs,
        rhs,
        not bad,
        witness,
    )
