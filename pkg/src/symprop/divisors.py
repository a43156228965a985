"""Divisor counts, divisor-count growth bounds, and related exact checks.

The number of divisors d(n) grows slower than any power of n, but the
verification work in this package needs completely explicit constants.
The bounds handled here all have the shape

    d(n) <= C * n**(1/3)        (or C * n**(1/2)),

with C an exact cube root (or square root) of a rational.  Every check is
performed by clearing the root: ``d(n)**3 * denom <= num * n``.  No floats
are involved, so a reported pass is a proof for that n.

Also provided: the step function ``gamma`` used by the proportion bounds,
the per-prime factors ``(alpha+1)/p**(alpha/3)`` that drive the cube-root
constants, the explicit finite set of candidate exceptions to the refined
bound, and a quadratic divisor-sum inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Callable

import numpy as np

from .enclosure import Interval, cbrt_enclosure
from .reports import BoundReport

__all__ = [
    "DivisorProfile",
    "GammaValue",
    "divisors_of",
    "divisor_list",
    "gamma",
    "gamma_value",
    "peak_exponent",
    "divisor_ratio_factor",
    "CUBE_CONSTANTS",
    "C0_CUBED",
    "COUNT_BOUND_VARIANTS",
    "applicable_variants",
    "check_divisor_count_bound",
    "divisor_rich_candidates",
    "is_divisor_rich_candidate",
    "check_quadratic_divisor_sum",
    "sweep_quadratic_divisor_sums",
    "divisor_count_sieve",
    "sweep_divisor_count_bounds",
]


@cache
def divisor_list(n: int) -> tuple[int, ...]:
    """Ascending tuple of the positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    small = []
    large = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


@dataclass(frozen=True)
class DivisorProfile:
    """The divisors of one integer, with their count."""

    n: int
    divisors: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.divisors)


def divisors_of(n: int) -> DivisorProfile:
    return DivisorProfile(n, divisor_list(n))


# --- the gamma step function -------------------------------------------------

GAMMA_SMALL = Fraction(3345, 1000)  # m <= 60
GAMMA_MID = Fraction(5, 2)  # 60 < m <= 360
GAMMA_LARGE = Fraction(2)  # m > 360


@dataclass(frozen=True)
class GammaValue:
    m: int
    gamma: Fraction


def gamma_value(m: int) -> Fraction:
    """Step constant used in the O(m/n^2) proportion bounds."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > 360:
        return GAMMA_LARGE
    if m > 60:
        return GAMMA_MID
    return GAMMA_SMALL


def gamma(m: int) -> GammaValue:
    return GammaValue(m, gamma_value(m))


# --- cube-root divisor-count bounds ------------------------------------------


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def peak_exponent(p: int) -> int:
    """The exponent at which (alpha+1)/p**(alpha/3) peaks over alpha >= 0.

    Equals floor(1/(p**(1/3)-1)) for prime p, computed without floats:
    the largest k >= 1 with p*k**3 <= (k+1)**3, and 0 when there is none.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    best = 0
    k = 1
    while p * k**3 <= (k + 1) ** 3:
        best = k
        k += 1
    return best


def divisor_ratio_factor(p: int, alpha: int, digits: int = 30) -> Interval:
    """Enclosure of (alpha+1)/p**(alpha/3), the per-prime factor of d(n)/n^(1/3)."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    # (alpha+1)/p**(alpha/3) = cbrt((alpha+1)**3 / p**alpha)
    return cbrt_enclosure(Fraction((alpha + 1) ** 3, p**alpha), digits)


# Cubes of the constants C in d(n) <= C * n**(1/3), keyed by variant.
CUBE_CONSTANTS: dict[str, Fraction] = {
    "third": Fraction(1536, 35),  # all n
    "odd": Fraction(192, 35),  # odd n
    "no9": Fraction(4096, 105),  # 9 does not divide n
    "odd-no9": Fraction(512, 105),  # odd n, 9 does not divide n
    "c0": Fraction(768, 35),  # all n outside the candidate set below
}

C0_CUBED = CUBE_CONSTANTS["c0"]

COUNT_BOUND_VARIANTS = ("half", "third", "odd", "no9", "odd-no9", "c0")


def applicable_variants(n: int) -> tuple[str, ...]:
    out = ["half", "third"]
    if n % 2 == 1:
        out.append("odd")
    if n % 9 != 0:
        out.append("no9")
    if n % 2 == 1 and n % 9 != 0:
        out.append("odd-no9")
    out.append("c0")
    return tuple(out)


def check_divisor_count_bound(n: int, variant: str) -> BoundReport:
    """Check d(n) against the growth bound selected by ``variant``.

    Variants: "half" checks d(n)^2 <= 3n; "third", "odd", "no9" and
    "odd-no9" check d(n)^3 <= C^3 * n with the matching cube constant;
    "c0" checks the refined constant and treats membership in the
    explicit candidate set as a pass (the bound promises nothing there).
    Parity-restricted variants raise ValueError when n does not qualify.
    """
    d = len(divisor_list(n))
    if variant == "half":
        lhs, rhs = Fraction(d * d), Fraction(3 * n)
        return BoundReport("divcount-half", n, None, d, lhs, rhs, lhs <= rhs)
    if variant not in CUBE_CONSTANTS:
        raise ValueError(f"unknown variant: {variant!r}")
    if variant in ("odd", "odd-no9") and n % 2 == 0:
        raise ValueError(f"variant {variant!r} needs odd n")
    if variant in ("no9", "odd-no9") and n % 9 == 0:
        raise ValueError(f"variant {variant!r} needs n not divisible by 9")
    cube = CUBE_CONSTANTS[variant]
    lhs = Fraction(d**3)
    rhs = cube * n
    ok = lhs <= rhs
    witness = ""
    if variant == "c0" and not ok:
        if is_divisor_rich_candidate(n):
            ok = True
            witness = "listed candidate exception"
        else:
            witness = "bound fails and n is not a listed candidate"
    return BoundReport(f"divcount-{variant}", n, None, d, lhs, rhs, ok, witness)


@cache
def divisor_rich_candidates() -> tuple[int, ...]:
    """All integers 2^a 3^b 5^c 7^d m with 1<=a<=6, 0<=b<=4, 0<=c<=2,
    0<=d<=1 and m in {1, 11, 13}, ascending.

    Every n whose divisor count exceeds the refined cube-root bound lies in
    this set; the converse is not promised, and members are not filtered.
    """
    vals = sorted(
        2**a * 3**b * 5**c * 7**d * m
        for a in range(1, 7)
        for b in range(0, 5)
        for c in range(0, 3)
        for d in range(0, 2)
        for m in (1, 11, 13)
    )
    assert len(vals) == len(set(vals)) == 540
    assert vals[-1] == 2**6 * 3**4 * 5**2 * 7 * 13 == 11_793_600
    return tuple(vals)


@cache
def _candidate_set() -> frozenset[int]:
    return frozenset(divisor_rich_candidates())


def is_divisor_rich_candidate(n: int) -> bool:
    return n in _candidate_set()


# --- quadratic divisor sums --------------------------------------------------


def check_quadratic_divisor_sum(n: int, a: int, b: int) -> BoundReport:
    """Check sum_{d|n, a<=d<=b} (d-1)(d-2) <= (b-1)(b-2) + nb - na.

    Requires 1 <= a <= b <= n.
    """
    if not (1 <= a <= b <= n):
        raise ValueError("need 1 <= a <= b <= n")
    total = sum((d - 1) * (d - 2) for d in divisor_list(n) if a <= d <= b)
    rhs = (b - 1) * (b - 2) + n * b - n * a
    return BoundReport(
        "quad-divisor-sum",
        n,
        None,
        None,
        Fraction(total),
        Fraction(rhs),
        total <= rhs,
        f"a={a} b={b}",
    )


def sweep_quadratic_divisor_sums(
    n_max: int, progress: Callable[[str], None] | None = None
) -> list[BoundReport]:
    """Exhaustively check the quadratic divisor-sum bound for all
    1 <= a <= b <= n <= n_max.  Returns the failures (expected empty).

    For each n this runs in O(n): with Q(b) the partial sum of (d-1)(d-2)
    over divisors d <= b, the worst a for a given b is the one maximising
    n*a - Q(a-1), and that maximum can be carried along b.
    """
    failures: list[BoundReport] = []
    for n in range(1, n_max + 1):
        divs = divisor_list(n)
        idx = 0
        q_prev = 0  # Q(b-1)
        q_curr = 0  # Q(b)
        best = 0  # max over a <= b of (n*a - Q(a-1))
        for b in range(1, n + 1):
            q_prev = q_curr
            if idx < len(divs) and divs[idx] == b:
                q_curr += (b - 1) * (b - 2)
                idx += 1
            cand = n * b - q_prev
            if cand > best:
                best = cand
            # failure iff Q(b) - (b-1)(b-2) - n*b + max_a(n*a - Q(a-1)) > 0
            if q_curr - (b - 1) * (b - 2) - n * b + best > 0:
                failures.append(_locate_quad_failure(n, b))
        if progress is not None and n % 500 == 0:
            progress(f"quadratic divisor sums: n={n}/{n_max}")
    return failures


def _locate_quad_failure(n: int, b: int) -> BoundReport:
    for a in range(1, b + 1):
        rep = check_quadratic_divisor_sum(n, a, b)
        if not rep.passed:
            return rep
    raise AssertionError("running-max flagged a failure but none found")


# --- sieve sweeps ------------------------------------------------------------


def divisor_count_sieve(limit: int) -> np.ndarray:
    """Array c with c[n] = d(n) for 1 <= n <= limit (c[0] = 0)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    counts = np.zeros(limit + 1, dtype=np.int32)
    half = limit // 2
    for i in range(1, half + 1):
        counts[i::i] += 1
    # for n > limit/2 the only divisor exceeding limit/2 is n itself
    counts[half + 1 :] += 1
    return counts


def sweep_divisor_count_bounds(
    limit: int = 1_000_000,
    containment_limit: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[BoundReport]:
    """Sieve d(n) and check every variant bound for all n up to ``limit``.

    The refined-constant containment check (failures of the "c0" bound must
    all be listed candidates) runs up to ``containment_limit`` instead when
    given; pass 11_793_600 to cover the whole candidate range.  Returns the
    failures across all variants, expected empty.
    """
    top = max(limit, containment_limit or 0)
    if progress is not None:
        progress(f"sieving divisor counts to {top}")
    counts = divisor_count_sieve(top)
    n_arr = np.arange(top + 1, dtype=np.int64)
    c = counts.astype(np.int64)
    c3 = c * c * c
    failures: list[BoundReport] = []

    def collect(mask: np.ndarray, variant: str, hi: int) -> None:
        bad = np.nonzero(mask[: hi + 1])[0]
        for n in bad:
            if n == 0:
                continue
            failures.append(check_divisor_count_bound(int(n), variant))

    collect(c * c > 3 * n_arr, "half", limit)
    collect(c3 * 35 > 1536 * n_arr, "third", limit)
    collect((n_arr % 2 == 1) & (c3 * 35 > 192 * n_arr), "odd", limit)
    collect((n_arr % 9 != 0) & (c3 * 105 > 4096 * n_arr), "no9", limit)
    collect((n_arr % 2 == 1) & (n_arr % 9 != 0) & (c3 * 105 > 512 * n_arr), "odd-no9", limit)

    hi = containment_limit if containment_limit is not None else limit
    viol = np.nonzero((c3 * 35 > 768 * n_arr)[: hi + 1])[0]
    cand = _candidate_set()
    stray = [int(n) for n in viol if n != 0 and int(n) not in cand]
    for n in stray:
        failures.append(check_divisor_count_bound(n, "c0"))
    if progress is not None:
        progress(
            f"checked n <= {limit} (containment to {hi}): "
            f"{len(failures)} failure(s), {len(viol)} refined-bound violations all "
            + ("listed" if not stray else "NOT all listed")
        )
    return failures
