"""Shared report records used across the verification modules.

Every check in this package resolves to exact rational arithmetic before a
pass/fail verdict is recorded, so reports carry :class:`fractions.Fraction`
sides rather than floats.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import IO, Iterable

ExactRational = Fraction


def dec6(x: Fraction) -> str:
    """Decimal rendering of a rational to 6 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 6
        return str(Decimal(x.numerator) / Decimal(x.denominator))

CSV_HEADER = ["kind", "n", "m", "d", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "passed"]


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one exact inequality check.

    ``kind`` names the check.  ``n``, ``m``, ``d`` identify the instance;
    fields that do not apply to a given kind are None.  ``lhs`` and ``rhs``
    are the two sides of the decisive comparison (``passed`` means
    ``lhs <= rhs``), except for vacuous checks where both sides are 0.
    ``witness`` holds free-form detail: the failing sub-instance, or a note
    about a boundary case.
    """

    kind: str
    n: int | None
    m: int | None
    d: int | None
    lhs: Fraction
    rhs: Fraction
    passed: bool
    witness: str = ""

    def csv_row(self) -> list[str]:
        return [
            self.kind,
            "" if self.n is None else str(self.n),
            "" if self.m is None else str(self.m),
            "" if self.d is None else str(self.d),
            str(self.lhs.numerator),
            str(self.lhs.denominator),
            str(self.rhs.numerator),
            str(self.rhs.denominator),
            "1" if self.passed else "0",
        ]


def write_reports_csv(out: IO[str], reports: Iterable[BoundReport]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        writer.writerow(rep.csv_row())


@dataclass(frozen=True)
class CondProbReport:
    """One row of a conditional-probability verification sweep."""

    case_id: int
    n: int
    r: int
    p_A: Fraction
    p_B: Fraction
    p_A_given_B: Fraction
    lower_bound: Fraction
    passed: bool

    def __post_init__(self) -> None:
        if not (0 <= self.p_A <= self.p_B <= 1):
            raise ValueError(f"inconsistent probabilities in case {self.case_id}, n={self.n}")


COND_CSV_HEADER = [
    "case",
    "n",
    "r",
    "pA_num",
    "pA_den",
    "pA_dec",
    "pB_num",
    "pB_den",
    "pB_dec",
    "pAgivenB_num",
    "pAgivenB_den",
    "pAgivenB_dec",
    "bound_num",
    "bound_den",
    "passed",
]


def write_cond_reports_csv(out: IO[str], reports: Iterable[CondProbReport]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COND_CSV_HEADER)
    for rep in reports:
        writer.writerow(
            [
                str(rep.case_id),
                str(rep.n),
                str(rep.r),
                str(rep.p_A.numerator),
                str(rep.p_A.denominator),
                dec6(rep.p_A),
                str(rep.p_B.numerator),
                str(rep.p_B.denominator),
                dec6(rep.p_B),
                str(rep.p_A_given_B.numerator),
                str(rep.p_A_given_B.denominator),
                dec6(rep.p_A_given_B),
                str(rep.lower_bound.numerator),
                str(rep.lower_bound.denominator),
                "1" if rep.passed else "0",
            ]
        )
