"""Exact order statistics in symmetric and alternating groups.

The package computes, entirely in rational arithmetic, the proportion
of elements of S_n (or A_n) whose order divides m, splits it by how
the first three points are distributed over cycles, bounds it by
closed formulas with certified enclosures for the irrational pieces,
and applies the machinery to ten families of near-full-support cycle
types used for locating long cycles by powering.  A Monte-Carlo layer
cross-checks the exact values by sampling.
"""

from .divisors import (
    DivisorProfile,
    divisor_list,
    divisor_rich_candidates,
    gamma,
    gamma_value,
)
from .proportions import (
    CycleType,
    ProportionTable,
    SplitProportions,
    brute_force_prop,
    default_table,
    prop_alternating,
    prop_order_dividing,
    prop_order_dividing_signed,
    prop_split,
)
from .bounds import (
    EXPECTED_MAJORANT_FAILURES,
    check_prop_upper_bound,
    prop_upper_bound,
    prop_upper_bound_near,
    sweep_divisor_majorant,
    sweep_prop_bound,
    verify_exceptional_m,
    verify_shat_condition,
)
from .recognition import (
    TABLE2_EXCEPTIONS,
    CaseSpec,
    case_params,
    cond_prob,
    lower_bound_for,
    prob_A,
    prob_B,
    verify_theorem2,
)
from .reports import BoundReport, CondProbReport
from .sampler import (
    SampleStats,
    SearchStats,
    estimate_event,
    estimate_order_divides,
    power_order,
    random_cycle_type,
    search_cost_sim,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CaseSpec",
    "CondProbReport",
    "CycleType",
    "DivisorProfile",
    "EXPECTED_MAJORANT_FAILURES",
    "ProportionTable",
    "SampleStats",
    "SearchStats",
    "SplitProportions",
    "TABLE2_EXCEPTIONS",
    "brute_force_prop",
    "case_params",
    "check_prop_upper_bound",
    "cond_prob",
    "default_table",
    "divisor_list",
    "divisor_rich_candidates",
    "estimate_event",
    "estimate_order_divides",
    "gamma",
    "gamma_value",
    "lower_bound_for",
    "power_order",
    "prob_A",
    "prob_B",
    "prop_alternating",
    "prop_order_dividing",
    "prop_order_dividing_signed",
    "prop_split",
    "prop_upper_bound",
    "prop_upper_bound_near",
    "random_cycle_type",
    "search_cost_sim",
    "sweep_divisor_majorant",
    "sweep_prop_bound",
    "verify_exceptional_m",
    "verify_shat_condition",
    "verify_theorem2",
    "__version__",
]
