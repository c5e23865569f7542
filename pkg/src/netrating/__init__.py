"""Objective and personalised network rating systems and their resistance to bribery."""

from netrating.exceptions import (
    BudgetError,
    EnumerationCapError,
    InvalidInstanceError,
    InvalidPlacementError,
    NetRatingError,
    NotDisjointError,
    ParseError,
    PreconditionError,
    UndefinedWeightError,
)
from netrating.expectation import (
    ExpectationResult,
    PlacementScenario,
    expected_revenue_exact,
    expected_revenue_mc,
    per_placement_revenue,
)
from netrating.model import (
    NO_OPINION,
    CustomersNetwork,
    EvaluationProfile,
    RatedInstance,
    System,
    degree,
    influence_weight,
    influence_weights,
    initial_utility,
    neighborhood,
    o_rating,
    p_rating,
    p_ratings,
    voters,
)
from netrating.optimize import (
    Dominance,
    GridSpec,
    OracleResult,
    brute_force_best,
    dominates,
    is_bribery_proof,
    o_greedy,
    p_greedy,
)
from netrating.strategy import (
    RevenueReport,
    Strategy,
    apply_strategy,
    compose,
    greedy_restriction,
    is_budget_balanced,
    is_efficient,
    revenue,
    revenue_formula_P,
    single_bribe_bound,
    utility_after,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "EnumerationCapError",
    "InvalidInstanceError",
    "InvalidPlacementError",
    "NetRatingError",
    "NotDisjointError",
    "ParseError",
    "PreconditionError",
    "UndefinedWeightError",
    "ExpectationResult",
    "PlacementScenario",
    "expected_revenue_exact",
    "expected_revenue_mc",
    "per_placement_revenue",
    "NO_OPINION",
    "CustomersNetwork",
    "EvaluationProfile",
    "RatedInstance",
    "System",
    "degree",
    "influence_weight",
    "influence_weights",
    "initial_utility",
    "neighborhood",
    "o_rating",
    "p_rating",
    "p_ratings",
    "voters",
    "Dominance",
    "GridSpec",
    "OracleResult",
    "brute_force_best",
    "dominates",
    "is_bribery_proof",
    "o_greedy",
    "p_greedy",
    "RevenueReport",
    "Strategy",
    "apply_strategy",
    "compose",
    "greedy_restriction",
    "is_budget_balanced",
    "is_efficient",
    "revenue",
    "revenue_formula_P",
    "single_bribe_bound",
    "utility_after",
]

