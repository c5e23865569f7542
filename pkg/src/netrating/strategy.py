"""Bribing strategies and their effect under both rating systems.

A strategy assigns each customer a transfer in ``[0, 1]``. Executing it raises
a voter's evaluation to ``min(1, eval + bribe)`` and turns a bribed non-voter
into a voter whose evaluation is the bribe itself. Budget balance depends on
the rating system (the budget is that system's initial utility), so it is
checked per call rather than stored in the strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Mapping

from netrating.exceptions import BudgetError, NotDisjointError, PreconditionError
from netrating.model import (
    NO_OPINION,
    EvaluationProfile,
    RatedInstance,
    System,
    as_rational,
    influence_weight,
    initial_utility,
    neighborhood,
    o_rating,
    p_ratings,
)

__all__ = [
    "Strategy",
    "RevenueReport",
    "apply_strategy",
    "is_budget_balanced",
    "is_efficient",
    "utility_after",
    "revenue",
    "compose",
    "greedy_restriction",
    "revenue_formula_P",
    "single_bribe_bound",
]


@dataclass(frozen=True)
class Strategy:
    """Per-customer bribe amounts, each a rational in ``[0, 1]``."""

    bribes: tuple[Fraction, ...]

    def __post_init__(self):
        bribes = tuple(as_rational(b) for b in self.bribes)
        for c, b in enumerate(bribes):
            if not 0 <= b <= 1:
                raise ValueError(f"bribe {b} for customer {c} is outside [0, 1]")
        object.__setattr__(self, "bribes", bribes)

    @classmethod
    def zero(cls, n: int) -> "Strategy":
        return cls((Fraction(0),) * n)

    @classmethod
    def from_mapping(cls, n: int, amounts: Mapping[int, object]) -> "Strategy":
        bribes = [Fraction(0)] * n
        for c, amount in amounts.items():
            if not 0 <= c < n:
                raise IndexError(f"customer {c} is out of range 0..{n - 1}")
            bribes[c] = as_rational(amount)
        return cls(tuple(bribes))

    def __len__(self):
        return len(self.bribes)

    def __getitem__(self, c):
        return self.bribes[c]

    @cached_property
    def bribed(self) -> frozenset[int]:
        """B(sigma): customers receiving a non-zero bribe."""
        return frozenset(c for c, b in enumerate(self.bribes) if b != 0)

    @cached_property
    def total(self) -> Fraction:
        return sum(self.bribes, Fraction(0))

    def is_zero(self) -> bool:
        return not self.bribed


@dataclass(frozen=True)
class RevenueReport:
    """Outcome of executing a strategy under one rating system."""

    system: System
    u0: Fraction
    u_sigma: Fraction
    revenue: Fraction
    bribed: frozenset[int]
    total_spent: Fraction

    @property
    def profitable(self) -> bool:
        return self.revenue > 0


def _check_dims(instance: RatedInstance, sigma: Strategy):
    if len(sigma) != instance.n:
        raise ValueError(f"strategy has {len(sigma)} entries for {instance.n} customers")


def apply_strategy(instance: RatedInstance, sigma: Strategy) -> EvaluationProfile:
    """Evaluation profile after executing ``sigma``."""
    _check_dims(instance, sigma)
    out = []
    for v, b in zip(instance.profile.values, sigma.bribes):
        if v is NO_OPINION:
            out.append(b if b != 0 else NO_OPINION)
        else:
            out.append(min(Fraction(1), v + b))
    return EvaluationProfile(tuple(out))


def is_budget_balanced(instance: RatedInstance, sigma: Strategy, system) -> bool:
    _check_dims(instance, sigma)
    return sigma.total <= initial_utility(instance, system)


def is_efficient(instance: RatedInstance, sigma: Strategy) -> bool:
    """True when no bribe pushes an evaluation past 1 (no opinion counts as 0)."""
    _check_dims(instance, sigma)
    return all(
        (0 if v is NO_OPINION else v) + b <= 1
        for v, b in zip(instance.profile.values, sigma.bribes)
    )


def _utility(instance: RatedInstance, sigma: Strategy, system: System) -> Fraction:
    after = RatedInstance(instance.network, apply_strategy(instance, sigma))
    if system is System.O:
        gross = instance.n * o_rating(after.profile)
    else:
        gross = sum(p_ratings(after), Fraction(0))
    return gross - sigma.total


def _require_budget(instance, sigma, system):
    u0 = initial_utility(instance, system)
    if sigma.total > u0:
        raise BudgetError(f"strategy spends {sigma.total} but the {system.value} budget is {u0}")
    return u0


def utility_after(instance: RatedInstance, sigma: Strategy, system) -> Fraction:
    """Utility of the rating system after executing ``sigma``, net of the bribes.

    Raises
    ------
    BudgetError
        If ``sigma`` spends more than the system's initial utility.
    """
    system = System.coerce(system)
    _check_dims(instance, sigma)
    _require_budget(instance, sigma, system)
    return _utility(instance, sigma, system)


def revenue(instance: RatedInstance, sigma: Strategy, system, check_budget: bool = True) -> RevenueReport:
    """Revenue report of ``sigma``.

    ``check_budget=False`` skips the budget test; the expectation module uses it
    because there the budget is fixed by the canonical placement.
    """
    system = System.coerce(system)
    _check_dims(instance, sigma)
    if check_budget:
        u0 = _require_budget(instance, sigma, system)
    else:
        u0 = initial_utility(instance, system)
    u_sigma = _utility(instance, sigma, system)
    return RevenueReport(
        system=system,
        u0=u0,
        u_sigma=u_sigma,
        revenue=u_sigma - u0,
        bribed=sigma.bribed,
        total_spent=sigma.total,
    )


def compose(sigma1: Strategy, sigma2: Strategy) -> Strategy:
    """Pointwise sum of two strategies with disjoint bribed sets."""
    if len(sigma1) != len(sigma2):
        raise ValueError("strategies have different lengths")
    common = sigma1.bribed & sigma2.bribed
    if common:
        raise NotDisjointError(f"strategies both bribe customers {sorted(common)}")
    return Strategy(tuple(a + b for a, b in zip(sigma1.bribes, sigma2.bribes)))


def greedy_restriction(instance: RatedInstance, sigma: Strategy, cbar: int) -> Strategy:
    """Un-bribe non-voter ``cbar`` and hand its bribe to the remaining post-bribe voters.

    The freed amount fills customers of ``V^sigma - {cbar}`` in ascending index
    order, each up to the cap ``eval + bribe = 1``; whatever cannot be placed
    stays unspent.
    """
    _check_dims(instance, sigma)
    values = instance.profile.values
    if values[cbar] is not NO_OPINION:
        raise PreconditionError(f"customer {cbar} is a voter")
    if sigma[cbar] == 0:
        raise PreconditionError(f"customer {cbar} is not bribed")
    bribes = list(sigma.bribes)
    freed = bribes[cbar]
    bribes[cbar] = Fraction(0)
    after_voters = sorted(c for c in range(instance.n) if values[c] is not NO_OPINION or sigma[c] != 0)
    for c in after_voters:
        if freed == 0:
            break
        if c == cbar:
            continue
        base = 0 if values[c] is NO_OPINION else values[c]
        slack = max(Fraction(0), 1 - base - bribes[c])
        extra = min(slack, freed)
        bribes[c] += extra
        freed -= extra
    return Strategy(tuple(bribes))


def revenue_formula_P(instance: RatedInstance, sigma: Strategy) -> Fraction:
    """P-revenue of an efficient voter-only strategy via influence weights.

    Equals ``sum over voters c of (w_c - 1) * sigma(c)``, weights taken with
    respect to the current voter set.
    """
    _check_dims(instance, sigma)
    if not sigma.bribed <= instance.voters:
        raise PreconditionError("closed-form revenue applies only to voter-only strategies")
    if not is_efficient(instance, sigma):
        raise PreconditionError("closed-form revenue applies only to efficient strategies")
    return sum(
        ((influence_weight(instance, c) - 1) * sigma[c] for c in sorted(sigma.bribed)),
        Fraction(0),
    )


def single_bribe_bound(instance: RatedInstance, cbar: int) -> int:
    """Strict upper bound |N(cbar)| on the P-revenue of any efficient bribe of ``cbar`` alone."""
    return len(neighborhood(instance.network, cbar))
