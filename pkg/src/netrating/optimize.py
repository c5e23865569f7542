"""Dominant bribing strategies and an exhaustive grid oracle.

:func:`o_greedy` and :func:`p_greedy` construct weakly dominant strategies for
the objective system with non-voters and the personalised system with
everyone voting. :func:`brute_force_best` searches every budget-balanced
strategy on a finite grid and is the independent check for both.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from netrating._kernel import ScaledNetwork, common_denominator
from netrating.exceptions import EnumerationCapError, PreconditionError
from netrating.model import NO_OPINION, RatedInstance, System, as_rational, influence_weights, initial_utility
from netrating.strategy import Strategy, revenue, utility_after

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "GridSpec",
    "OracleResult",
    "Dominance",
    "o_greedy",
    "p_greedy",
    "brute_force_best",
    "is_bribery_proof",
    "dominates",
]

DEFAULT_ENUMERATION_CAP = 50_000_000

# rows per vectorised block of the oracle
_BLOCK_ROWS = 1 << 17


@dataclass(frozen=True)
class GridSpec:
    """Bribe grid ``{0, step, 2*step, ..., 1}``; ``1/step`` must be a positive integer."""

    step: Fraction = Fraction(1, 10)

    def __post_init__(self):
        step = as_rational(self.step)
        if step <= 0 or step > 1 or (1 / step).denominator != 1:
            raise ValueError(f"grid step {step} must be positive and divide 1")
        object.__setattr__(self, "step", step)

    @property
    def levels(self) -> int:
        """Number of grid values, ``1/step + 1``."""
        return int(1 / self.step) + 1

    def values(self) -> list[Fraction]:
        return [k * self.step for k in range(self.levels)]


@dataclass(frozen=True)
class OracleResult:
    best_strategy: Strategy
    best_revenue: Fraction
    strategies_examined: int
    system: System
    step: Fraction


class Dominance(str, enum.Enum):
    STRICT = "strict"
    WEAK = "weak"
    NONE = "none"


def _fill(values, order, budget: Fraction) -> Strategy:
    bribes = [Fraction(0)] * len(values)
    for c in order:
        if budget == 0:
            break
        amount = min(1 - values[c], budget)
        bribes[c] = amount
        budget -= amount
    return Strategy(tuple(bribes))


def o_greedy(instance: RatedInstance) -> Strategy:
    """Spend ``u0_O`` on the voters in ascending index order, never past evaluation 1."""
    values = instance.profile.values
    order = [c for c in range(instance.n) if values[c] is not NO_OPINION]
    return _fill(values, order, initial_utility(instance, System.O))


def p_greedy(instance: RatedInstance) -> Strategy:
    """P-greedy strategy for an instance where every customer votes.

    Customers are visited by decreasing influence weight (ties by index); each
    one with weight above 1 receives ``min(1 - eval, remaining budget)``,
    starting from a budget of ``u0_P``.

    Raises
    ------
    PreconditionError
        If some customer has no opinion. Use :func:`brute_force_best` there.
    """
    if not instance.all_vote():
        raise PreconditionError("p_greedy requires every customer to vote; use brute_force_best instead")
    weights = influence_weights(instance)
    order = sorted(range(instance.n), key=lambda c: (-weights[c], c))
    values = instance.profile.values
    return _fill(values, [c for c in order if weights[c] > 1], initial_utility(instance, System.P))


def _grid_blocks(n: int, levels: int, budget_units: int):
    """Yield all vectors in {0..levels-1}^n with sum <= budget, in lexicographic order, as blocks."""
    suffix_dims = n
    while suffix_dims > 0 and levels**suffix_dims > _BLOCK_ROWS:
        suffix_dims -= 1
    suffix_dims = max(suffix_dims, 1)
    prefix_dims = n - suffix_dims
    suffix = np.array(list(itertools.product(range(levels), repeat=suffix_dims)), dtype=np.int64)
    suffix_sum = suffix.sum(axis=1)
    for prefix in itertools.product(range(levels), repeat=prefix_dims):
        left = budget_units - sum(prefix)
        if left < 0:
            continue
        rows = suffix[suffix_sum <= left]
        if prefix_dims:
            rows = np.hstack([np.broadcast_to(np.array(prefix, dtype=np.int64), (len(rows), prefix_dims)), rows])
        yield rows


def brute_force_best(instance: RatedInstance, system, grid=None, cap: int = DEFAULT_ENUMERATION_CAP) -> OracleResult:
    """Best budget-balanced strategy among all strategies with bribes on ``grid``.

    Ties are broken towards the lexicographically smallest bribe vector. The
    all-zero strategy is always a candidate, so the best revenue is never
    negative.

    Parameters
    ----------
    instance : RatedInstance
    system : System or str
    grid : GridSpec or rational, optional
        Grid step; defaults to 1/10.
    cap : int
        Maximum size ``(1/step + 1)^n`` of the raw grid.

    Raises
    ------
    EnumerationCapError
        If the raw grid is larger than ``cap``.
    """
    system = System.coerce(system)
    if grid is None:
        grid = GridSpec()
    elif not isinstance(grid, GridSpec):
        grid = GridSpec(grid)
    n = instance.n
    levels = grid.levels
    if levels**n > cap:
        raise EnumerationCapError(f"grid has {levels}^{n} = {levels**n} strategies, above the cap of {cap}")

    u0 = initial_utility(instance, system)
    budget_units = math.floor(u0 / grid.step)
    values = instance.profile.values
    D = common_denominator([v for v in values if v is not NO_OPINION] + [grid.step])
    step_units = int(grid.step * D)
    kernel = ScaledNetwork(instance.network, D)
    vals, mask = kernel.scaled_profile(values)
    base = kernel.utilities(vals[None, :], mask[None, :], 0, system)[0]

    best_score, best_row, examined = None, None, 0
    for rows in _grid_blocks(n, levels, budget_units):
        bribes = rows.astype(kernel.dtype) * step_units
        post_vals, post_mask, spent = kernel.execute(vals, mask, bribes)
        scores = kernel.utilities(post_vals, post_mask, spent, system)
        examined += len(rows)
        i = int(np.argmax(scores))
        if best_score is None or scores[i] > best_score:
            best_score, best_row = scores[i], rows[i]

    best = Strategy(tuple(int(k) * grid.step for k in best_row))
    report = revenue(instance, best, system)
    expected = kernel.to_fraction(best_score - base)
    if report.revenue != expected:
        raise AssertionError(f"oracle kernel disagrees with direct revenue: {expected} != {report.revenue}")
    return OracleResult(best, report.revenue, examined, system, grid.step)


def is_bribery_proof(instance: RatedInstance, system, grid=None, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True iff no grid strategy is profitable (the verdict is relative to the grid)."""
    return brute_force_best(instance, system, grid, cap).best_revenue == 0


def dominates(instance: RatedInstance, sigma1: Strategy, sigma2: Strategy, system) -> Dominance:
    """Compare the utilities two strategies give the restaurant."""
    u1 = utility_after(instance, sigma1, system)
    u2 = utility_after(instance, sigma2, system)
    if u1 > u2:
        return Dominance.STRICT
    if u1 == u2:
        return Dominance.WEAK
    return Dominance.NONE
