"""Expected revenue when the network shape is known but customer positions are not.

Every bijection of the named customers onto the nodes of the shape is equally
likely. :func:`expected_revenue_exact` averages over all ``n!`` placements in
exact arithmetic; :func:`expected_revenue_mc` samples placements from a seeded
generator for larger shapes.

The strategy's budget is checked once, against the canonical placement where
customer ``i`` sits on node ``i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from netrating._kernel import ScaledNetwork, common_denominator
from netrating.exceptions import BudgetError, EnumerationCapError, InvalidInstanceError, InvalidPlacementError
from netrating.model import (
    NO_OPINION,
    CustomersNetwork,
    EvaluationProfile,
    RatedInstance,
    System,
    initial_utility,
)
from netrating.strategy import Strategy, revenue

__all__ = [
    "DEFAULT_EXACT_CAP",
    "MC_BLOCK_SIZE",
    "PlacementScenario",
    "ExpectationResult",
    "expected_revenue_exact",
    "expected_revenue_mc",
    "per_placement_revenue",
]

DEFAULT_EXACT_CAP = 9
MC_BLOCK_SIZE = 1024

# voter-position subsets checked exhaustively up to this many, sampled beyond
_SUBSET_CHECK_CAP = 2_000_000
_SUBSET_SAMPLES = 20_000
_PLACEMENT_CHUNK = 40_320


@dataclass(frozen=True)
class PlacementScenario:
    """A shape, named customers with evaluations, a strategy and a rating system.

    Raises
    ------
    InvalidPlacementError
        If some placement would leave a customer with no voter in sight.
    BudgetError
        If the strategy overspends on the canonical placement.
    """

    shape: CustomersNetwork
    profile: EvaluationProfile
    sigma: Strategy
    system: System = System.P
    validation: str = field(init=False, default="")

    def __post_init__(self):
        object.__setattr__(self, "system", System.coerce(self.system))
        if not isinstance(self.profile, EvaluationProfile):
            object.__setattr__(self, "profile", EvaluationProfile(tuple(self.profile)))
        n = self.shape.n
        if len(self.profile) != n or len(self.sigma) != n:
            raise InvalidInstanceError("shape, profile and strategy must have the same size")
        object.__setattr__(self, "validation", _check_all_placements(self.shape, len(self.profile.voters)))
        canonical = self.canonical_instance()
        budget = initial_utility(canonical, self.system)
        if self.sigma.total > budget:
            raise BudgetError(
                f"strategy spends {self.sigma.total} but the canonical {self.system.value} budget is {budget}"
            )

    @property
    def n(self) -> int:
        return self.shape.n

    def canonical_instance(self) -> RatedInstance:
        return RatedInstance(self.shape, self.profile)

    @property
    def budget(self) -> Fraction:
        return initial_utility(self.canonical_instance(), self.system)


def _check_all_placements(shape: CustomersNetwork, n_voters: int) -> str:
    # validity only depends on which nodes hold voters
    n = shape.n
    adj = np.zeros((n, n), dtype=np.int64)
    for c, nb in enumerate(shape.neighborhoods):
        adj[c, list(nb)] = 1
    total = math.comb(n, n_voters)
    if total <= _SUBSET_CHECK_CAP:
        subsets = itertools.combinations(range(n), n_voters)
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(0)
        subsets = (rng.choice(n, size=n_voters, replace=False) for _ in range(_SUBSET_SAMPLES))
        mode = "sampled"
    for subset in subsets:
        mask = np.zeros(n, dtype=np.int64)
        mask[list(subset)] = 1
        seen = adj @ mask
        if (seen == 0).any():
            node = int(np.argmin(seen))
            raise InvalidPlacementError(
                f"placing the voters on nodes {sorted(int(s) for s in subset)} leaves node {node} with no voter in sight"
            )
    return mode


@dataclass(frozen=True)
class ExpectationResult:
    """Expected revenue over placements.

    ``value`` is the exact expectation when ``exact`` is true, otherwise the
    (exact rational) sample mean, paired with ``standard_error``.
    ``revenue_counts`` maps each distinct per-placement revenue to the number
    of placements (or samples) producing it.
    """

    value: Fraction
    exact: bool
    placements_evaluated: int
    standard_error: float | None = None
    revenue_counts: dict | None = None
    seed: int | None = None
    budget: Fraction | None = None

    @property
    def mean(self) -> Fraction:
        return self.value


class _PlacementEvaluator:
    """Scaled revenue of a strategy for batches of node-to-customer arrays."""

    def __init__(self, scenario: PlacementScenario):
        values = scenario.profile.values
        bribes = scenario.sigma.bribes
        D = common_denominator([v for v in values if v is not NO_OPINION] + list(bribes))
        self.kernel = k = ScaledNetwork(scenario.shape, D)
        self.system = scenario.system
        self.pre_vals, self.pre_mask = k.scaled_profile(values)
        scaled_bribes = np.array([int(b * D) for b in bribes], dtype=k.dtype)[None, :]
        post_vals, post_mask, spent = k.execute(self.pre_vals, self.pre_mask, scaled_bribes)
        self.post_vals, self.post_mask, self.spent = post_vals[0], post_mask[0], spent[0]

    def scores(self, customer_at: np.ndarray):
        k = self.kernel
        after = k.utilities(self.post_vals[customer_at], self.post_mask[customer_at], self.spent, self.system)
        before = k.utilities(self.pre_vals[customer_at], self.pre_mask[customer_at], 0, self.system)
        return after - before


def _counts(kernel, scores) -> dict:
    uniq, cnt = np.unique(np.asarray(scores), return_counts=True)
    return {kernel.to_fraction(u): int(c) for u, c in zip(uniq, cnt)}


def expected_revenue_exact(
    scenario: PlacementScenario, cap: int = DEFAULT_EXACT_CAP, table: bool = True
) -> ExpectationResult:
    """Exact mean revenue over all ``n!`` placements.

    Raises
    ------
    EnumerationCapError
        If ``n`` exceeds ``cap``; use :func:`expected_revenue_mc` instead.
    """
    n = scenario.n
    if n > cap:
        raise EnumerationCapError(
            f"{n}! placements exceed the exact cap (n <= {cap}); use expected_revenue_mc"
        )
    ev = _PlacementEvaluator(scenario)
    perms = itertools.permutations(range(n))
    total = 0
    all_scores = []
    while True:
        chunk = np.array(list(itertools.islice(perms, _PLACEMENT_CHUNK)), dtype=np.intp)
        if chunk.size == 0:
            break
        scores = ev.scores(chunk)
        total += int(sum(int(s) for s in scores)) if scores.dtype == object else int(scores.sum())
        if table:
            all_scores.append(scores)
    count = math.factorial(n)
    k = ev.kernel
    return ExpectationResult(
        value=Fraction(total, count * k.D * k.L),
        exact=True,
        placements_evaluated=count,
        revenue_counts=_counts(k, np.concatenate(all_scores)) if table else None,
        budget=scenario.budget,
    )


def expected_revenue_mc(scenario: PlacementScenario, samples: int, seed: int, table: bool = False) -> ExpectationResult:
    """Monte Carlo estimate from ``samples`` uniformly random placements.

    Samples are drawn in blocks of :data:`MC_BLOCK_SIZE`; block ``i`` uses a
    PCG64 generator seeded with child ``i`` of ``numpy.random.SeedSequence(seed)``,
    so the estimate depends only on ``(seed, samples)``.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    n = scenario.n
    ev = _PlacementEvaluator(scenario)
    k = ev.kernel
    n_blocks = -(-samples // MC_BLOCK_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_blocks)
    parts = []
    for i, child in enumerate(children):
        size = min(MC_BLOCK_SIZE, samples - i * MC_BLOCK_SIZE)
        rng = np.random.Generator(np.random.PCG64(child))
        customer_at = rng.permuted(np.tile(np.arange(n, dtype=np.intp), (size, 1)), axis=1)
        parts.append(ev.scores(customer_at))
    scores = [int(s) for s in np.concatenate(parts)]
    scale = k.D * k.L
    s1 = sum(scores)
    mean = Fraction(s1, samples * scale)
    se = None
    if samples > 1:
        s2 = sum(s * s for s in scores)
        var = Fraction(s2 * samples - s1 * s1, samples * (samples - 1) * scale * scale)
        se = math.sqrt(var / samples)
    return ExpectationResult(
        value=mean,
        exact=False,
        placements_evaluated=samples,
        standard_error=se,
        revenue_counts=_counts(k, scores) if table else None,
        seed=seed,
        budget=scenario.budget,
    )


def placed_instance(scenario: PlacementScenario, placement: Sequence[int]) -> RatedInstance:
    """Instance on the named customers induced by putting customer ``c`` on node ``placement[c]``."""
    n = scenario.n
    placement = [int(p) for p in placement]
    if sorted(placement) != list(range(n)):
        raise InvalidPlacementError(f"placement {placement} is not a bijection onto 0..{n - 1}")
    customer_at = [0] * n
    for c, node in enumerate(placement):
        customer_at[node] = c
    net = scenario.shape.relabel(customer_at)
    try:
        return RatedInstance(net, scenario.profile)
    except InvalidInstanceError as exc:
        raise InvalidPlacementError(str(exc)) from exc


def per_placement_revenue(scenario: PlacementScenario, placement: Sequence[int]) -> Fraction:
    """Revenue of the scenario's strategy for one placement (budget fixed canonically)."""
    inst = placed_instance(scenario, placement)
    return revenue(inst, scenario.sigma, scenario.system, check_budget=False).revenue
