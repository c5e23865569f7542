"""Experiments contrasting the two rating systems as the population changes.

``monotonic_series`` grows the population with non-voters hung off a single
anchor voter and tracks both revenues; ``bound_sweep`` scores every
single-customer bribe on a grid against the neighbourhood-size bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from netrating.exceptions import PreconditionError
from netrating.model import (
    NO_OPINION,
    CustomersNetwork,
    EvaluationProfile,
    RatedInstance,
    System,
    initial_utility,
    o_rating,
)
from netrating.optimize import GridSpec
from netrating.strategy import Strategy, apply_strategy, revenue, single_bribe_bound


def add_nonvoters(instance: RatedInstance, k: int, anchor: int) -> RatedInstance:
    """Copy of ``instance`` with ``k`` extra non-voters, each linked only to ``anchor``."""
    if instance.profile[anchor] is NO_OPINION:
        raise PreconditionError(f"anchor {anchor} must be a voter so the new customers see one")
    n = instance.n
    edges = instance.network.edges() + [(anchor, n + i) for i in range(k)]
    net = CustomersNetwork.from_edges(n + k, edges)
    profile = EvaluationProfile(instance.profile.values + (NO_OPINION,) * k)
    labels = None
    if instance.labels is not None:
        taken = set(instance.labels)
        extra, i = [], 0
        while len(extra) < k:
            i += 1
            name = f"nv{i}"
            if name not in taken:
                extra.append(name)
        labels = instance.labels + tuple(extra)
    return RatedInstance(net, profile, labels=labels)


def pad(sigma: Strategy, k: int) -> Strategy:
    return Strategy(sigma.bribes + (Fraction(0),) * k)


def reach(instance: RatedInstance, sigma: Strategy) -> frozenset[int]:
    """N(B(sigma)): every customer adjacent to (or equal to) a bribed one."""
    out = set()
    for c in sigma.bribed:
        out |= instance.network.neighborhoods[c]
    return frozenset(out)


def choose_anchor(instance: RatedInstance, sigma: Strategy):
    """Smallest-index voter outside N(B(sigma)), or None."""
    blocked = reach(instance, sigma)
    for c in sorted(instance.voters):
        if c not in blocked:
            return c
    return None


@dataclass(frozen=True)
class MonotonicResult:
    anchor: int
    anchor_outside_reach: bool
    rating_gain: Fraction
    rows: tuple  # (k, r_O, r_P)

    @property
    def r_o_strictly_increasing(self) -> bool:
        r = [row[1] for row in self.rows]
        return all(a < b for a, b in zip(r, r[1:]))

    @property
    def r_p_constant(self) -> bool:
        return len({row[2] for row in self.rows}) == 1


def monotonic_series(instance: RatedInstance, sigma: Strategy, k_max: int = 20, anchor=None, k_min: int = 0):
    """Revenues of ``sigma`` under O and P as ``k = k_min..k_max`` non-voters are added.

    With ``anchor`` omitted the smallest voter outside N(B(sigma)) is used.
    When the bribes raise the O-rating, r_O grows strictly with ``k``; when
    the anchor lies outside N(B(sigma)), r_P does not move.
    """
    if not sigma.bribed <= instance.voters:
        raise PreconditionError("the monotonicity experiment takes a voter-only strategy")
    if anchor is None:
        anchor = choose_anchor(instance, sigma)
        if anchor is None:
            raise PreconditionError("every voter is within reach of a bribed customer; pass an anchor")
    gain = o_rating(apply_strategy(instance, sigma)) - o_rating(instance.profile)
    rows = []
    for k in range(k_min, k_max + 1):
        grown = add_nonvoters(instance, k, anchor)
        s = pad(sigma, k)
        rows.append((k, revenue(grown, s, System.O).revenue, revenue(grown, s, System.P).revenue))
    return MonotonicResult(anchor, anchor not in reach(instance, sigma), gain, tuple(rows))


@dataclass(frozen=True)
class BoundRow:
    customer: int
    bound: int
    bribes_tried: int
    max_revenue: Fraction | None

    @property
    def holds(self) -> bool:
        return self.max_revenue is None or self.max_revenue < self.bound


def bound_sweep(instance: RatedInstance, grid=None) -> list[BoundRow]:
    """For each customer, the best P-revenue over efficient, budget-balanced single bribes on ``grid``."""
    grid = grid if isinstance(grid, GridSpec) else GridSpec(grid if grid is not None else Fraction(1, 10))
    budget = initial_utility(instance, System.P)
    rows = []
    for c in range(instance.n):
        v = instance.profile[c]
        cap = min(Fraction(1) - (0 if v is NO_OPINION else v), budget)
        best, tried = None, 0
        for amount in grid.values()[1:]:
            if amount > cap:
                break
            r = revenue(instance, Strategy.from_mapping(instance.n, {c: amount}), System.P).revenue
            tried += 1
            best = r if best is None or r > best else best
        rows.append(BoundRow(c, single_bribe_bound(instance, c), tried, best))
    return rows
