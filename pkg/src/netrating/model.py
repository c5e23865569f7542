"""Customers networks, evaluation profiles and the two rating systems.

All quantities are exact: evaluations are :class:`fractions.Fraction` values
in ``[0, 1]`` or the :data:`NO_OPINION` token, and every rating, weight and
utility is computed with rational arithmetic.

Customers are the dense indices ``0 .. n-1``. Neighbourhoods always contain
the customer itself, and ``deg(c) = |N(c)|`` counts that self-loop.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from netrating.exceptions import InvalidInstanceError, UndefinedWeightError

__all__ = [
    "NO_OPINION",
    "NoOpinion",
    "System",
    "as_value",
    "as_rational",
    "CustomersNetwork",
    "EvaluationProfile",
    "RatedInstance",
    "neighborhood",
    "degree",
    "voters",
    "o_rating",
    "p_rating",
    "p_ratings",
    "influence_weight",
    "influence_weights",
    "initial_utility",
]


class NoOpinion:
    """The distinguished "no opinion" evaluation, rendered as ``*``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (NoOpinion, ())


NO_OPINION = NoOpinion()


class System(str, enum.Enum):
    """Rating system: objective (global average) or personalised (neighbourhood average)."""

    O = "O"
    P = "P"

    @classmethod
    def coerce(cls, system) -> "System":
        if isinstance(system, cls):
            return system
        try:
            return cls(str(system).upper())
        except ValueError:
            raise ValueError(f"unknown rating system {system!r}; expected 'O' or 'P'") from None


def as_rational(x) -> Fraction:
    """Convert ``x`` to an exact :class:`~fractions.Fraction`.

    Strings may be integers, decimals (``"0.25"``) or fractions (``"1/4"``) and
    are converted without binary rounding. Floats go through their shortest
    ``repr`` so that ``0.2`` becomes ``1/5``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def as_value(x):
    """Convert ``x`` to an evaluation: :data:`NO_OPINION` or a rational in ``[0, 1]``.

    ``None``, ``"*"`` and :data:`NO_OPINION` all mean no opinion.
    """
    if x is None or x is NO_OPINION or (isinstance(x, str) and x.strip() == "*"):
        return NO_OPINION
    value = as_rational(x)
    if not 0 <= value <= 1:
        raise InvalidInstanceError(f"evaluation {value} is outside [0, 1]")
    return value


@dataclass(frozen=True)
class CustomersNetwork:
    """Undirected customers network with reflexive neighbourhoods.

    Build with :meth:`from_edges`; ``neighborhoods[c]`` is ``N(c)`` and always
    contains ``c``.
    """

    n: int
    neighborhoods: tuple[frozenset[int], ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstanceError("a customers network needs at least one customer")
        if len(self.neighborhoods) != self.n:
            raise InvalidInstanceError("one neighbourhood per customer is required")
        for c, nb in enumerate(self.neighborhoods):
            if c not in nb:
                raise InvalidInstanceError(f"neighbourhood of customer {c} does not contain itself")
            for k in nb:
                if not 0 <= k < self.n:
                    raise InvalidInstanceError(f"customer {c} has out-of-range neighbour {k}")
                if c not in self.neighborhoods[k]:
                    raise InvalidInstanceError(f"edge ({c}, {k}) is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CustomersNetwork":
        """Network on ``n`` customers; self-loops are added, duplicates ignored."""
        if n < 1:
            raise InvalidInstanceError("a customers network needs at least one customer")
        nb = [{c} for c in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidInstanceError(f"edge ({a}, {b}) references a customer outside 0..{n - 1}")
            nb[a].add(b)
            nb[b].add(a)
        return cls(n, tuple(frozenset(s) for s in nb))

    @classmethod
    def complete(cls, n: int) -> "CustomersNetwork":
        everyone = frozenset(range(n))
        return cls(n, (everyone,) * n)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges ``(a, b)`` with ``a < b`` (self-loops omitted)."""
        return sorted((a, b) for a in range(self.n) for b in self.neighborhoods[a] if a < b)

    def relabel(self, mapping: Sequence[int]) -> "CustomersNetwork":
        """Network where old customer ``i`` becomes ``mapping[i]``."""
        if sorted(mapping) != list(range(self.n)):
            raise InvalidInstanceError("relabelling must be a permutation of the customers")
        return CustomersNetwork.from_edges(self.n, ((mapping[a], mapping[b]) for a, b in self.edges()))

    def is_connected(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            for k in self.neighborhoods[c]:
                if k not in seen:
                    seen.add(k)
                    frontier.append(k)
        return len(seen) == self.n

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class EvaluationProfile:
    """One evaluation per customer; at least one customer must have an opinion."""

    values: tuple

    def __post_init__(self):
        values = tuple(as_value(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not any(v is not NO_OPINION for v in values):
            raise InvalidInstanceError("empty voter set: at least one customer must express an evaluation")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, c):
        return self.values[c]

    def __iter__(self):
        return iter(self.values)

    @property
    def voters(self) -> frozenset[int]:
        return frozenset(c for c, v in enumerate(self.values) if v is not NO_OPINION)


@dataclass(frozen=True)
class RatedInstance:
    """A network together with an evaluation profile.

    Validated on construction: sizes agree and every customer has at least
    one voter in its neighbourhood, so P-ratings are always defined.
    ``labels`` optionally keeps the external customer names; it takes no
    part in equality.
    """

    network: CustomersNetwork
    profile: EvaluationProfile
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.profile, EvaluationProfile):
            object.__setattr__(self, "profile", EvaluationProfile(tuple(self.profile)))
        if len(self.profile) != self.network.n:
            raise InvalidInstanceError(
                f"profile has {len(self.profile)} evaluations for {self.network.n} customers"
            )
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
            if len(self.labels) != self.network.n or len(set(self.labels)) != self.network.n:
                raise InvalidInstanceError("labels must be unique, one per customer")
        v = self.profile.voters
        for c, nb in enumerate(self.network.neighborhoods):
            if not nb & v:
                raise InvalidInstanceError(f"customer {c} sees no voter")

    @property
    def n(self) -> int:
        return self.network.n

    @property
    def voters(self) -> frozenset[int]:
        return self.profile.voters

    def label(self, c: int) -> str:
        return self.labels[c] if self.labels is not None else str(c)

    def all_vote(self) -> bool:
        return len(self.profile.voters) == self.network.n


def _check_customer(net: CustomersNetwork, c: int):
    if not isinstance(c, int) or not 0 <= c < net.n:
        raise IndexError(f"customer {c!r} is out of range 0..{net.n - 1}")


def neighborhood(net: CustomersNetwork, c: int) -> frozenset[int]:
    """N(c), including ``c`` itself."""
    _check_customer(net, c)
    return net.neighborhoods[c]


def degree(net: CustomersNetwork, c: int) -> int:
    """|N(c)|, self included."""
    return len(neighborhood(net, c))


def voters(profile: EvaluationProfile) -> frozenset[int]:
    """Customers whose evaluation is not :data:`NO_OPINION`."""
    return profile.voters


def o_rating(profile: EvaluationProfile) -> Fraction:
    """Average evaluation over the voters."""
    rated = [v for v in profile.values if v is not NO_OPINION]
    return Fraction(sum(rated), len(rated))


def p_rating(instance: RatedInstance, c: int) -> Fraction:
    """Average evaluation over the voters in N(c)."""
    values = instance.profile.values
    seen = [values[k] for k in neighborhood(instance.network, c) if values[k] is not NO_OPINION]
    return Fraction(sum(seen), len(seen))


def p_ratings(instance: RatedInstance) -> list[Fraction]:
    return [p_rating(instance, c) for c in range(instance.n)]


def influence_weight(instance: RatedInstance, c: int, voter_set=None) -> Fraction:
    """Influence weight of ``c``: sum over k in N(c) of 1 / |N(k) ∩ voter_set|.

    Parameters
    ----------
    instance : RatedInstance
    c : int
        Customer index.
    voter_set : iterable of int, optional
        Set of designated voters. Defaults to the instance's voters.

    Raises
    ------
    UndefinedWeightError
        If some neighbour of ``c`` has no designated voter in its neighbourhood.
    """
    net = instance.network
    vs = instance.voters if voter_set is None else frozenset(voter_set)
    total = Fraction(0)
    for k in neighborhood(net, c):
        seen = len(net.neighborhoods[k] & vs)
        if seen == 0:
            raise UndefinedWeightError(f"neighbour {k} of customer {c} sees no voter")
        total += Fraction(1, seen)
    return total


def influence_weights(instance: RatedInstance, voter_set=None) -> list[Fraction]:
    return [influence_weight(instance, c, voter_set) for c in range(instance.n)]


def initial_utility(instance: RatedInstance, system) -> Fraction:
    """Initial utility u0: ``n * O-rating`` for O, sum of P-ratings for P."""
    system = System.coerce(system)
    if system is System.O:
        return instance.n * o_rating(instance.profile)
    return sum(p_ratings(instance), Fraction(0))
