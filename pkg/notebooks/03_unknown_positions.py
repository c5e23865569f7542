"""
When the owner does not know who sits where
===========================================

The owner knows the shape of the network but not which customer occupies
which node. Averaging over every placement removes the advantage of the
personalised rating when everybody votes.
"""

import random
from fractions import Fraction

from netrating import (
    EvaluationProfile,
    PlacementScenario,
    Strategy,
    expected_revenue_exact,
    expected_revenue_mc,
)
from netrating.io import path, star

# %%
# Three customers on a line. A and B rated 0.2, C stayed silent, and the
# owner pays B 0.2. The revenue depends on who ends up in the middle.

scenario = PlacementScenario(path(3), EvaluationProfile(("1/5", "1/5", "*")), Strategy.from_mapping(3, {1: "1/5"}))
exact = expected_revenue_exact(scenario)
print("per-placement revenues:", {str(k): v for k, v in exact.revenue_counts.items()})
print("expected revenue:", exact.value)

mc = expected_revenue_mc(scenario, samples=10_000, seed=1)
print(f"monte carlo: {float(mc.value):.4f} +/- {mc.standard_error:.4f}")

# %%
# On a star where every customer votes, the centre bribe that paid 3/5 with
# known positions averages to zero.

rng = random.Random(0)
profile = EvaluationProfile(tuple(Fraction(rng.randint(0, 10), 10) for _ in range(5)))
sigma = Strategy.from_mapping(5, {0: min(1 - profile[0], Fraction(1, 2))})
print("star, everyone votes:", expected_revenue_exact(PlacementScenario(star(4), profile, sigma)).value)
