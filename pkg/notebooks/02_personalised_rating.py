"""
Influence weights and personalised ratings
==========================================

With personalised ratings each customer averages only the opinions in their
own neighbourhood. A well connected customer whose neighbours see few other
voters is worth more than one unit of utility per unit of bribe.
"""

from netrating import (
    EvaluationProfile,
    RatedInstance,
    Strategy,
    brute_force_best,
    influence_weights,
    p_greedy,
    revenue,
    revenue_formula_P,
)
from netrating.io import star

# %%
# A star with four leaves, everyone rating 0.5.

inst = RatedInstance(star(4), EvaluationProfile(("1/2",) * 5))
w = influence_weights(inst)
print("weights:", [str(x) for x in w])

# %%
# Revenue of an efficient voter-only strategy is the sum of
# ``(w_c - 1) * bribe`` over bribed customers, so only weights above one pay.

for c in (0, 1):
    sigma = Strategy.from_mapping(5, {c: "1/2"})
    print(f"bribe customer {c}: revenue {revenue(inst, sigma, 'P').revenue}, from weights {revenue_formula_P(inst, sigma)}")

sigma = p_greedy(inst)
print("p_greedy:", [str(b) for b in sigma.bribes])

# %%
# If the centre has no opinion, the weights above no longer tell the whole
# story: bribing the centre creates a new voter that every leaf can see.

silent_centre = RatedInstance(star(4), EvaluationProfile(("*", "1/5", "1/5", "1/5", "1/5")))
best = brute_force_best(silent_centre, "P")
print("oracle:", [str(b) for b in best.best_strategy.bribes], "revenue", best.best_revenue)
