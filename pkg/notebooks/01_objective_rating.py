"""
Bribing under a global average
==============================

Three customers, two of whom rated the restaurant 0.5. Under the objective
rating every customer sees the same number, so a bribe only moves the
average it is diluted into.
"""

from fractions import Fraction

from netrating import (
    CustomersNetwork,
    EvaluationProfile,
    RatedInstance,
    Strategy,
    brute_force_best,
    compose,
    initial_utility,
    o_greedy,
    revenue,
)

inst = RatedInstance(CustomersNetwork.complete(3), EvaluationProfile(("1/2", "1/2", "*")))
print("u0 under O:", initial_utility(inst, "O"))

# %%
# Paying a voter half a unit lifts the average from 1/2 to 3/4. Paying the
# silent customer the same amount turns them into a voter at 1/2, which
# costs money and leaves the average where it was.

to_voter = Strategy.from_mapping(3, {0: "1/2"})
to_silent = Strategy.from_mapping(3, {2: "1/2"})
for name, sigma in [("voter", to_voter), ("silent", to_silent), ("both", compose(to_voter, to_silent))]:
    rep = revenue(inst, sigma, "O")
    print(f"bribe {name:6s}  u_sigma={rep.u_sigma!s:5s}  revenue={rep.revenue}")

# %%
# O-greedy spends the whole budget on voters in index order. Here that is
# profitable: the silent customer pays nothing yet still reads the raised
# average, so each unit spent returns more than a unit of utility.

sigma = o_greedy(inst)
print("o_greedy:", [str(b) for b in sigma.bribes], "revenue", revenue(inst, sigma, "O").revenue)

# %%
# When everybody votes the same trick earns nothing. The grid oracle checks
# all strategies with bribes in steps of 1/10 and finds nothing better than
# doing nothing.

everyone = RatedInstance(CustomersNetwork.complete(3), EvaluationProfile(("1/2", "3/10", "4/5")))
best = brute_force_best(everyone, "O", Fraction(1, 10))
print(f"all voters: best revenue {best.best_revenue} over {best.strategies_examined} strategies")
