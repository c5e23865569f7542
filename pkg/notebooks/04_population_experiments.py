"""
Growing the population
======================

Silent customers added far from the bribed ones change the two systems in
opposite ways. Under the global average they dilute the honest voters and
make each bribed vote count for more. Under the personalised rating they
only see the anchor they are attached to, so the revenue does not move.
"""

from netrating import EvaluationProfile, RatedInstance, Strategy
from netrating.experiments import bound_sweep, monotonic_series
from netrating.io import path

inst = RatedInstance(path(5), EvaluationProfile(("1/2", "1/5", "3/10", "1/2", "2/5")))
sigma = Strategy.from_mapping(5, {0: "1/2"})

series = monotonic_series(inst, sigma, k_max=10)
print(f"anchor {series.anchor}, outside reach: {series.anchor_outside_reach}")
print(" k   r_O        r_P")
for k, r_o, r_p in series.rows:
    print(f"{k:2d}   {float(r_o):8.4f}   {float(r_p):.4f}")

# %%
# A single bribe can never earn as much as the size of the bribed
# customer's neighbourhood.

for row in bound_sweep(inst):
    print(f"customer {row.customer}: best {row.max_revenue} < {row.bound}")
