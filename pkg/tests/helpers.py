"""Instance builders shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from netrating.io import cycle, path, star
from netrating.model import NO_OPINION, CustomersNetwork, EvaluationProfile, RatedInstance
from netrating.strategy import Strategy

TENTH = Fraction(1, 10)


def trio():
    """Three customers, evaluations (0.5, 0.5, *); the network is irrelevant under O."""
    return RatedInstance(CustomersNetwork.complete(3), EvaluationProfile(("1/2", "1/2", "*")))


def silent_star():
    """Non-voting centre with four leaves rating 0.2."""
    return RatedInstance(star(4), EvaluationProfile(("*", "1/5", "1/5", "1/5", "1/5")))


def star_all_half():
    return RatedInstance(star(4), EvaluationProfile(("1/2",) * 5))


def triangle_line():
    """Path A-B-C with A, B rating 0.2 and C silent; B sits in the middle."""
    return RatedInstance(path(3), EvaluationProfile(("1/5", "1/5", "*")))


def random_network(rng: random.Random, n: int, p=None) -> CustomersNetwork:
    p = rng.random() if p is None else p
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return CustomersNetwork.from_edges(n, edges)


def random_connected_network(rng: random.Random, n: int) -> CustomersNetwork:
    # random spanning tree plus extra edges
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    p = rng.random()
    edges += [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return CustomersNetwork.from_edges(n, edges)


def grid_value(rng: random.Random, step=TENTH):
    return rng.randint(0, int(1 / step)) * step


def random_instance(rng: random.Random, n: int, all_vote=False, need_nonvoter=False, net=None, step=TENTH):
    """Random valid instance with evaluations on the grid."""
    while True:
        g = net if net is not None else random_network(rng, n)
        if all_vote:
            values = [grid_value(rng, step) for _ in range(n)]
        else:
            values = [grid_value(rng, step) if rng.random() < 0.6 else NO_OPINION for _ in range(n)]
        if need_nonvoter and NO_OPINION not in values:
            continue
        voters = {c for c, v in enumerate(values) if v is not NO_OPINION}
        if voters and all(nb & voters for nb in g.neighborhoods):
            return RatedInstance(g, EvaluationProfile(tuple(values)))


def random_efficient_voter_only(rng: random.Random, inst: RatedInstance, step=None, budget=None):
    """Efficient strategy bribing a random subset of voters (exact rationals, optional grid)."""
    bribes = [Fraction(0)] * inst.n
    for c in sorted(inst.voters):
        if rng.random() < 0.5:
            slack = 1 - inst.profile[c]
            if step is None:
                bribes[c] = slack * Fraction(rng.randint(0, 12), 12)
            else:
                bribes[c] = rng.randint(0, int(slack / step)) * step
    sigma = Strategy(tuple(bribes))
    if budget is not None:
        # drop bribes from the highest index down until the strategy fits the budget
        for c in reversed(range(inst.n)):
            if sigma.total <= budget:
                break
            bribes[c] = Fraction(0)
            sigma = Strategy(tuple(bribes))
    return sigma


def catalog(max_n=6):
    """Connected shapes used by the placement suites: path, cycle, star, complete for n <= max_n."""
    shapes = []
    for n in range(1, max_n + 1):
        shapes.append((f"path{n}", path(n)))
        if n >= 3:
            shapes.append((f"cycle{n}", cycle(n)))
        shapes.append((f"star{n - 1}", star(n - 1)))
        shapes.append((f"complete{n}", CustomersNetwork.complete(n)))
    return shapes


# hypothesis strategies

tenths = st.integers(0, 10).map(lambda k: Fraction(k, 10))


@st.composite
def instances(draw, min_n=1, max_n=6, all_vote=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    net = CustomersNetwork.from_edges(n, [pr for pr, keep in zip(pairs, chosen) if keep])
    if all_vote:
        values = draw(st.lists(tenths, min_size=n, max_size=n))
    else:
        values = draw(st.lists(st.one_of(tenths, st.just(NO_OPINION)), min_size=n, max_size=n))
    voters = {c for c, v in enumerate(values) if v is not NO_OPINION}
    assume(voters and all(nb & voters for nb in net.neighborhoods))
    return RatedInstance(net, EvaluationProfile(tuple(values)))
