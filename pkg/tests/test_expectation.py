import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest

from helpers import catalog, random_connected_network, random_efficient_voter_only, random_instance
from netrating.exceptions import BudgetError, EnumerationCapError, InvalidPlacementError
from netrating.expectation import (
    PlacementScenario,
    expected_revenue_exact,
    expected_revenue_mc,
    per_placement_revenue,
    placed_instance,
)
from netrating.io import path, star
from netrating.model import CustomersNetwork, EvaluationProfile, RatedInstance, initial_utility
from netrating.strategy import Strategy, compose, revenue

B_MIDDLE, A_MIDDLE, C_MIDDLE = (0, 1, 2), (1, 0, 2), (0, 2, 1)


@pytest.fixture
def scenario(tri):
    return PlacementScenario(tri.network, tri.profile, Strategy.from_mapping(3, {1: "1/5"}), "P")


def automorphisms(net):
    n = net.n
    edges = set(net.edges())
    for perm in itertools.permutations(range(n)):
        if {tuple(sorted((perm[a], perm[b]))) for a, b in edges} == edges:
            yield perm


def fraction_route(scenario):
    """Placement-by-placement enumeration through the Fraction revenue code."""
    return Counter(per_placement_revenue(scenario, p) for p in itertools.permutations(range(scenario.n)))


class TestPerPlacement:
    def test_layouts(self, scenario):
        assert per_placement_revenue(scenario, B_MIDDLE) == Fraction(1, 5)
        assert per_placement_revenue(scenario, A_MIDDLE) == 0
        assert per_placement_revenue(scenario, C_MIDDLE) == Fraction(1, 10)

    def test_identity_matches_strategy_module(self, scenario, tri):
        assert per_placement_revenue(scenario, (0, 1, 2)) == revenue(tri, scenario.sigma, "P").revenue

    def test_mirror_placements_agree(self, scenario):
        for p in itertools.permutations(range(3)):
            mirror = tuple(2 - node for node in p)
            assert per_placement_revenue(scenario, p) == per_placement_revenue(scenario, mirror)

    def test_not_a_bijection(self, scenario):
        with pytest.raises(InvalidPlacementError):
            per_placement_revenue(scenario, (0, 0, 1))

    def test_placed_network(self, scenario):
        inst = placed_instance(scenario, C_MIDDLE)
        # C is on the middle node, so it is adjacent to both A and B
        assert inst.network.neighborhoods[2] == {0, 1, 2}


class TestScenario:
    def test_stranding_shape_rejected(self):
        # two voters on a path of 4 can both land at one end
        with pytest.raises(InvalidPlacementError):
            PlacementScenario(path(4), EvaluationProfile(("1/2", "1/2", "*", "*")), Strategy.zero(4), "P")

    def test_budget_checked_canonically(self, tri):
        with pytest.raises(BudgetError):
            PlacementScenario(tri.network, tri.profile, Strategy.from_mapping(3, {0: "7/10"}), "P")

    def test_budget_reported(self, scenario):
        assert scenario.budget == Fraction(3, 5)
        assert scenario.validation == "exhaustive"


class TestExact:
    def test_triangle_line(self, scenario):
        res = expected_revenue_exact(scenario)
        assert res.exact
        assert res.value == Fraction(1, 10)
        assert res.placements_evaluated == 6
        assert res.revenue_counts == {Fraction(1, 5): 2, Fraction(0): 2, Fraction(1, 10): 2}

    def test_cap(self):
        net = path(10)
        sc = PlacementScenario(net, EvaluationProfile(("1/2",) * 10), Strategy.zero(10), "P")
        with pytest.raises(EnumerationCapError, match="expected_revenue_mc"):
            expected_revenue_exact(sc)

    def test_matches_fraction_route(self):
        rng = random.Random(8)
        for _ in range(20):
            n = rng.randint(2, 4)
            inst = random_instance(rng, n, net=random_connected_network(rng, n))
            try:
                for system in "OP":
                    sigma = random_efficient_voter_only(rng, inst, budget=initial_utility(inst, system))
                    sc = PlacementScenario(inst.network, inst.profile, sigma, system)
                    counts = fraction_route(sc)
                    res = expected_revenue_exact(sc)
                    assert res.revenue_counts == dict(counts)
                    assert res.value == sum(r * k for r, k in counts.items()) / sum(counts.values())
            except InvalidPlacementError:
                continue

    def test_non_voter_bribe_matches_fraction_route(self, silent_star):
        sigma = Strategy.from_mapping(5, {0: 1})
        sc = PlacementScenario(silent_star.network, silent_star.profile, sigma, "P")
        counts = fraction_route(sc)
        assert expected_revenue_exact(sc).revenue_counts == dict(counts)

    def test_all_vote_zero_expectation(self):
        rng = random.Random(2)
        for name, shape in catalog(5):
            values = [Fraction(rng.randint(0, 10), 10) for _ in range(shape.n)]
            profile = EvaluationProfile(tuple(values))
            inst = RatedInstance(shape, profile)
            for _ in range(5):
                sigma = random_efficient_voter_only(rng, inst, budget=initial_utility(inst, "P"))
                res = expected_revenue_exact(PlacementScenario(shape, profile, sigma, "P"), table=False)
                assert res.value == 0, name

    def test_overspending_bribe_has_negative_expectation(self):
        # the zero result needs efficiency: a wasted bribe is lost on every placement
        shape = star(3)
        profile = EvaluationProfile(("9/10", "1/2", "1/2", "1/2"))
        sigma = Strategy.from_mapping(4, {0: "1/2"})
        res = expected_revenue_exact(PlacementScenario(shape, profile, sigma, "P"))
        assert res.value == Fraction(-2, 5)

    def test_linearity(self):
        rng = random.Random(4)
        for _ in range(20):
            n = rng.randint(2, 5)
            shape = random_connected_network(rng, n)
            inst = random_instance(rng, n, all_vote=True, net=shape)
            if len(inst.voters) < 2:
                continue
            sigma = random_efficient_voter_only(rng, inst, budget=initial_utility(inst, "P"))
            cut = rng.randint(0, n)
            s1 = Strategy(tuple(b if c < cut else 0 for c, b in enumerate(sigma.bribes)))
            s2 = Strategy(tuple(0 if c < cut else b for c, b in enumerate(sigma.bribes)))
            e = lambda s: expected_revenue_exact(PlacementScenario(shape, inst.profile, s, "P"), table=False).value
            assert e(compose(s1, s2)) == e(s1) + e(s2)

    def test_automorphic_placements_agree(self, silent_star):
        sc = PlacementScenario(silent_star.network, silent_star.profile, Strategy.from_mapping(5, {0: "1/2", 1: "1/5"}), "P")
        rng = random.Random(0)
        autos = list(automorphisms(silent_star.network))
        assert len(autos) == 24
        for _ in range(10):
            p = list(range(5))
            rng.shuffle(p)
            r = per_placement_revenue(sc, p)
            for a in autos[:6]:
                assert per_placement_revenue(sc, [a[node] for node in p]) == r


class TestMonteCarlo:
    def test_triangle_line(self, scenario):
        res = expected_revenue_mc(scenario, 10_000, seed=12345)
        assert not res.exact
        assert abs(float(res.value) - 0.1) <= 3 * res.standard_error

    def test_reproducible(self, scenario):
        a = expected_revenue_mc(scenario, 3000, seed=7, table=True)
        b = expected_revenue_mc(scenario, 3000, seed=7, table=True)
        assert a == b

    def test_prefix_stable(self, scenario):
        # blocks use per-block seeds, so a longer run extends a shorter one
        short = expected_revenue_mc(scenario, 1024, seed=3, table=True)
        long = expected_revenue_mc(scenario, 2048, seed=3, table=True)
        assert all(long.revenue_counts.get(r, 0) >= k for r, k in short.revenue_counts.items())

    def test_single_draw(self, scenario):
        res = expected_revenue_mc(scenario, 1, seed=99)
        assert res.value in {Fraction(1, 5), Fraction(0), Fraction(1, 10)}
        assert res.standard_error is None

    def test_all_vote(self):
        shape = CustomersNetwork.from_edges(8, [(i, i + 1) for i in range(7)] + [(0, 4), (2, 6)])
        profile = EvaluationProfile(("1/10", "2/5", "1/2", "0", "3/10", "7/10", "1/5", "1/2"))
        sigma = Strategy.from_mapping(8, {0: "1/2", 3: "3/10", 6: "1/10"})
        res = expected_revenue_mc(PlacementScenario(shape, profile, sigma, "P"), 5000, seed=1)
        assert abs(float(res.value)) <= 3 * res.standard_error

    def test_rejects_zero_samples(self, scenario):
        with pytest.raises(ValueError):
            expected_revenue_mc(scenario, 0, seed=1)
