import random

from hia.instances import random_pair
from hia.oracle import Oracle, leaf_walk_induced
from hia.tree_model import TreePair, WeightedLabelledTree


def test_roots_induced(two_leaf_pair):
    assert Oracle(two_leaf_pair).brute_induced(0, 0)


def test_different_labels_not_induced(two_leaf_pair):
    assert not Oracle(two_leaf_pair).brute_induced(1, 2)


def test_root_query():
    t1 = WeightedLabelledTree.from_parents([-1, 0], [3, 4], {1: 1})
    t2 = WeightedLabelledTree.from_parents([-1, 0], [5, 6], {1: 1})
    assert Oracle(TreePair(t1, t2)).brute_hia(0, 0) == (0, 0, 8)
    t3 = WeightedLabelledTree.from_parents([-1, 0], [5, 6], {1: 2})
    assert Oracle(TreePair(t1, t3)).brute_hia(0, 0) is None


def test_two_leaf_instance(two_leaf_pair):
    assert Oracle(two_leaf_pair).brute_hia(1, 2) == (0, 2, 2)


def test_matches_leaf_walk():
    rng = random.Random(51)
    for _ in range(30):
        pair = random_pair(rng.randint(2, 40), rng, drop=rng.choice([0.0, 0.5]))
        oracle = Oracle(pair)
        for u1 in range(pair.t1.node_count):
            for u2 in range(pair.t2.node_count):
                assert oracle.brute_induced(u1, u2) == leaf_walk_induced(pair, u1, u2)


def test_monotone_up_the_tree():
    # induced pairs stay induced when either side moves to its parent
    rng = random.Random(52)
    for _ in range(30):
        pair = random_pair(rng.randint(2, 40), rng)
        oracle = Oracle(pair)
        for u1 in range(pair.t1.node_count):
            for u2 in range(pair.t2.node_count):
                if oracle.brute_induced(u1, u2):
                    p1, p2 = pair.t1.parent[u1], pair.t2.parent[u2]
                    assert p1 < 0 or oracle.brute_induced(p1, u2)
                    assert p2 < 0 or oracle.brute_induced(u1, p2)


def test_hia_is_maximum_over_ancestor_pairs():
    rng = random.Random(53)
    for _ in range(30):
        pair = random_pair(rng.randint(2, 30), rng)
        oracle = Oracle(pair)
        v1, v2 = rng.randrange(pair.t1.node_count), rng.randrange(pair.t2.node_count)
        weights = [
            pair.t1.weight[a] + pair.t2.weight[b]
            for a in pair.t1.ancestors(v1)
            for b in pair.t2.ancestors(v2)
            if leaf_walk_induced(pair, a, b)
        ]
        assert oracle.brute_hia(v1, v2)[2] == max(weights)
