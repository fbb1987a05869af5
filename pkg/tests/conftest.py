import random

import pytest

from hia.instances import random_pair, sample26_tree
from hia.tree_model import TreePair, WeightedLabelledTree


@pytest.fixture
def sample26():
    return sample26_tree()


@pytest.fixture
def two_leaf_pair():
    # T1: root(0) -> a(1, label 1), b(5, label 2); T2: root(0) -> c(7, label 1), d(2, label 2)
    t1 = WeightedLabelledTree.from_parents([-1, 0, 0], [0, 1, 5], {1: 1, 2: 2})
    t2 = WeightedLabelledTree.from_parents([-1, 0, 0], [0, 7, 2], {1: 1, 2: 2})
    return TreePair(t1, t2)


def random_pairs(seed, count, n_lo, n_hi, drop=0.0):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_pair(rng.randint(n_lo, n_hi), rng, drop=drop)
