import random

import pytest
from hypothesis import given, strategies as st

from hia.decomposition import decompose
from hia.instances import random_pair, random_tree
from hia.oracle import Oracle
from hia.staircase import collect_relevant_pairs
from hia.substructures import LcaStructure, PairDictionary, PredecessorList, RangeMax
from hia.tree_model import TreePair, WeightedLabelledTree


def _naive_lca(tree, u, v):
    up = set(tree.ancestors(u))
    return next(a for a in tree.ancestors(v) if a in up)


def test_lca_trivial():
    p, w = random_tree(30, random.Random(3))
    t = WeightedLabelledTree.from_parents(p, w, {})
    s = LcaStructure(t)
    for v in range(30):
        assert s.lca(0, v) == 0
        assert s.lca(v, v) == v


def test_lca_random():
    rng = random.Random(5)
    p, w = random_tree(100, rng)
    t = WeightedLabelledTree.from_parents(p, w, {})
    s = LcaStructure(t)
    for _ in range(1000):
        u, v = rng.randrange(100), rng.randrange(100)
        assert s.lca(u, v) == _naive_lca(t, u, v)


def test_predecessor_examples():
    d = PredecessorList([2, 5, 9])
    assert d.predecessor(5) == (5, 1)
    assert d.predecessor(1) is None
    assert d.predecessor(100) == (9, 2)
    assert PredecessorList([]).predecessor(3) is None


def test_predecessor_random():
    rng = random.Random(8)
    for _ in range(10_000):
        values = sorted(set(rng.sample(range(60), rng.randint(0, 20))))
        q = rng.randrange(-2, 62)
        below = [v for v in values if v <= q]
        want = (below[-1], len(below) - 1) if below else None
        assert PredecessorList(values).predecessor(q) == want


def test_predecessor_comparison_count():
    d = PredecessorList(range(1000))
    _, c = d.search(500)
    assert c <= 10


def test_range_max_examples():
    assert RangeMax([3, 1, 4]).query(0, 2) == (2, 4)
    assert RangeMax([7]).query(0, 0) == (0, 7)
    with pytest.raises(IndexError):
        RangeMax([1, 2]).query(1, 0)


def test_range_max_random():
    rng = random.Random(9)
    for _ in range(10_000):
        arr = [rng.randrange(20) for _ in range(rng.randint(1, 30))]
        i = rng.randrange(len(arr))
        j = rng.randrange(i, len(arr))
        best = max(arr[i:j + 1])
        assert RangeMax(arr).query(i, j) == (arr.index(best, i), best)


@given(st.sets(st.tuples(st.integers(0, 9), st.integers(0, 9))))
def test_pair_dictionary_membership(pairs):
    d = PairDictionary(pairs)
    assert len(d) == len(pairs)
    for a in range(10):
        for b in range(10):
            assert ((a, b) in d) == ((a, b) in pairs) == d.contains(a, b)


def test_relevant_pairs_root_pair(two_leaf_pair):
    d1, d2 = decompose(two_leaf_pair.t1, 2), decompose(two_leaf_pair.t2, 2)
    assert (d1.heavy_tree_id[0], d2.heavy_tree_id[0]) in collect_relevant_pairs(two_leaf_pair, d1, d2)


def test_relevant_pairs_disjoint_labels():
    t1 = WeightedLabelledTree.from_parents([-1, 0, 0], [0, 1, 2], {1: 1, 2: 2})
    t2 = WeightedLabelledTree.from_parents([-1, 0, 0], [0, 1, 2], {1: 3, 2: 4})
    pair = TreePair(t1, t2)
    assert len(collect_relevant_pairs(pair, decompose(t1, 2), decompose(t2, 2))) == 0


def test_relevant_pairs_single_label():
    rng = random.Random(4)
    p1, w1 = random_tree(40, rng)
    p2, w2 = random_tree(40, rng)
    t1 = WeightedLabelledTree.from_parents(p1, w1, {39: 1})
    t2 = WeightedLabelledTree.from_parents(p2, w2, {39: 1})
    pair = TreePair(t1, t2)
    d1, d2 = decompose(t1, 3), decompose(t2, 3)
    hs1 = {d1.heavy_tree_id[v] for v in t1.ancestors(39)}
    hs2 = {d2.heavy_tree_id[v] for v in t2.ancestors(39)}
    assert set(collect_relevant_pairs(pair, d1, d2)) == {(a, b) for a in hs1 for b in hs2}


@pytest.mark.parametrize("drop", [0.0, 0.4])
def test_relevant_pairs_match_oracle(drop):
    rng = random.Random(12)
    for _ in range(30):
        pair = random_pair(rng.randint(3, 80), rng, drop=drop)
        d1, d2 = decompose(pair.t1, 3), decompose(pair.t2, 3)
        oracle = Oracle(pair)
        got = collect_relevant_pairs(pair, d1, d2)
        want = {
            (h1, h2)
            for h1, r1 in enumerate(d1.heavy_tree_root)
            for h2, r2 in enumerate(d2.heavy_tree_root)
            if oracle.brute_induced(r1, r2)
        }
        assert set(got) == want
