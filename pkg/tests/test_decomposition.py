import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from hia.decomposition import (
    branch_tree_path,
    build_branch_tree,
    decompose,
    heavy_tree_sequence,
    layer_of,
)
from hia.instances import SHAPES, random_tree
from hia.tree_model import WeightedLabelledTree, path_tree

# Thick edges of the 26-node example, transcribed from its drawing.
SAMPLE26_THICK = {
    ("26", "13"), ("26", "12"), ("12", "10"), ("10", "9"),
    ("6a", "5"), ("5", "4a"), ("4a", "3a"), ("2a", "1a"),
    ("8", "7"), ("7", "4b"), ("2b", "1f"), ("2c", "1h"), ("6b", "3b"),
}


def _tree(parents):
    return WeightedLabelledTree.from_parents(parents, _depths(parents), {})


def _depths(parents):
    d = [0] * len(parents)
    for v, p in enumerate(parents):
        if p >= 0:
            d[v] = d[p] + 1
    return d


def _random_tree(n, seed):
    p, w = random_tree(n, random.Random(seed))
    return WeightedLabelledTree.from_parents(p, w, {})


def test_layer_formula_matches_real_arithmetic():
    for n in (26, 100, 1000):
        for b in (2, 3, 7):
            for s in range(1, n + 1):
                k = layer_of(s, n, b)
                assert n / b ** (k + 1) < s <= n / b ** k


def test_rejects_small_b():
    with pytest.raises(ValueError):
        decompose(path_tree(3), 1)


def test_sample26_heavy_edges(sample26):
    tree, ids = sample26
    name = {v: k for k, v in ids.items()}
    dec = decompose(tree, 3)
    heavy = {(name[tree.parent[v]], name[v]) for v in range(1, 26) if dec.is_heavy_edge(tree.parent[v], v)}
    assert heavy == SAMPLE26_THICK
    assert not dec.is_heavy_edge(ids["13"], ids["6a"])
    assert dec.layer[ids["13"]] == 0 and dec.layer[ids["6a"]] == 1
    assert dec.layer[ids["2a"]] == dec.layer[ids["1a"]] == 2


def test_sample26_root_heavy_tree(sample26):
    tree, ids = sample26
    dec = decompose(tree, 3)
    root_tree = {dec.size[v] for v in dec.heavy_tree_nodes(dec.heavy_tree_id[0])}
    assert root_tree == {26, 13, 12, 10, 9}
    branches = [[dec.size[v] for v in dec.branch_nodes[e]] for e in dec.heavy_tree_branches[0]]
    assert sorted(branches) == [[12, 10, 9], [13], [26]]
    assert dec.distinct_layers() == 3


def test_sample26_light_children_first(sample26):
    tree, ids = sample26
    dec = decompose(tree, 3)
    assert dec.canonical_pre[ids["1i"]] < dec.canonical_pre[ids["10"]]


def test_sample26_left_spine_sequence(sample26):
    tree, ids = sample26
    dec = decompose(tree, 3)
    seq = heavy_tree_sequence(dec, ids["1a"])
    assert [dec.layer[x] for _, x in seq] == [0, 1, 2]
    assert [x for _, x in seq] == [ids["13"], ids["3a"], ids["1a"]]


def test_sample26_branch_tree(sample26):
    tree, _ = sample26
    dec = decompose(tree, 3)
    bt = build_branch_tree(dec)
    assert len(bt.children[bt.root]) == 3
    assert all(bt.is_branch_node(c) for c in bt.children[bt.root])


def test_path_with_b_equal_n():
    # s >= 2 is layer 0 and s = 1 is layer 1, so the path splits in two heavy trees
    n = 8
    dec = decompose(path_tree(n), n)
    assert dec.layer == [0] * (n - 1) + [1]
    assert dec.heavy_tree_count == 2
    assert dec.branch_count == 2


def test_only_light_edges_plain_preorder():
    # star with b=n: root layer 0, leaves layer 1
    t = _tree(SHAPES["star"](6))
    dec = decompose(t, 6)
    assert dec.pre_to_node == list(range(6))
    assert dec.heavy_tree_count == 6


def test_chain_preorder():
    dec = decompose(path_tree(3), 2)
    assert dec.canonical_pre == [0, 1, 2]


def test_single_node_branch_tree():
    dec = decompose(path_tree(1), 2)
    bt = build_branch_tree(dec)
    assert bt.node_count == 2
    assert bt.children[0] == [1]


def _check_invariants(tree, dec):
    n, b = tree.node_count, dec.b
    # canonical preorder is a preorder with heavy children last
    for v in range(n):
        kids = dec.ordered_children[v]
        flags = [dec.is_heavy_edge(v, c) for c in kids]
        assert flags == sorted(flags)
        assert sorted(kids) == sorted(tree.children[v])
    for v in range(n):
        assert dec.pre_to_node[dec.canonical_pre[v]] == v
        p = tree.parent[v]
        if p >= 0:
            assert dec.canonical_pre[p] < dec.canonical_pre[v] < dec.canonical_pre[p] + dec.size[p]
    # heavy trees are components of heavy edges
    for v in range(1, n):
        p = tree.parent[v]
        assert (dec.heavy_tree_id[v] == dec.heavy_tree_id[p]) == dec.is_heavy_edge(p, v)
    for h in range(dec.heavy_tree_count):
        nodes = dec.heavy_tree_nodes(h)
        assert len(dec.heavy_tree_leaves(h)) <= b
        assert len(dec.heavy_tree_branches[h]) <= 2 * b - 1
        assert len(set(dec.layer[v] for v in nodes)) == 1
    # branches are maximal single-child chains
    for e in range(dec.branch_count):
        chain = dec.branch_nodes[e]
        for a, c in zip(chain, chain[1:]):
            assert dec.heavy_children(a) == [c]
        assert len(dec.heavy_children(chain[-1])) != 1
        top = chain[0]
        p = tree.parent[top]
        if p >= 0 and dec.is_heavy_edge(p, top):
            assert len(dec.heavy_children(p)) >= 2
    for v in range(n):
        internal_single = len(dec.heavy_children(v)) == 1
        assert dec.explicit_flag[v] == (not internal_single)
    layers = math.floor(math.log(n, b) + 1e-12) + 1 if n > 1 else 1
    assert dec.distinct_layers() <= layers


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(2, 9), st.integers(0, 2**32))
def test_invariants_random(n, b, seed):
    tree = _random_tree(n, seed)
    _check_invariants(tree, decompose(tree, b))


@pytest.mark.parametrize("shape", ["caterpillar", "star", "balanced"])
@pytest.mark.parametrize("n", [1, 2, 17, 200])
def test_invariants_shapes(shape, n):
    tree = _tree(SHAPES[shape](n))
    _check_invariants(tree, decompose(tree, max(2, n.bit_length() - 1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 200), st.integers(2, 8), st.integers(0, 2**32))
def test_heavy_tree_sequence_covers_path(n, b, seed):
    tree = _random_tree(n, seed)
    dec = decompose(tree, b)
    v = random.Random(seed).randrange(n)
    seq = heavy_tree_sequence(dec, v)
    assert seq[0][0] == dec.heavy_tree_id[0]
    covered = []
    for h, anchor in seq:
        # nodes of h on the path are the anchor and its ancestors inside h
        u = anchor
        part = []
        while u != -1 and dec.heavy_tree_id[u] == h:
            part.append(u)
            u = tree.parent[u]
        covered += reversed(part)
    assert covered == list(reversed(tree.ancestors(v)))


def test_branch_tree_random():
    for seed in range(20):
        tree = _random_tree(200, seed)
        b = 7
        dec = decompose(tree, b)
        bt = build_branch_tree(dec)
        for h in range(dec.heavy_tree_count):
            assert len(bt.children[h]) <= 2 * b - 1
            assert all(bt.is_branch_node(c) for c in bt.children[h])
        for e in range(dec.branch_count):
            assert all(not bt.is_branch_node(c) for c in bt.children[bt.branch_node(e)])
        v = seed % 200
        path = branch_tree_path(dec, bt, v)
        for a, c in zip(path, path[1:]):
            assert bt.parent[c] == a
