import bisect
import math
import random

import pytest

from hia.cascade import CascadedWalk, FractionalCascade, build_gadget_tree, expand_path, gadget_threshold
from hia.decomposition import BranchTree, build_branch_tree, decompose
from hia.engine import HiaIndex
from hia.harness import AUGMENTED_SIZE_FACTOR
from hia.instances import random_pair, random_tree
from hia.tree_model import WeightedLabelledTree


def _pred(values, q):
    r = bisect.bisect_right(values, q) - 1
    return None if r < 0 else (values[r], r)


def test_two_node_graph():
    fc = FractionalCascade({"a": [2, 5], "b": [3, 9]}, {"a": ["b"]})
    w = fc.walk(4)
    assert w.visit("a") == (2, 0)
    assert w.visit("b") == (3, 0)
    assert w.full_searches == 1 and w.bridge_hops == 1


def test_single_node_one_search():
    fc = FractionalCascade({0: [1, 4, 6]}, {})
    w = fc.walk(5)
    assert w.visit(0) == (4, 1)
    assert w.full_searches == 1 and w.comparisons <= 2


def test_path_of_ten():
    rng = random.Random(41)
    cats = {i: sorted(rng.sample(range(500), rng.randint(0, 40))) for i in range(10)}
    fc = FractionalCascade(cats, {i: [i + 1] for i in range(9)})
    for _ in range(1000):
        q = rng.randrange(-5, 505)
        w = fc.walk(q)
        for i in range(10):
            assert w.visit(i) == _pred(cats[i], q)
        assert w.full_searches == 1


def test_random_dag_walks():
    rng = random.Random(42)
    n = 60
    out = {v: sorted(rng.sample(range(v + 1, n), min(n - v - 1, rng.randint(0, 4)))) for v in range(n)}
    cats = {v: sorted(rng.sample(range(1000), rng.randint(0, 30))) for v in range(n)}
    fc = FractionalCascade(cats, out)
    assert fc.total_augmented() <= AUGMENTED_SIZE_FACTOR * fc.total_original()
    for _ in range(300):
        q = rng.randrange(1000)
        v = rng.randrange(n)
        w = fc.walk(q)
        while True:
            assert w.visit(v) == _pred(cats[v], q)
            if not out[v]:
                break
            v = rng.choice(out[v])


def test_visit_rejects_unreachable():
    fc = FractionalCascade({0: [1], 1: [2], 2: [3]}, {0: [1]})
    w = fc.walk(2)
    w.visit(0)
    with pytest.raises(ValueError):
        w.visit(2)
    with pytest.raises(ValueError):
        w.visit("missing")


def _star_branch_tree(k):
    # heavy node 0 -> branch node k+1 -> heavy leaves 1..k
    parent = [-1] + [k + 1] * k + [0]
    children = [[k + 1]] + [[] for _ in range(k)] + [list(range(1, k + 1))]
    size = [k + 2] + [1] * k + [k + 1]
    return BranchTree(k + 1, 1, parent, children, size)


def test_star_gadget():
    k = n = 2 ** 16
    bt = _star_branch_tree(k)
    g = build_gadget_tree(bt, n)
    L = n.bit_length() - 1
    assert g.max_degree() <= 2 * L + 2
    assert g.depth() - bt.depth() <= math.ceil(math.log(n, L))
    assert all(len(g.children[u]) >= 2 for u in range(g.original_count, g.node_count))
    path = expand_path(g, [bt.branch_node(0), 1234])
    assert path[0] == bt.branch_node(0) and path[-1] == 1234
    assert all(g.is_interval(u) for u in path[1:-1])


def test_small_fanout_is_unchanged():
    p, w = random_tree(50, random.Random(43))
    dec = decompose(WeightedLabelledTree.from_parents(p, w, {}), 2)
    bt = build_branch_tree(dec)
    g = build_gadget_tree(bt, 2 ** 30)  # threshold 30 exceeds every fan-out
    assert g.parent == bt.parent
    assert expand_path(g, [0]) == [0]
    c = bt.children[0][0]
    assert expand_path(g, [0, c]) == [0, c]


def _is_subsequence(p, q):
    it = iter(q)
    return all(x in it for x in p)


@pytest.mark.parametrize("seed", range(5))
def test_gadget_random(seed):
    rng = random.Random(seed)
    n = rng.choice([100, 1000, 5000])
    p, w = random_tree(n, rng)
    dec = decompose(WeightedLabelledTree.from_parents(p, w, {}), max(2, n.bit_length() - 1))
    bt = build_branch_tree(dec)
    g = build_gadget_tree(bt, n)
    assert g.max_degree() <= 2 * gadget_threshold(n) + 2
    for _ in range(50):
        v = rng.randrange(bt.node_count)
        path = [v]
        while bt.parent[path[-1]] >= 0:
            path.append(bt.parent[path[-1]])
        path.reverse()
        down = expand_path(g, path)
        assert _is_subsequence(path, down)
        assert all(g.parent[c] == a for a, c in zip(down, down[1:]))
        assert expand_path(g, path[::-1]) == down[::-1]


def test_product_adjacency_is_cartesian():
    rng = random.Random(44)
    for _ in range(10):
        pair = random_pair(rng.randint(5, 60), rng)
        index = HiaIndex(pair, 2)
        cat, g1, g2 = index.catalog, index.g1, index.g2
        for a in cat.nodes:
            a1, a2 = cat.decode(a)
            for b in cat.nodes:
                b1, b2 = cat.decode(b)
                rule = (a2 == b2 and g1.parent[b1] == a1) or (a1 == b1 and g2.parent[a2] == b2)
                assert (b in cat.out_edges[a]) == rule


def test_catalogs_only_at_relevant_branch_pairs():
    rng = random.Random(45)
    pair = random_pair(80, rng)
    index = HiaIndex(pair)
    cat = index.catalog
    for code, values in cat.x_cascade.original.items():
        if values:
            c1, c2 = cat.decode(code)
            assert index.bt1.is_branch_node(c1) and index.bt2.is_branch_node(c2)
            e1 = c1 - index.bt1.heavy_tree_count
            e2 = c2 - index.bt2.heavy_tree_count
            assert (index.dec1.branch_heavy_tree[e1], index.dec2.branch_heavy_tree[e2]) in index.relevant


def test_augmented_size_bound():
    rng = random.Random(46)
    for _ in range(5):
        index = HiaIndex(random_pair(rng.randint(100, 800), rng))
        for fc in (index.catalog.x_cascade, index.catalog.y_cascade):
            assert fc.total_augmented() <= AUGMENTED_SIZE_FACTOR * fc.total_original()


def test_bridged_answers_match_binary_search(monkeypatch):
    checked = []
    original_visit = CascadedWalk.visit

    def checking_visit(self, node):
        got = original_visit(self, node)
        assert got == _pred(self.cascade.original[node], self.key)
        checked.append(node)
        return got

    monkeypatch.setattr(CascadedWalk, "visit", checking_visit)
    rng = random.Random(47)
    for _ in range(20):
        pair = random_pair(rng.randint(10, 200), rng)
        index = HiaIndex(pair)
        for _ in range(50):
            index.query(rng.randrange(pair.t1.node_count), rng.randrange(pair.t2.node_count), "cascading")
    assert checked
