"""Degree-reduced catalog trees and fractional cascading over their product.

The catalog graph is oriented: moves go down in C(T1) and up in C(T2), which
is the only way an HIA query ever walks it. Each node's augmented catalog
holds its own entries plus every ``k``-th entry of each out-neighbour's
augmented catalog, with ``k = 2 * indegree`` of that neighbour, so the total
size is at most twice the original size and a bridge hop needs a search over
a window of at most ``k`` entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import TopologicalSorter
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .decomposition import BranchTree, Decomposition
from .substructures import PairDictionary


def gadget_threshold(n: int) -> int:
    return max(2, n.bit_length() - 1)


@dataclass
class GadgetTree:
    parent: List[int]
    children: List[List[int]]
    size: List[int]
    original_count: int
    threshold: int
    edge_path: Dict[Tuple[int, int], Tuple[int, ...]] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def is_interval(self, u: int) -> bool:
        return u >= self.original_count

    def max_degree(self) -> int:
        return max(len(c) + (p >= 0) for c, p in zip(self.children, self.parent))

    def depths(self) -> List[int]:
        depth = [0] * self.node_count
        order = [0]
        for u in order:
            for c in self.children[u]:
                depth[c] = depth[u] + 1
                order.append(c)
        return depth

    def depth(self) -> int:
        return max(self.depths())


def build_gadget_tree(
    branch_tree: BranchTree,
    n: int,
    eligible: Optional[Callable[[int], bool]] = None,
) -> GadgetTree:
    """Replace high fan-out below branch nodes by nested interval nodes.

    A child ``h_i`` is marked when some multiple of ``s(e) / L`` falls in
    ``(s_{i-1}, s_i]`` (prefix sums of child sizes, ``L = floor(log2 n)``).
    Marked children and lone unmarked ones hang directly off ``e``; longer
    runs of unmarked children get an interval node, processed recursively.
    """
    if eligible is None:
        eligible = branch_tree.is_branch_node
    L = gadget_threshold(n)
    parent = list(branch_tree.parent)
    children = [list(c) for c in branch_tree.children]
    size = list(branch_tree.size)
    original = len(parent)

    work = [u for u in range(original) if eligible(u) and len(children[u]) > L]
    while work:
        u = work.pop()
        total = size[u]
        new_kids: List[int] = []
        run: List[int] = []

        def flush():
            if len(run) == 1:
                new_kids.append(run[0])
            elif run:
                node = len(parent)
                parent.append(u)
                children.append(list(run))
                size.append(1 + sum(size[c] for c in run))
                for c in run:
                    parent[c] = node
                new_kids.append(node)
                if len(run) > L:
                    work.append(node)
            run.clear()

        prefix = 0
        for h in children[u]:
            before = prefix
            prefix += size[h]
            if (prefix * L) // total > (before * L) // total:
                flush()
                new_kids.append(h)
            else:
                run.append(h)
        flush()
        for c in new_kids:
            parent[c] = u
        children[u] = new_kids

    g = GadgetTree(parent, children, size, original, L)
    for c in range(original):
        p = branch_tree.parent[c]
        if p < 0:
            continue
        path = [c]
        while path[-1] != p:
            path.append(parent[path[-1]])
        g.edge_path[p, c] = tuple(reversed(path))
    return g


def expand_path(g: GadgetTree, path: Sequence[int]) -> List[int]:
    """Map a simple branch-tree path (downward or upward) to its gadget-tree path."""
    out = [path[0]]
    for a, b in zip(path, path[1:]):
        if (a, b) in g.edge_path:
            seg = g.edge_path[a, b]
        elif (b, a) in g.edge_path:
            seg = g.edge_path[b, a][::-1]
        else:
            raise ValueError(f"({a}, {b}) is not an edge of the branch tree")
        out.extend(seg[1:])
    return out


class FractionalCascade:
    """Augmented catalogs with bridges over a DAG.

    ``out_edges[v]`` lists the nodes reachable from ``v`` in one move.
    """

    def __init__(self, catalogs: Dict[Hashable, Sequence[int]], out_edges: Dict[Hashable, Sequence[Hashable]]):
        nodes = set(out_edges) | set(catalogs)
        for targets in out_edges.values():
            nodes.update(targets)
        self.out_edges = {v: list(out_edges.get(v, ())) for v in nodes}
        self.out_index = {v: {w: j for j, w in enumerate(ws)} for v, ws in self.out_edges.items()}
        indeg = dict.fromkeys(nodes, 0)
        for ws in self.out_edges.values():
            for w in ws:
                indeg[w] += 1
        self.rate = {v: 2 * max(1, d) for v, d in indeg.items()}
        self.original = {v: list(catalogs.get(v, ())) for v in nodes}
        self.augmented: Dict[Hashable, List[int]] = {}
        self.original_rank: Dict[Hashable, List[int]] = {}
        self.bridges: Dict[Hashable, List[List[int]]] = {}

        for v in TopologicalSorter(self.out_edges).static_order():
            self._build_node(v)

    def _build_node(self, v):
        entries = [(x, -1, r) for r, x in enumerate(self.original[v])]
        outs = self.out_edges[v]
        for j, w in enumerate(outs):
            aug_w = self.augmented[w]
            k = self.rate[w]
            entries.extend((aug_w[t], j, t) for t in range(k - 1, len(aug_w), k))
        entries.sort(key=lambda e: e[0])
        self.augmented[v] = [e[0] for e in entries]
        last = [-1] * (len(outs) + 1)  # slot -1 tracks original entries
        ranks = []
        bridges: List[List[int]] = [[] for _ in outs]
        for _, j, t in entries:
            last[j] = t
            ranks.append(last[-1])
            for jj in range(len(outs)):
                bridges[jj].append(last[jj])
        self.original_rank[v] = ranks
        self.bridges[v] = bridges

    def total_original(self) -> int:
        return sum(len(c) for c in self.original.values())

    def total_augmented(self) -> int:
        return sum(len(c) for c in self.augmented.values())

    def max_degree(self) -> int:
        indeg: Dict[Hashable, int] = {}
        for ws in self.out_edges.values():
            for w in ws:
                indeg[w] = indeg.get(w, 0) + 1
        return max((len(ws) + indeg.get(v, 0) for v, ws in self.out_edges.items()), default=0)

    def walk(self, key: int) -> "CascadedWalk":
        return CascadedWalk(self, key)


class CascadedWalk:
    """Predecessors of one key along an online sequence of adjacent nodes."""

    def __init__(self, cascade: FractionalCascade, key: int):
        self.cascade = cascade
        self.key = key
        self.positions: Dict[Hashable, int] = {}
        self.last: Optional[Hashable] = None
        self.full_searches = 0
        self.comparisons = 0
        self.bridge_hops = 0

    def _search(self, values, lo, hi) -> int:
        """Largest index in [lo-1, hi) whose value is <= key, searching only [lo, hi)."""
        q = self.key
        while lo < hi:
            mid = (lo + hi) // 2
            self.comparisons += 1
            if values[mid] <= q:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def visit(self, node) -> Optional[Tuple[int, int]]:
        """``(value, rank)`` of the key's predecessor in ``node``'s original catalog."""
        c = self.cascade
        if node not in c.augmented:
            raise ValueError(f"unknown catalog node {node!r}")
        aug = c.augmented[node]
        if node in self.positions:
            p = self.positions[node]
        elif not self.positions:
            self.full_searches += 1
            p = self._search(aug, 0, len(aug))
        else:
            src = self._adjacent_source(node)
            if src is None:
                raise ValueError(f"node {node!r} is not reachable in one move from any visited node")
            p_src = self.positions[src]
            t = c.bridges[src][c.out_index[src][node]][p_src] if p_src >= 0 else -1
            self.bridge_hops += 1
            p = self._search(aug, t + 1, min(t + c.rate[node], len(aug)))
        self.positions[node] = p
        self.last = node
        r = c.original_rank[node][p] if p >= 0 else -1
        return None if r < 0 else (c.original[node][r], r)

    def _adjacent_source(self, node):
        c = self.cascade
        if self.last is not None and node in c.out_index[self.last]:
            return self.last
        for u in self.positions:
            if node in c.out_index[u]:
                return u
        return None


class ProductCatalogGraph:
    """The reachable part of C(T1) x C(T2) with X (D_x) and Y (D_y) cascades.

    Only nodes an HIA query can pass through are instantiated: branch pairs of
    relevant heavy-tree pairs, plus the gadget paths used to enter a heavy
    tree of T1 from its parent branch and to leave a heavy tree of T2 towards
    its parent branch.
    """

    def __init__(
        self,
        g1: GadgetTree,
        g2: GadgetTree,
        bt1: BranchTree,
        bt2: BranchTree,
        dec1: Decomposition,
        dec2: Decomposition,
        relevant: PairDictionary,
        staircases,
        build_cascades: bool = True,
    ):
        self.g1, self.g2, self.bt1, self.bt2 = g1, g2, bt1, bt2
        self.width = g2.node_count
        nodes = set()
        for h1, h2 in relevant:
            enter = None
            if h1:
                p1 = bt1.parent[bt1.heavy_node(h1)]
                enter = p1
            leave = None
            if h2:
                leave = bt2.parent[bt2.heavy_node(h2)]
            for e1 in dec1.heavy_tree_branches[h1]:
                c1 = bt1.branch_node(e1)
                for e2 in dec2.heavy_tree_branches[h2]:
                    c2 = bt2.branch_node(e2)
                    nodes.add(self.encode(c1, c2))
                    if enter is not None:
                        for g in expand_path(g1, [enter, bt1.heavy_node(h1), c1]):
                            nodes.add(self.encode(g, c2))
                    if leave is not None:
                        for g in expand_path(g2, [c2, bt2.heavy_node(h2), leave]):
                            nodes.add(self.encode(c1, g))
        self.nodes = nodes
        out: Dict[int, List[int]] = {}
        for code in nodes:
            c1, c2 = divmod(code, self.width)
            targets = [self.encode(k, c2) for k in g1.children[c1] if self.encode(k, c2) in nodes]
            up = g2.parent[c2]
            if up >= 0 and self.encode(c1, up) in nodes:
                targets.append(self.encode(c1, up))
            out[code] = targets
        self.out_edges = out

        xcat, ycat = {}, {}
        for (e1, e2), stair in staircases.items():
            code = self.encode(bt1.branch_node(e1), bt2.branch_node(e2))
            xcat[code] = stair.d_x.values
            ycat[code] = stair.d_y.values
        self.x_catalogs, self.y_catalogs = xcat, ycat
        self.x_cascade = self.y_cascade = None
        if build_cascades:
            self.x_cascade = FractionalCascade(xcat, out)
            self.y_cascade = FractionalCascade(ycat, out)

    def encode(self, c1: int, c2: int) -> int:
        return c1 * self.width + c2

    def decode(self, code: int) -> Tuple[int, int]:
        return divmod(code, self.width)

    def edge_count(self) -> int:
        return sum(len(v) for v in self.out_edges.values())


def build_cascade(graph: ProductCatalogGraph, side: str) -> FractionalCascade:
    catalogs = graph.x_catalogs if side.upper() == "X" else graph.y_catalogs
    return FractionalCascade(catalogs, graph.out_edges)


def cascaded_walk(cascade: FractionalCascade, start_node, key: int) -> CascadedWalk:
    w = cascade.walk(key)
    w.visit(start_node)
    return w
