"""Layered heavy/light decomposition with logarithmic branching.

A node lies on layer ``k`` when ``n / b**(k+1) < s(v) <= n / b**k`` where
``s`` is the subtree size. Edges joining nodes of the same layer are heavy;
their connected components are heavy trees, which are cut into branches
(maximal downward paths whose non-last nodes have a single heavy child).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .tree_model import WeightedLabelledTree, subtree_sizes


def layer_of(size: int, n: int, b: int) -> int:
    """The unique ``k`` with ``n < size * b**(k+1)`` and ``size * b**k <= n``."""
    k = 0
    scaled = size * b  # size * b**(k+1)
    while scaled <= n:
        k += 1
        scaled *= b
    return k


@dataclass
class Decomposition:
    b: int
    n: int
    size: List[int]
    layer: List[int]
    heavy_tree_id: List[int]
    branch_id: List[int]
    heavy_tree_root: List[int]
    heavy_tree_branches: List[List[int]]
    branch_top: List[int]
    branch_bottom: List[int]
    branch_nodes: List[List[int]]
    branch_heavy_tree: List[int]
    explicit_flag: List[bool]
    ordered_children: List[List[int]]
    canonical_pre: List[int]
    pre_to_node: List[int]
    parent: List[int]

    @property
    def heavy_tree_count(self) -> int:
        return len(self.heavy_tree_root)

    @property
    def branch_count(self) -> int:
        return len(self.branch_top)

    def is_heavy_edge(self, u: int, v: int) -> bool:
        return self.layer[u] == self.layer[v]

    def heavy_children(self, v: int) -> List[int]:
        return [c for c in self.ordered_children[v] if self.layer[c] == self.layer[v]]

    def heavy_tree_nodes(self, h: int) -> List[int]:
        return [v for e in self.heavy_tree_branches[h] for v in self.branch_nodes[e]]

    def heavy_tree_leaves(self, h: int) -> List[int]:
        return [v for v in self.heavy_tree_nodes(h) if not self.heavy_children(v)]

    def distinct_layers(self) -> int:
        return len(set(self.layer))

    def compacted_heavy_tree(self, h: int) -> Dict[int, int]:
        """Explicit nodes of heavy tree ``h`` mapped to their compacted parent (-1 at the root)."""
        out: Dict[int, int] = {}
        for v in self.heavy_tree_nodes(h):
            if not self.explicit_flag[v]:
                continue
            p = self.parent[v]
            while p != -1 and self.heavy_tree_id[p] == h and not self.explicit_flag[p]:
                p = self.parent[p]
            if p == -1 or self.heavy_tree_id[p] != h:
                p = -1
            out[v] = p
        return out


def decompose(tree: WeightedLabelledTree, b: int) -> Decomposition:
    if b < 2:
        raise ValueError(f"branching parameter b must be at least 2, got {b}")
    n = tree.node_count
    size = subtree_sizes(tree)
    layer = [layer_of(s, n, b) for s in size]

    ordered = [
        [c for c in kids if layer[c] != layer[v]] + [c for c in kids if layer[c] == layer[v]]
        for v, kids in enumerate(tree.children)
    ]
    pre = [0] * n
    pre_to_node: List[int] = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        pre[v] = len(pre_to_node)
        pre_to_node.append(v)
        stack.extend(reversed(ordered[v]))

    heavy_tree_id = [-1] * n
    branch_id = [-1] * n
    explicit = [True] * n
    ht_root: List[int] = []
    ht_branches: List[List[int]] = []
    br_nodes: List[List[int]] = []
    br_ht: List[int] = []

    # Visiting in canonical preorder numbers heavy trees and branches by the
    # preorder of their top nodes.
    for v in pre_to_node:
        p = tree.parent[v]
        if p == -1 or layer[p] != layer[v]:
            heavy_tree_id[v] = len(ht_root)
            ht_root.append(v)
            ht_branches.append([])
        else:
            heavy_tree_id[v] = heavy_tree_id[p]
        h = heavy_tree_id[v]
        heavy_kids = [c for c in ordered[v] if layer[c] == layer[v]]
        if len(heavy_kids) == 1:
            explicit[v] = False
        continues_branch = p != -1 and layer[p] == layer[v] and len(
            [c for c in ordered[p] if layer[c] == layer[p]]
        ) == 1
        if continues_branch:
            e = branch_id[p]
        else:
            e = len(br_nodes)
            br_nodes.append([])
            br_ht.append(h)
            ht_branches[h].append(e)
        branch_id[v] = e
        br_nodes[e].append(v)

    return Decomposition(
        b=b,
        n=n,
        size=size,
        layer=layer,
        heavy_tree_id=heavy_tree_id,
        branch_id=branch_id,
        heavy_tree_root=ht_root,
        heavy_tree_branches=ht_branches,
        branch_top=[nodes[0] for nodes in br_nodes],
        branch_bottom=[nodes[-1] for nodes in br_nodes],
        branch_nodes=br_nodes,
        branch_heavy_tree=br_ht,
        explicit_flag=explicit,
        ordered_children=ordered,
        canonical_pre=pre,
        pre_to_node=pre_to_node,
        parent=list(tree.parent),
    )


def canonical_preorder(tree: WeightedLabelledTree, dec: Decomposition) -> Tuple[List[int], List[int]]:
    """Preorder numbers with light-edge children visited before heavy-edge ones."""
    return dec.canonical_pre, dec.pre_to_node


def heavy_tree_sequence(dec: Decomposition, v: int) -> List[Tuple[int, int]]:
    """Heavy trees met on the root-to-``v`` path, root first.

    Each entry is ``(heavy_tree_id, anchor)`` where the anchor is the lowest
    weak ancestor of ``v`` inside that heavy tree.
    """
    out = []
    while v != -1:
        h = dec.heavy_tree_id[v]
        out.append((h, v))
        v = dec.parent[dec.heavy_tree_root[h]]
    out.reverse()
    return out


@dataclass
class BranchTree:
    """Alternating tree of heavy-tree nodes and branch nodes.

    Heavy tree ``h`` is node ``h``; branch ``e`` is node ``heavy_tree_count + e``.
    """

    heavy_tree_count: int
    branch_count: int
    parent: List[int]
    children: List[List[int]]
    size: List[int]

    @property
    def root(self) -> int:
        return 0

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def heavy_node(self, h: int) -> int:
        return h

    def branch_node(self, e: int) -> int:
        return self.heavy_tree_count + e

    def is_branch_node(self, node: int) -> bool:
        return node >= self.heavy_tree_count

    def depth(self) -> int:
        best = 0
        depth = {self.root: 0}
        stack = [self.root]
        while stack:
            u = stack.pop()
            best = max(best, depth[u])
            for c in self.children[u]:
                depth[c] = depth[u] + 1
                stack.append(c)
        return best


def build_branch_tree(dec: Decomposition) -> BranchTree:
    H, E = dec.heavy_tree_count, dec.branch_count
    parent = [-1] * (H + E)
    children: List[List[int]] = [[] for _ in range(H + E)]
    for h in range(H):
        for e in dec.heavy_tree_branches[h]:
            parent[H + e] = h
            children[h].append(H + e)
        if h:
            e = dec.branch_id[dec.parent[dec.heavy_tree_root[h]]]
            parent[h] = H + e
            children[H + e].append(h)
    size = [1] * (H + E)
    order = [0]
    for u in order:
        order.extend(children[u])
    for u in reversed(order):
        if parent[u] >= 0:
            size[parent[u]] += size[u]
    return BranchTree(H, E, parent, children, size)


def branch_tree_path(dec: Decomposition, bt: BranchTree, v: int) -> List[int]:
    """Root-down path in the branch tree visiting the heavy trees and anchor branches of ``v``."""
    path = []
    for h, anchor in heavy_tree_sequence(dec, v):
        path.append(bt.heavy_node(h))
        path.append(bt.branch_node(dec.branch_id[anchor]))
    return path
