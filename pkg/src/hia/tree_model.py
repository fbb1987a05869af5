"""Rooted, weighted, leaf-labelled trees and their validation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence


class InvalidTreeError(ValueError):
    """Raised when a tree fails validation where a valid one is required."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class WeightedLabelledTree:
    """A rooted tree with node weights and labels on (some of) its leaves.

    Nodes are the dense integers ``0..node_count-1``. ``parent[root] == -1``.
    ``leaf_label`` maps leaf ids to positive integer labels.
    """

    parent: List[int]
    children: List[List[int]]
    weight: List[int]
    leaf_label: Dict[int, int]

    @classmethod
    def from_parents(
        cls,
        parent: Sequence[int],
        weight: Sequence[int],
        leaf_label: Dict[int, int],
    ) -> "WeightedLabelledTree":
        """Build a tree from a parent array; children keep ascending id order."""
        children: List[List[int]] = [[] for _ in parent]
        for v, p in enumerate(parent):
            if 0 <= p < len(parent):
                children[p].append(v)
        return cls(list(parent), children, list(weight), dict(leaf_label))

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def label_to_leaf(self) -> Dict[int, int]:
        return {label: v for v, label in self.leaf_label.items()}

    def ancestors(self, v: int) -> List[int]:
        """Weak ancestors of ``v`` from ``v`` up to the root."""
        out = []
        while v != -1:
            out.append(v)
            v = self.parent[v]
        return out

    def depth(self) -> List[int]:
        d = [0] * self.node_count
        for v in top_down_order(self):
            p = self.parent[v]
            if p >= 0:
                d[v] = d[p] + 1
        return d


@dataclass(frozen=True)
class TreePair:
    t1: WeightedLabelledTree
    t2: WeightedLabelledTree
    shared_labels: frozenset = field(init=False)

    def __post_init__(self):
        shared = set(self.t1.leaf_label.values()) & set(self.t2.leaf_label.values())
        object.__setattr__(self, "shared_labels", frozenset(shared))

    @property
    def n(self) -> int:
        return max(self.t1.node_count, self.t2.node_count)


def top_down_order(tree: WeightedLabelledTree) -> List[int]:
    """Nodes in BFS order from the root (parents before children)."""
    order = [tree.root]
    for v in order:
        order.extend(tree.children[v])
    return order


def validate(tree: WeightedLabelledTree) -> List[str]:
    """Return the list of violated tree invariants; empty means valid."""
    n = len(tree.parent)
    problems: List[str] = []
    if n == 0:
        return ["empty tree"]
    if len(tree.children) != n or len(tree.weight) != n:
        return [f"array length mismatch: parent={n}, children={len(tree.children)}, weight={len(tree.weight)}"]

    roots = [v for v, p in enumerate(tree.parent) if p == -1]
    if len(roots) != 1:
        problems.append(f"expected exactly one root, found {len(roots)}")
    for v, p in enumerate(tree.parent):
        if p != -1 and not 0 <= p < n:
            problems.append(f"node {v} has out-of-range parent {p}")
        elif p != -1 and v not in tree.children[p]:
            problems.append(f"node {v} missing from children of its parent {p}")
    for u, kids in enumerate(tree.children):
        for c in kids:
            if not 0 <= c < n or tree.parent[c] != u:
                problems.append(f"child {c} of node {u} does not point back to it")
    if problems:
        return problems

    seen = set(top_down_order(tree)) if roots else set()
    if len(seen) != n:
        unreachable = sorted(set(range(n)) - seen)
        problems.append(f"cycle or unreachable nodes: {unreachable[:10]}")
        return problems

    for v, p in enumerate(tree.parent):
        if tree.weight[v] < 0:
            problems.append(f"negative weight at node {v}")
        if p != -1 and tree.weight[v] <= tree.weight[p]:
            problems.append(f"non-increasing weight at edge ({p}, {v})")

    owners: Dict[int, int] = {}
    for v, label in sorted(tree.leaf_label.items()):
        if not 0 <= v < n:
            problems.append(f"label {label} attached to unknown node {v}")
            continue
        if tree.children[v]:
            problems.append(f"label {label} attached to internal node {v}")
        if not isinstance(label, int) or label < 1:
            problems.append(f"label {label!r} at node {v} is not a positive integer")
        if label in owners:
            problems.append(f"duplicate label {label} (nodes {owners[label]} and {v})")
        else:
            owners[label] = v
    return problems


def require_valid(tree: WeightedLabelledTree) -> WeightedLabelledTree:
    problems = validate(tree)
    if problems:
        raise InvalidTreeError(problems)
    return tree


def subtree_sizes(tree: WeightedLabelledTree) -> List[int]:
    """Number of nodes in each node's subtree, itself included."""
    size = [1] * tree.node_count
    for v in reversed(top_down_order(tree)):
        p = tree.parent[v]
        if p >= 0:
            size[p] += size[v]
    return size


def path_tree(n: int, label: Optional[int] = 1) -> WeightedLabelledTree:
    """A chain 0 -> 1 -> ... -> n-1 with weights equal to depth."""
    labels = {n - 1: label} if label is not None else {}
    return WeightedLabelledTree.from_parents([-1] + list(range(n - 1)), list(range(n)), labels)
