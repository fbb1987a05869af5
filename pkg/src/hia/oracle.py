"""Brute-force reference answers over explicit label sets."""
from __future__ import annotations

from typing import List, Optional, Tuple

from .tree_model import TreePair, WeightedLabelledTree, top_down_order

Answer = Optional[Tuple[int, int, int]]


def label_sets(tree: WeightedLabelledTree, bit_of: dict) -> List[int]:
    """Per-node bitset of shared labels found at leaf descendants."""
    sets = [0] * tree.node_count
    for v, label in tree.leaf_label.items():
        if label in bit_of:
            sets[v] = 1 << bit_of[label]
    for v in reversed(top_down_order(tree)):
        p = tree.parent[v]
        if p >= 0:
            sets[p] |= sets[v]
    return sets


class Oracle:
    def __init__(self, pair: TreePair):
        self.pair = pair
        bit_of = {label: i for i, label in enumerate(sorted(pair.shared_labels))}
        self.sets1 = label_sets(pair.t1, bit_of)
        self.sets2 = label_sets(pair.t2, bit_of)

    def brute_induced(self, u1: int, u2: int) -> bool:
        return bool(self.sets1[u1] & self.sets2[u2])

    def brute_hia(self, v1: int, v2: int) -> Answer:
        """Heaviest induced pair of weak ancestors as ``(u1, u2, weight)``, or None."""
        return self._best(self.pair.t1.ancestors(v1), self.pair.t2.ancestors(v2))

    def brute_restricted_hia(self, v1: int, v2: int, nodes1, nodes2) -> Answer:
        """Like :meth:`brute_hia` with ancestors limited to the given node sets (heavy trees)."""
        a1 = [u for u in self.pair.t1.ancestors(v1) if u in nodes1]
        a2 = [u for u in self.pair.t2.ancestors(v2) if u in nodes2]
        return self._best(a1, a2)

    def _best(self, a1, a2) -> Answer:
        w1, w2 = self.pair.t1.weight, self.pair.t2.weight
        best: Answer = None
        for u1 in a1:
            s = self.sets1[u1]
            if not s:
                continue
            for u2 in a2:
                if s & self.sets2[u2]:
                    # a2 runs bottom-up, so the first hit is the heaviest for this u1
                    w = w1[u1] + w2[u2]
                    if best is None or w > best[2]:
                        best = (u1, u2, w)
                    break
        return best


def leaf_walk_induced(pair: TreePair, u1: int, u2: int) -> bool:
    """Independent check: intersect labels collected by walking each subtree."""

    def labels_under(tree, u):
        out, stack = set(), [u]
        while stack:
            v = stack.pop()
            if v in tree.leaf_label:
                out.add(tree.leaf_label[v])
            stack.extend(tree.children[v])
        return out

    return bool(labels_under(pair.t1, u1) & labels_under(pair.t2, u2))
