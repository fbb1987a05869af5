"""Longest anchored crossings via HIA over a reversed-prefix trie and a suffix trie.

For an anchor ``k`` (1-based, ``2 <= k <= |S|``) the left trie holds
``reverse(S[1..k-1])`` and the right trie holds ``S[k..|S|]``. A string read
across the anchor is a pair of nodes, one per trie, induced by ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .engine import HiaIndex
from .tree_model import TreePair, WeightedLabelledTree


class _TrieBuilder:
    def __init__(self):
        self.parent = [-1]
        self.weight = [0]
        self.edges: List[Dict[object, int]] = [{}]
        self.labels: Dict[int, int] = {}

    def _child(self, u, key):
        v = self.edges[u].get(key)
        if v is None:
            v = len(self.parent)
            self.parent.append(u)
            self.weight.append(self.weight[u] + 1)
            self.edges.append({})
            self.edges[u][key] = v
        return v

    def insert(self, s: Sequence, label: int):
        u = 0
        for ch in s:
            u = self._child(u, ch)
        # sentinel unique to this anchor, so every anchor owns a distinct leaf
        leaf = self._child(u, ("$", label))
        self.labels[leaf] = label

    def tree(self) -> WeightedLabelledTree:
        return WeightedLabelledTree.from_parents(self.parent, self.weight, self.labels)


@dataclass
class AnchoredText:
    text: Sequence
    anchors: List[int]
    trie_left: WeightedLabelledTree
    trie_right: WeightedLabelledTree
    left_edges: List[Dict[object, int]]
    right_edges: List[Dict[object, int]]
    index: HiaIndex

    def walk_left(self, context: Sequence) -> int:
        """Deepest left-trie node spelling a suffix of ``context`` read backwards."""
        return _walk(self.left_edges, reversed(context))

    def walk_right(self, context: Sequence) -> int:
        return _walk(self.right_edges, context)


def _walk(edges, chars: Iterable) -> int:
    u = 0
    for ch in chars:
        v = edges[u].get(ch)
        if v is None:
            break
        u = v
    return u


def build_anchored(text: Sequence, anchors: Iterable[int], b: Optional[int] = None) -> AnchoredText:
    anchors = sorted(set(anchors))
    if not anchors:
        raise ValueError("at least one anchor is required")
    bad = [k for k in anchors if not 2 <= k <= len(text)]
    if bad:
        raise ValueError(f"anchors out of range [2, {len(text)}]: {bad}")
    left, right = _TrieBuilder(), _TrieBuilder()
    for k in anchors:
        left.insert(text[: k - 1][::-1], k)
        right.insert(text[k - 1:], k)
    t1, t2 = left.tree(), right.tree()
    index = HiaIndex(TreePair(t1, t2), b)
    return AnchoredText(text, anchors, t1, t2, left.edges, right.edges, index)


def _anchors_under(tree: WeightedLabelledTree, u: int) -> set:
    out, stack = set(), [u]
    while stack:
        v = stack.pop()
        if v in tree.leaf_label:
            out.add(tree.leaf_label[v])
        stack.extend(tree.children[v])
    return out


def longest_crossing(anchored: AnchoredText, left_context: Sequence, right_context: Sequence) -> Optional[Tuple[int, int]]:
    """``(length, anchor)`` of the longest ``X + Y`` with X a suffix of ``left_context``,
    Y a prefix of ``right_context``, and X|Y read across some anchor; None if impossible."""
    u = anchored.walk_left(left_context)
    v = anchored.walk_right(right_context)
    ans = anchored.index.query(u, v)
    if not ans.present:
        return None
    common = _anchors_under(anchored.trie_left, ans.u1) & _anchors_under(anchored.trie_right, ans.u2)
    return ans.total_weight, min(common)


def brute_longest_crossing(text: Sequence, anchors: Iterable[int], left_context: Sequence, right_context: Sequence) -> Optional[int]:
    """Scan every anchor and every (left length, right length) split by direct slicing."""
    best = None
    nl = len(left_context)
    for k in set(anchors):
        for a in range(min(nl, k - 1) + 1):
            if text[k - 1 - a: k - 1] != left_context[nl - a:]:
                continue
            for c in range(min(len(right_context), len(text) - k + 1) + 1):
                if text[k - 1: k - 1 + c] == right_context[:c] and (best is None or a + c > best):
                    best = a + c
    return best
