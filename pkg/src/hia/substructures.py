"""Static building blocks: LCA, predecessor search, range maximum, pair dictionary."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .tree_model import WeightedLabelledTree


class LcaStructure:
    """Euler tour plus a sparse table of depth minima; O(1) queries."""

    def __init__(self, tree: WeightedLabelledTree):
        depth = tree.depth()
        tour: List[int] = []
        first = [0] * tree.node_count
        stack = [(tree.root, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                first[v] = len(tour)
            tour.append(v)
            if i < len(tree.children[v]):
                stack.append((v, i + 1))
                stack.append((tree.children[v][i], 0))
        self.first = first
        self.depth = depth
        self.tour = tour
        levels = [tour]
        span = 1
        while 2 * span <= len(tour):
            prev = levels[-1]
            levels.append([
                a if depth[a] <= depth[b] else b
                for a, b in zip(prev, prev[span:])
            ])
            span *= 2
        self.table = levels

    def lca(self, u: int, v: int) -> int:
        i, j = self.first[u], self.first[v]
        if i > j:
            i, j = j, i
        k = (j - i + 1).bit_length() - 1
        row = self.table[k]
        a, b = row[i], row[j - (1 << k) + 1]
        return a if self.depth[a] <= self.depth[b] else b


def lca(structure: LcaStructure, u: int, v: int) -> int:
    return structure.lca(u, v)


class PredecessorList:
    """Sorted distinct integers with counted binary-search predecessor queries."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int]):
        self.values = sorted(set(values))

    def __len__(self):
        return len(self.values)

    def search(self, q: int) -> Tuple[int, int]:
        """Index of the largest value <= q (-1 if none) and comparisons used."""
        lo, hi = 0, len(self.values)
        comparisons = 0
        while lo < hi:
            mid = (lo + hi) // 2
            comparisons += 1
            if self.values[mid] <= q:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1, comparisons

    def predecessor(self, q: int) -> Optional[Tuple[int, int]]:
        """``(value, rank)`` of the largest stored value <= q, or None."""
        rank, _ = self.search(q)
        return None if rank < 0 else (self.values[rank], rank)


def predecessor(plist: PredecessorList, q: int) -> Optional[Tuple[int, int]]:
    return plist.predecessor(q)


class RangeMax:
    """Argmax sparse table; ties go to the smallest index."""

    def __init__(self, values: Sequence[int]):
        self.values = list(values)
        n = len(self.values)
        vals = self.values
        levels = [list(range(n))]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            levels.append([
                a if vals[a] >= vals[b] else b
                for a, b in zip(prev, prev[span:])
            ])
            span *= 2
        self.table = levels

    def __len__(self):
        return len(self.values)

    def query(self, i: int, j: int) -> Tuple[int, int]:
        if not 0 <= i <= j < len(self.values):
            raise IndexError(f"invalid range [{i}, {j}] for length {len(self.values)}")
        k = (j - i + 1).bit_length() - 1
        row = self.table[k]
        a, b = row[i], row[j - (1 << k) + 1]
        best = a if self.values[a] >= self.values[b] else b
        return best, self.values[best]


def range_max(structure: RangeMax, i: int, j: int) -> Tuple[int, int]:
    return structure.query(i, j)


class PairDictionary:
    """Membership over (heavy tree of T1, heavy tree of T2) pairs."""

    def __init__(self, pairs: Iterable[Tuple[int, int]]):
        self.keys = sorted(set(pairs))
        self._set = frozenset(self.keys)

    def __contains__(self, pair) -> bool:
        return pair in self._set

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return iter(self.keys)

    def contains(self, h1: int, h2: int) -> bool:
        return (h1, h2) in self._set


def pair_dictionary_contains(d: PairDictionary, h1: int, h2: int) -> bool:
    return d.contains(h1, h2)
