"""Per-branch-pair point structures and restricted HIA queries.

For each leaf pair sharing a label, every pair of heavy trees on the two leaf
paths receives, for every branch pair ``(e1, e2)``, the point
``(pre(w1), pre(w2))`` with ``w* = lca(leaf*, bottom(e*))``. After dominance
pruning each point set is a staircase: x ascending means y descending.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, MutableMapping, Optional, Sequence, Tuple

from .decomposition import Decomposition, heavy_tree_sequence
from .substructures import LcaStructure, PairDictionary, PredecessorList, RangeMax
from .tree_model import TreePair, WeightedLabelledTree

Point = Tuple[int, int]


def collect_relevant_pairs(pair: TreePair, dec1: Decomposition, dec2: Decomposition) -> PairDictionary:
    """Heavy-tree pairs lying on the two query paths of some shared label."""
    leaf1, leaf2 = pair.t1.label_to_leaf(), pair.t2.label_to_leaf()
    relevant = set()
    for label in pair.shared_labels:
        hs1 = [h for h, _ in heavy_tree_sequence(dec1, leaf1[label])]
        hs2 = [h for h, _ in heavy_tree_sequence(dec2, leaf2[label])]
        relevant.update((h1, h2) for h1 in hs1 for h2 in hs2)
    return PairDictionary(relevant)


def _branch_points(dec: Decomposition, lca: LcaStructure, leaf: int) -> List[Tuple[int, int]]:
    """``(branch, pre(w))`` for every branch of every heavy tree on the leaf's path."""
    out = []
    pre = dec.canonical_pre
    for h, _ in heavy_tree_sequence(dec, leaf):
        for e in dec.heavy_tree_branches[h]:
            out.append((e, pre[lca.lca(leaf, dec.branch_bottom[e])]))
    return out


def add_label(
    pair: TreePair,
    dec1: Decomposition,
    dec2: Decomposition,
    lca1: LcaStructure,
    lca2: LcaStructure,
    leaf1: int,
    leaf2: int,
    sink: MutableMapping[Tuple[int, int], List[Point]],
) -> int:
    """Emit the points induced by one label into ``sink``; returns the count emitted."""
    label1 = pair.t1.leaf_label.get(leaf1)
    label2 = pair.t2.leaf_label.get(leaf2)
    if label1 is None or label1 != label2:
        raise ValueError(f"leaves {leaf1} and {leaf2} do not share a label ({label1} vs {label2})")
    side1 = _branch_points(dec1, lca1, leaf1)
    side2 = _branch_points(dec2, lca2, leaf2)
    for e1, x in side1:
        for e2, y in side2:
            sink[e1, e2].append((x, y))
    return len(side1) * len(side2)


def prune_dominated(points: Iterable[Point]) -> List[Point]:
    """Drop every point weakly dominated by a different point; result is x-ascending."""
    kept = []
    best_y = None
    for x, y in sorted(set(points), reverse=True):
        if best_y is None or y > best_y:
            kept.append((x, y))
            best_y = y
    kept.reverse()
    return kept


@dataclass
class Staircase:
    xs: List[int]
    ys: List[int]
    nodes1: List[int]
    nodes2: List[int]
    weights1: List[int]
    weights2: List[int]
    d_x: PredecessorList
    d_y: PredecessorList
    weight_rmq: RangeMax

    def __len__(self):
        return len(self.xs)

    @property
    def points(self) -> List[Point]:
        return list(zip(self.xs, self.ys))


def postprocess(
    raw: Iterable[Point],
    pre_to_node1: Optional[Sequence[int]] = None,
    pre_to_node2: Optional[Sequence[int]] = None,
    weight1: Optional[Sequence[int]] = None,
    weight2: Optional[Sequence[int]] = None,
) -> Staircase:
    """Prune a raw point set into a staircase with its search structures.

    Without tree data, coordinates double as node ids and as weights.
    """
    kept = prune_dominated(raw)
    xs = [x for x, _ in kept]
    ys = [y for _, y in kept]
    nodes1 = [pre_to_node1[x] for x in xs] if pre_to_node1 is not None else list(xs)
    nodes2 = [pre_to_node2[y] for y in ys] if pre_to_node2 is not None else list(ys)
    w1 = [weight1[u] for u in nodes1] if weight1 is not None else list(nodes1)
    w2 = [weight2[u] for u in nodes2] if weight2 is not None else list(nodes2)
    return Staircase(
        xs=xs,
        ys=ys,
        nodes1=nodes1,
        nodes2=nodes2,
        weights1=w1,
        weights2=w2,
        d_x=PredecessorList(xs),
        d_y=PredecessorList(ys),
        weight_rmq=RangeMax([a + b for a, b in zip(w1, w2)]),
    )


def boundary_from_predecessor(pred: Optional[Tuple[int, int]], pre_anchor: int) -> int:
    """Number of list entries strictly below ``pre_anchor``, given the predecessor of a key >= it.

    The predecessor of ``pre(v)`` coincides with that of ``pre(x)`` for the
    anchor ``x``; an entry equal to ``pre(x)`` counts on the upper side.
    """
    if pred is None:
        return 0
    value, rank = pred
    return rank + 1 if value < pre_anchor else rank


def split_x(stair: Staircase, pre_v1: int, pre_x1: int) -> int:
    return boundary_from_predecessor(stair.d_x.predecessor(pre_v1), pre_x1)


def split_y(stair: Staircase, pre_v2: int, pre_x2: int) -> int:
    return boundary_from_predecessor(stair.d_y.predecessor(pre_v2), pre_x2)


@dataclass(frozen=True)
class RestrictedAnswer:
    u1: int
    u2: int
    total_weight: int
    case: int


def restricted_hia(
    stair: Staircase,
    t1: WeightedLabelledTree,
    t2: WeightedLabelledTree,
    x1: int,
    x2: int,
    beta_x: int,
    beta_y: int,
) -> Optional[RestrictedAnswer]:
    """Best induced pair inside one heavy-tree pair, from the staircase of the anchors' branches.

    ``beta_x`` counts points with ``x < pre(x1)``; ``beta_y`` counts those with
    ``y < pre(x2)``. Since y descends along the staircase, points with
    ``y >= pre(x2)`` form the prefix of length ``gamma``.
    """
    m = len(stair.xs)
    gamma = m - beta_y
    best: Optional[RestrictedAnswer] = None

    def offer(cand: RestrictedAnswer):
        nonlocal best
        if best is None or cand.total_weight > best.total_weight:
            best = cand

    # Case 1: label attached above both anchors.
    if gamma < beta_x:
        idx, w = stair.weight_rmq.query(gamma, beta_x - 1)
        offer(RestrictedAnswer(stair.nodes1[idx], stair.nodes2[idx], w, 1))
    # Case 2: above x1, below x2 -> rightmost point of the common prefix.
    hi = min(beta_x, gamma)
    if hi > 0:
        idx = hi - 1
        offer(RestrictedAnswer(stair.nodes1[idx], x2, stair.weights1[idx] + t2.weight[x2], 2))
    # Case 3: below x1, above x2 -> leftmost point of the common suffix.
    lo = max(beta_x, gamma)
    if lo < m:
        offer(RestrictedAnswer(x1, stair.nodes2[lo], t1.weight[x1] + stair.weights2[lo], 3))
    # Case 4: below both anchors.
    if beta_x < gamma:
        offer(RestrictedAnswer(x1, x2, t1.weight[x1] + t2.weight[x2], 4))
    return best


def build_staircases(
    pair: TreePair,
    dec1: Decomposition,
    dec2: Decomposition,
    lca1: LcaStructure,
    lca2: LcaStructure,
) -> Tuple[Dict[Tuple[int, int], Staircase], int, Dict[int, int]]:
    """All staircases keyed by branch pair, the total points emitted, and per-label counts."""
    leaf1, leaf2 = pair.t1.label_to_leaf(), pair.t2.label_to_leaf()
    sink: Dict[Tuple[int, int], List[Point]] = defaultdict(list)
    per_label = {}
    for label in sorted(pair.shared_labels):
        per_label[label] = add_label(pair, dec1, dec2, lca1, lca2, leaf1[label], leaf2[label], sink)
    stairs = {
        key: postprocess(raw, dec1.pre_to_node, dec2.pre_to_node, pair.t1.weight, pair.t2.weight)
        for key, raw in sink.items()
    }
    return stairs, sum(per_label.values()), per_label
