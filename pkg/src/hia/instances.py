"""Instance generators: random tree pairs, named shapes, and the 26-node example tree."""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .tree_model import TreePair, WeightedLabelledTree

# Nodes of the 26-node example, named by subtree size (letters split ties),
# listed as (name, parent name) with children in left-to-right drawing order.
SAMPLE26_EDGES: List[Tuple[str, Optional[str]]] = [
    ("26", None),
    ("13", "26"), ("12", "26"),
    ("6a", "13"), ("6b", "13"),
    ("5", "6a"), ("4a", "5"), ("3a", "4a"), ("2a", "3a"), ("1a", "2a"),
    ("3b", "6b"), ("1d", "6b"), ("1e", "6b"), ("1b", "3b"), ("1c", "3b"),
    ("10", "12"), ("1i", "12"),
    ("9", "10"), ("8", "9"), ("7", "8"),
    ("4b", "7"), ("2c", "7"),
    ("2b", "4b"), ("1g", "4b"), ("1f", "2b"), ("1h", "2c"),
]


def sample26_tree() -> Tuple[WeightedLabelledTree, Dict[str, int]]:
    """The 26-node tree with leaves labelled 1..L in id order; weights are depths."""
    ids = {name: i for i, (name, _) in enumerate(SAMPLE26_EDGES)}
    parent = [ids[p] if p is not None else -1 for _, p in SAMPLE26_EDGES]
    depth = [0] * len(parent)
    for v, p in enumerate(parent):
        if p >= 0:
            depth[v] = depth[p] + 1
    has_child = {p for p in parent if p >= 0}
    leaves = [v for v in range(len(parent)) if v not in has_child]
    labels = {v: k + 1 for k, v in enumerate(leaves)}
    return WeightedLabelledTree.from_parents(parent, depth, labels), ids


def _leaves(parent: List[int]) -> List[int]:
    internal = set(parent)
    return [v for v in range(len(parent)) if v not in internal]


def _weights(parent: List[int], rng: random.Random) -> List[int]:
    w = [0] * len(parent)
    for v in range(1, len(parent)):
        w[v] = w[parent[v]] + rng.randint(1, 10)
    return w


def random_recursive_parents(n: int, rng: random.Random, leaves: Optional[int] = None) -> List[int]:
    """Node ``i`` attaches to a uniform earlier node; optionally steer to an exact leaf count."""
    parent = [-1]
    is_leaf = [True]
    leaf_count = 1
    for i in range(1, n):
        p = rng.randrange(i)
        if leaves is not None:
            need = leaves - leaf_count
            remaining = n - i
            # rejection sampling keeps the draw uniform within the allowed class
            if need >= remaining and leaf_count < i:
                while is_leaf[p]:
                    p = rng.randrange(i)
            elif need <= 0:
                while not is_leaf[p]:
                    p = rng.randrange(i)
        if not is_leaf[p]:
            leaf_count += 1
        is_leaf[p] = False
        parent.append(p)
        is_leaf.append(True)
    return parent


def random_tree(n: int, rng: random.Random, leaves: Optional[int] = None) -> Tuple[List[int], List[int]]:
    parent = random_recursive_parents(n, rng, leaves)
    return parent, _weights(parent, rng)


def label_pair(parent1, weight1, parent2, weight2, rng: random.Random, drop: float = 0.0) -> TreePair:
    """Attach a random bijection of labels between the two leaf sets.

    With ``drop > 0`` each label is independently removed from one of the trees,
    giving a non-bijective instance.
    """
    leaves1 = _leaves(parent1)
    leaves2 = _leaves(parent2)
    if len(leaves1) != len(leaves2):
        raise ValueError("leaf counts differ")
    perm = list(range(1, len(leaves1) + 1))
    rng.shuffle(perm)
    labels1 = {v: k + 1 for k, v in enumerate(leaves1)}
    labels2 = {v: perm[k] for k, v in enumerate(leaves2)}
    if drop:
        for label in range(1, len(leaves1) + 1):
            if rng.random() < drop:
                side = labels1 if rng.random() < 0.5 else labels2
                for v, l in list(side.items()):
                    if l == label:
                        del side[v]
    t1 = WeightedLabelledTree.from_parents(parent1, weight1, labels1)
    t2 = WeightedLabelledTree.from_parents(parent2, weight2, labels2)
    return TreePair(t1, t2)


def random_pair(n: int, rng: random.Random, drop: float = 0.0) -> TreePair:
    """Two uniform random recursive trees on ``n`` nodes with equal leaf counts."""
    p1, w1 = random_tree(n, rng)
    p2, w2 = random_tree(n, rng, leaves=len(_leaves(p1)))
    return label_pair(p1, w1, p2, w2, rng, drop)


# -- named shapes for decomposition edge cases -------------------------------


def caterpillar_parents(n: int) -> List[int]:
    """A spine where every spine node also carries one leaf."""
    parent = [-1]
    spine = 0
    while len(parent) < n:
        parent.append(spine)
        if len(parent) < n:
            parent.append(spine)
            spine = len(parent) - 2
    return parent


def star_parents(n: int) -> List[int]:
    return [-1] + [0] * (n - 1)


def balanced_parents(n: int, arity: int = 2) -> List[int]:
    return [-1] + [(i - 1) // arity for i in range(1, n)]


SHAPES = {
    "random": None,
    "caterpillar": caterpillar_parents,
    "star": star_parents,
    "balanced": balanced_parents,
}


def shaped_pair(shape: str, n: int, rng: random.Random) -> TreePair:
    if shape == "random":
        return random_pair(n, rng)
    p1 = SHAPES[shape](n)
    p2, w2 = random_tree(n, rng, leaves=len(_leaves(p1)))
    return label_pair(p1, _weights(p1, rng), p2, w2, rng)
