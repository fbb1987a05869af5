"""Plain-text tree files.

Four lines: node count; parent ids (``-1`` for the root, which must be node 0);
weights; ``node:label`` pairs for labelled leaves (may be empty).
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .tree_model import InvalidTreeError, WeightedLabelledTree, validate


def parse_tree(text: str) -> WeightedLabelledTree:
    lines = text.splitlines()
    lines += [""] * (4 - len(lines))
    try:
        n = int(lines[0])
        parent = [int(x) for x in lines[1].split()]
        weight = [int(x) for x in lines[2].split()]
        labels = {}
        for tok in lines[3].split():
            node, label = tok.split(":")
            labels[int(node)] = int(label)
    except ValueError as exc:
        raise InvalidTreeError([f"malformed tree file: {exc}"]) from None
    if len(parent) != n or len(weight) != n:
        raise InvalidTreeError([f"expected {n} parents and weights, got {len(parent)} and {len(weight)}"])
    if n and parent[0] != -1:
        raise InvalidTreeError(["root must be node 0"])
    problems = []
    for v, p in enumerate(parent):
        if p != -1 and not 0 <= p < n:
            problems.append(f"node {v} has out-of-range parent {p}")
    if problems:
        raise InvalidTreeError(problems)
    tree = WeightedLabelledTree.from_parents(parent, weight, labels)
    problems = validate(tree)
    if problems:
        raise InvalidTreeError(problems)
    return tree


def serialize_tree(tree: WeightedLabelledTree) -> str:
    labels = " ".join(f"{v}:{l}" for v, l in sorted(tree.leaf_label.items()))
    return "\n".join([
        str(tree.node_count),
        " ".join(map(str, tree.parent)),
        " ".join(map(str, tree.weight)),
        labels,
    ]) + "\n"


def read_tree(path: Union[str, Path]) -> WeightedLabelledTree:
    return parse_tree(Path(path).read_text())


def write_tree(tree: WeightedLabelledTree, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_tree(tree))
