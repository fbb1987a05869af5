"""Heaviest induced ancestor queries over pairs of weighted, leaf-labelled trees."""
from .engine import ENGINES, HiaAnswer, HiaIndex, build, default_b, hia_query, query_trace
from .oracle import Oracle
from .tree_model import InvalidTreeError, TreePair, WeightedLabelledTree, validate

__all__ = [
    "ENGINES",
    "HiaAnswer",
    "HiaIndex",
    "InvalidTreeError",
    "Oracle",
    "TreePair",
    "WeightedLabelledTree",
    "build",
    "default_b",
    "hia_query",
    "query_trace",
    "validate",
]
