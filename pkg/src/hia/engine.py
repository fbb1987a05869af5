"""The assembled HIA index and its two-pointer query driver."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .cascade import GadgetTree, ProductCatalogGraph, build_gadget_tree, expand_path
from .decomposition import (
    BranchTree,
    Decomposition,
    build_branch_tree,
    decompose,
    heavy_tree_sequence,
)
from .staircase import (
    RestrictedAnswer,
    Staircase,
    boundary_from_predecessor,
    build_staircases,
    collect_relevant_pairs,
    restricted_hia,
)
from .substructures import LcaStructure, PairDictionary
from .tree_model import TreePair, require_valid

ENGINES = ("independent", "cascading")


def default_b(n: int) -> int:
    return max(2, n.bit_length() - 1)


@dataclass
class QueryStats:
    restricted_queries: int = 0
    predecessor_searches: int = 0
    comparisons: int = 0
    bridge_hops: int = 0
    catalog_nodes_visited: int = 0


@dataclass
class HiaAnswer:
    u1: Optional[int]
    u2: Optional[int]
    total_weight: Optional[int]
    stats: QueryStats = field(default_factory=QueryStats)

    @property
    def present(self) -> bool:
        return self.total_weight is not None


@dataclass
class TraceStep:
    i: int
    j: int
    heavy_pair: Tuple[int, int]
    branch_pair: Tuple[int, int]
    anchors: Tuple[int, int]
    relevant: bool
    answer: Optional[RestrictedAnswer] = None
    pred_x: Optional[Tuple[int, int]] = None
    pred_y: Optional[Tuple[int, int]] = None
    beta_x: Optional[int] = None
    beta_y: Optional[int] = None


class HiaIndex:
    """Heaviest-induced-ancestor index over two weighted, leaf-labelled trees."""

    # overridable so tests can inject a faulty restricted query
    restricted = staticmethod(restricted_hia)

    def __init__(self, pair: TreePair, b: Optional[int] = None, cascade: bool = True):
        require_valid(pair.t1)
        require_valid(pair.t2)
        self.pair = pair
        self.b = default_b(pair.n) if b is None else b
        self.dec1: Decomposition = decompose(pair.t1, self.b)
        self.dec2: Decomposition = decompose(pair.t2, self.b)
        self.lca1 = LcaStructure(pair.t1)
        self.lca2 = LcaStructure(pair.t2)
        self.relevant: PairDictionary = collect_relevant_pairs(pair, self.dec1, self.dec2)
        self.staircases: Dict[Tuple[int, int], Staircase]
        self.staircases, self.emitted_points, self.points_per_label = build_staircases(
            pair, self.dec1, self.dec2, self.lca1, self.lca2
        )
        self.bt1: BranchTree = build_branch_tree(self.dec1)
        self.bt2: BranchTree = build_branch_tree(self.dec2)
        self.catalog: Optional[ProductCatalogGraph] = None
        self.g1: Optional[GadgetTree] = None
        self.g2: Optional[GadgetTree] = None
        if cascade:
            self.g1 = build_gadget_tree(self.bt1, pair.t1.node_count)
            self.g2 = build_gadget_tree(self.bt2, pair.t2.node_count)
            self.catalog = ProductCatalogGraph(
                self.g1, self.g2, self.bt1, self.bt2, self.dec1, self.dec2,
                self.relevant, self.staircases,
            )

    # -- summary ---------------------------------------------------------

    def summary(self) -> Dict[str, object]:
        out = {
            "b": self.b,
            "nodes": (self.pair.t1.node_count, self.pair.t2.node_count),
            "layers": (self.dec1.distinct_layers(), self.dec2.distinct_layers()),
            "heavy_trees": (self.dec1.heavy_tree_count, self.dec2.heavy_tree_count),
            "branches": (self.dec1.branch_count, self.dec2.branch_count),
            "shared_labels": len(self.pair.shared_labels),
            "relevant_heavy_pairs": len(self.relevant),
            "staircases": len(self.staircases),
            "emitted_points": self.emitted_points,
            "retained_points": sum(len(s) for s in self.staircases.values()),
        }
        if self.catalog is not None:
            out["catalog_nodes"] = len(self.catalog.nodes)
            out["gadget_depth"] = (self.g1.depth(), self.g2.depth())
            out["gadget_max_degree"] = (self.g1.max_degree(), self.g2.max_degree())
        return out

    # -- queries ---------------------------------------------------------

    def query(self, v1: int, v2: int, engine: str = "independent") -> HiaAnswer:
        return self.trace(v1, v2, engine)[0]

    def trace(self, v1: int, v2: int, engine: str = "independent") -> Tuple[HiaAnswer, List[TraceStep]]:
        """Run the two-pointer traversal, recording every restricted query it issues."""
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
        for v, tree, side in ((v1, self.pair.t1, 1), (v2, self.pair.t2, 2)):
            if not 0 <= v < tree.node_count:
                raise IndexError(f"node {v} out of range for tree {side}")
        if engine == "cascading" and self.catalog is None:
            raise ValueError("index was built without the catalog graph")

        t1, t2 = self.pair.t1, self.pair.t2
        dec1, dec2 = self.dec1, self.dec2
        pre_v1, pre_v2 = dec1.canonical_pre[v1], dec2.canonical_pre[v2]
        seq1 = heavy_tree_sequence(dec1, v1)
        seq2 = heavy_tree_sequence(dec2, v2)
        stats = QueryStats()
        steps: List[TraceStep] = []
        best: Optional[RestrictedAnswer] = None

        walker = _CatalogWalker(self, pre_v1, pre_v2) if engine == "cascading" else None

        i, j = 0, len(seq2) - 1
        while True:
            h1, x1 = seq1[i]
            h2, x2 = seq2[j]
            e1, e2 = dec1.branch_id[x1], dec2.branch_id[x2]
            step = TraceStep(i, j, (h1, h2), (e1, e2), (x1, x2), (h1, h2) in self.relevant)
            if step.relevant:
                stair = self.staircases[e1, e2]
                if walker is None:
                    rank, c = stair.d_x.search(pre_v1)
                    step.pred_x = (stair.d_x.values[rank], rank) if rank >= 0 else None
                    rank, c2 = stair.d_y.search(pre_v2)
                    step.pred_y = (stair.d_y.values[rank], rank) if rank >= 0 else None
                    stats.predecessor_searches += 2
                    stats.comparisons += c + c2
                else:
                    step.pred_x, step.pred_y = walker.arrive(e1, e2)
                step.beta_x = boundary_from_predecessor(step.pred_x, dec1.canonical_pre[x1])
                step.beta_y = boundary_from_predecessor(step.pred_y, dec2.canonical_pre[x2])
                step.answer = self.restricted(stair, t1, t2, x1, x2, step.beta_x, step.beta_y)
                stats.restricted_queries += 1
                ans = step.answer
                if ans is not None and (best is None or ans.total_weight > best.total_weight):
                    best = ans
            steps.append(step)

            if i == len(seq1) - 1 and j == 0:
                break
            if i + 1 < len(seq1) and (seq1[i + 1][0], h2) in self.relevant:
                if walker is not None:
                    walker.move_down(e1, seq1[i + 1][0], dec1.branch_id[seq1[i + 1][1]])
                i += 1
            elif j == 0:
                # Nothing deeper in T1 shares a label with anything.
                break
            else:
                if walker is not None:
                    walker.move_up(e2, h2, dec2.branch_id[seq2[j - 1][1]])
                j -= 1

        if walker is not None:
            walker.add_stats(stats)
        if best is None:
            return HiaAnswer(None, None, None, stats), steps
        return HiaAnswer(best.u1, best.u2, best.total_weight, stats), steps


class _CatalogWalker:
    """Follows the two-pointer moves through the product catalog graph for both keys."""

    def __init__(self, index: HiaIndex, pre_v1: int, pre_v2: int):
        graph = index.catalog
        self.index = index
        self.graph = graph
        self.wx = graph.x_cascade.walk(pre_v1)
        self.wy = graph.y_cascade.walk(pre_v2)
        self.started = False
        self.c1 = self.c2 = None
        self.pending: List[int] = []
        self.visited = 0

    def arrive(self, e1: int, e2: int):
        bt1, bt2 = self.index.bt1, self.index.bt2
        target = self.graph.encode(bt1.branch_node(e1), bt2.branch_node(e2))
        if not self.started or not self.pending:
            self.started = True
            self.pending = [target]
        for code in self.pending:
            px = self.wx.visit(code)
            py = self.wy.visit(code)
            self.visited += 1
        self.pending = []
        self.c1, self.c2 = self.graph.decode(target)
        return px, py

    def move_down(self, e1: int, next_h1: int, next_e1: int):
        if not self.started:
            return
        bt1 = self.index.bt1
        path = expand_path(self.index.g1, [bt1.branch_node(e1), bt1.heavy_node(next_h1), bt1.branch_node(next_e1)])
        self.pending.extend(self.graph.encode(g, self.c2) for g in path[1:])
        self.c1 = path[-1]

    def move_up(self, e2: int, h2: int, next_e2: int):
        if not self.started:
            return
        bt2 = self.index.bt2
        path = expand_path(self.index.g2, [bt2.branch_node(e2), bt2.heavy_node(h2), bt2.branch_node(next_e2)])
        self.pending.extend(self.graph.encode(self.c1, g) for g in path[1:])
        self.c2 = path[-1]

    def add_stats(self, stats: QueryStats):
        for w in (self.wx, self.wy):
            stats.predecessor_searches += w.full_searches
            stats.comparisons += w.comparisons
            stats.bridge_hops += w.bridge_hops
        stats.catalog_nodes_visited = self.visited


def build(pair: TreePair, b: Optional[int] = None, cascade: bool = True) -> HiaIndex:
    return HiaIndex(pair, b, cascade)


def hia_query(index: HiaIndex, v1: int, v2: int, engine: str = "independent") -> HiaAnswer:
    return index.query(v1, v2, engine)


def query_trace(index: HiaIndex, v1: int, v2: int, engine: str = "independent") -> List[TraceStep]:
    return index.trace(v1, v2, engine)[1]
