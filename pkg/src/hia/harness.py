"""Randomised verification against the oracle and instrumented benchmarks."""
from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Type

from .engine import ENGINES, HiaIndex
from .instances import random_pair
from .oracle import Oracle
from .tree_model import TreePair

# Frozen after one calibration run (scripts/calibrate.py, observed maxima 1 and
# 3.00, committed with 1.5x headroom).
CMP_PER_STEP = 2  # C1: comparisons per trace step in the cascading engine
CMP_PER_LOG_N = 4  # C2: the two initial binary searches
GADGET_DEPTH_FACTOR = 4.5  # C: gadget depth <= C * log n / log log n
AUGMENTED_SIZE_FACTOR = 2.0  # total augmented over total original catalog size


def log2_ceil(n: int) -> int:
    return max(1, (n - 1).bit_length())


def comparison_budget(trace_length: int, n: int) -> int:
    return CMP_PER_STEP * trace_length + CMP_PER_LOG_N * log2_ceil(n)


def depth_budget(n: int) -> float:
    lg = math.log2(max(n, 4))
    return GADGET_DEPTH_FACTOR * lg / math.log2(lg)


def point_bound(n: int, b: int, labels: Optional[int] = None) -> int:
    """Upper bound on emitted points: per label, (layers * (2b-1))**2."""
    layers = math.floor(math.log(n, b) + 1e-12) + 1 if n > 1 else 1
    per_label = (layers * (2 * b - 1)) ** 2
    return (n if labels is None else labels) * per_label


def query_grid(n1: int, n2: int, rng: random.Random, full_grid_max: int = 25, samples: int = 200) -> List[Tuple[int, int]]:
    if max(n1, n2) <= full_grid_max:
        return [(a, b) for a in range(n1) for b in range(n2)]
    return [(rng.randrange(n1), rng.randrange(n2)) for _ in range(samples)]


def instances(seed: int, trials: int, n_max: int, n_min: int = 3, drop: float = 0.0) -> Iterator[Tuple[int, TreePair, List[Tuple[int, int]]]]:
    """Reproducible stream of (trial, tree pair, queries)."""
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(n_min, max(n_min, n_max))
        pair = random_pair(n, rng, drop=drop)
        yield trial, pair, query_grid(pair.t1.node_count, pair.t2.node_count, rng)


@dataclass
class Counterexample:
    trial: int
    n: int
    v1: int
    v2: int
    engine: str
    expected: Optional[int]
    got: Optional[int]
    parents1: List[int]
    parents2: List[int]

    def describe(self) -> str:
        return (
            f"trial {self.trial} (n={self.n}) query ({self.v1}, {self.v2}) engine={self.engine}: "
            f"expected weight {self.expected}, got {self.got}"
        )


@dataclass
class VerifyReport:
    trials: int = 0
    queries: int = 0
    failures: int = 0
    first: Optional[Counterexample] = None
    smallest: Optional[Counterexample] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify(
    seed: int,
    trials: int,
    n_max: int,
    n_min: int = 3,
    engines: Sequence[str] = ENGINES,
    index_cls: Type[HiaIndex] = HiaIndex,
    b: Optional[int] = None,
    drop: float = 0.0,
) -> VerifyReport:
    report = VerifyReport()
    start = time.perf_counter()
    for trial, pair, queries in instances(seed, trials, n_max, n_min, drop):
        index = index_cls(pair, b)
        oracle = Oracle(pair)
        report.trials += 1
        for v1, v2 in queries:
            want = oracle.brute_hia(v1, v2)
            expected = None if want is None else want[2]
            for engine in engines:
                report.queries += 1
                got = index.query(v1, v2, engine).total_weight
                if got != expected:
                    report.failures += 1
                    cex = Counterexample(trial, pair.t1.node_count, v1, v2, engine, expected, got,
                                         list(pair.t1.parent), list(pair.t2.parent))
                    if report.first is None:
                        report.first = cex
                    if report.smallest is None or cex.n < report.smallest.n:
                        report.smallest = cex
    report.seconds = time.perf_counter() - start
    return report


@dataclass
class BenchRow:
    n: int
    b: int
    seed: int
    build_seconds: float
    emitted_points: int
    point_bound: int
    retained_points: int
    layers: int
    queries: int
    avg_trace: float
    max_trace: int
    trace_bound: int
    avg_cmp_independent: float
    avg_cmp_cascading: float
    max_cmp_over_budget: float
    avg_bridge_hops: float
    gadget_depth: int
    depth_budget: float
    gadget_max_degree: int
    augmented_ratio: float
    us_per_query_independent: float
    us_per_query_cascading: float


def bench(seed: int, sizes: Iterable[int], b_values: Optional[Iterable[Optional[int]]] = None, queries: int = 200) -> List[BenchRow]:
    rows = []
    for n in sizes:
        for b in (b_values or [None]):
            rng = random.Random(seed * 1_000_003 + n)
            pair = random_pair(n, rng)
            t0 = time.perf_counter()
            index = HiaIndex(pair, b)
            build = time.perf_counter() - t0
            qs = [(rng.randrange(n), rng.randrange(n)) for _ in range(queries)]
            traces, cmp_ind, cmp_cas, hops, ratios = [], [], [], [], []
            t_ind = t_cas = 0.0
            for v1, v2 in qs:
                t0 = time.perf_counter()
                a, steps = index.trace(v1, v2, "independent")
                t_ind += time.perf_counter() - t0
                t0 = time.perf_counter()
                c, _ = index.trace(v1, v2, "cascading")
                t_cas += time.perf_counter() - t0
                traces.append(len(steps))
                cmp_ind.append(a.stats.comparisons)
                cmp_cas.append(c.stats.comparisons)
                hops.append(c.stats.bridge_hops)
                ratios.append(c.stats.comparisons / comparison_budget(len(steps), n))
            bb = index.b
            layers = math.floor(math.log(n, bb) + 1e-12) + 1
            cat = index.catalog
            rows.append(BenchRow(
                n=n, b=bb, seed=seed,
                build_seconds=round(build, 3),
                emitted_points=index.emitted_points,
                point_bound=point_bound(n, bb, len(pair.shared_labels)),
                retained_points=sum(len(s) for s in index.staircases.values()),
                layers=max(index.dec1.distinct_layers(), index.dec2.distinct_layers()),
                queries=len(qs),
                avg_trace=round(sum(traces) / len(traces), 3),
                max_trace=max(traces),
                trace_bound=2 * layers,
                avg_cmp_independent=round(sum(cmp_ind) / len(qs), 3),
                avg_cmp_cascading=round(sum(cmp_cas) / len(qs), 3),
                max_cmp_over_budget=round(max(ratios), 4),
                avg_bridge_hops=round(sum(hops) / len(qs), 3),
                gadget_depth=max(index.g1.depth(), index.g2.depth()),
                depth_budget=round(depth_budget(n), 3),
                gadget_max_degree=max(index.g1.max_degree(), index.g2.max_degree()),
                augmented_ratio=round(
                    (cat.x_cascade.total_augmented() + cat.y_cascade.total_augmented())
                    / max(1, cat.x_cascade.total_original() + cat.y_cascade.total_original()), 4),
                us_per_query_independent=round(1e6 * t_ind / len(qs), 1),
                us_per_query_cascading=round(1e6 * t_cas / len(qs), 1),
            ))
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(asdict(rows[0])))
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
    return buf.getvalue()
