"""Command-line entry point: build, query, verify, bench, anchors."""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .anchors import build_anchored, longest_crossing
from .engine import ENGINES, HiaIndex
from .harness import bench, rows_to_csv, verify
from .tree_model import InvalidTreeError, TreePair
from .treefile import read_tree


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _load(args) -> HiaIndex:
    pair = TreePair(read_tree(args.tree1), read_tree(args.tree2))
    return HiaIndex(pair, args.b)


def cmd_build(args) -> int:
    index = _load(args)
    for key, value in index.summary().items():
        if isinstance(value, tuple):
            value = " ".join(map(str, value))
        print(f"{key}: {value}")
    return 0


def cmd_query(args) -> int:
    index = _load(args)
    for v, tree, side in ((args.v1, index.pair.t1, 1), (args.v2, index.pair.t2, 2)):
        if not 0 <= v < tree.node_count:
            print(f"error: node {v} out of range for tree {side} (0..{tree.node_count - 1})", file=sys.stderr)
            return 2
    ans, steps = index.trace(args.v1, args.v2, args.engine)
    if ans.present:
        print(f"pair: {ans.u1} {ans.u2}")
        print(f"weight: {ans.total_weight}")
    else:
        print("pair: none")
        print("weight: none")
    print(f"trace_length: {len(steps)}")
    print(f"restricted_queries: {ans.stats.restricted_queries}")
    print(f"comparisons: {ans.stats.comparisons}")
    print(f"bridge_hops: {ans.stats.bridge_hops}")
    return 0


def cmd_verify(args) -> int:
    report = verify(args.seed, args.trials, args.n_max, drop=args.drop)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} trials={report.trials} queries={report.queries} failures={report.failures} "
          f"seconds={report.seconds:.2f}")
    if not report.passed:
        print(f"first counterexample: {report.first.describe()}")
        cex = report.smallest
        print(f"smallest counterexample: {cex.describe()}")
        print(f"  parents1: {' '.join(map(str, cex.parents1))}")
        print(f"  parents2: {' '.join(map(str, cex.parents2))}")
        return 1
    return 0


def cmd_bench(args) -> int:
    b_values = _int_list(args.b_values) if args.b_values else None
    rows = bench(args.seed, _int_list(args.sizes), b_values, args.queries)
    text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_anchors(args) -> int:
    anchored = build_anchored(args.text, _int_list(args.anchors), args.b)
    hit = longest_crossing(anchored, args.left, args.right)
    if hit is None:
        print("none")
    else:
        length, anchor = hit
        print(f"length: {length}")
        print(f"anchor: {anchor}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hia", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_trees(p):
        p.add_argument("tree1")
        p.add_argument("tree2")
        p.add_argument("--b", type=int, default=None, help="layer base (default floor(log2 n))")

    p = sub.add_parser("build", help="build an index and print its summary")
    with_trees(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer one HIA query")
    with_trees(p)
    p.add_argument("v1", type=int)
    p.add_argument("v2", type=int)
    p.add_argument("--engine", choices=ENGINES, default="independent")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare both engines against the brute-force oracle")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--drop", type=float, default=0.0, help="probability of dropping a label from one side")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="instrumented benchmark, CSV output")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sizes", default="1024,4096")
    p.add_argument("--b-values", default="", help="comma-separated; empty means the default b per size")
    p.add_argument("--queries", type=int, default=200)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("anchors", help="longest anchored crossing of two contexts")
    p.add_argument("text")
    p.add_argument("--anchors", required=True, help="comma-separated 1-based anchor positions")
    p.add_argument("--left", default="")
    p.add_argument("--right", default="")
    p.add_argument("--b", type=int, default=None)
    p.set_defaults(func=cmd_anchors)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidTreeError as exc:
        print("error: invalid tree", file=sys.stderr)
        for problem in exc.violations:
            print(f"  {problem}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
