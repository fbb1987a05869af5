"""Instrumented benchmark over growing n; writes CSV and checks the frozen budgets.

    python3 scripts/bench.py --sizes 1024,2048,4096,8192 --out bench.csv
"""
from __future__ import annotations

import argparse
import sys

from hia.harness import CMP_PER_LOG_N, CMP_PER_STEP, bench, rows_to_csv


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--sizes", default="1024,2048,4096,8192")
    ap.add_argument("--b-values", default="")
    ap.add_argument("--queries", type=int, default=200)
    ap.add_argument("--out", default="bench.csv")
    args = ap.parse_args(argv)

    sizes = [int(x) for x in args.sizes.split(",")]
    b_values = [int(x) for x in args.b_values.split(",")] if args.b_values else None
    rows = bench(args.seed, sizes, b_values, args.queries)
    with open(args.out, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))

    print(f"budget: comparisons <= {CMP_PER_STEP}*trace + {CMP_PER_LOG_N}*ceil(log2 n)")
    print(f"{'n':>7} {'b':>3} {'trace':>6} {'cmp_ind':>8} {'cmp_cas':>8} {'worst/budget':>12} "
          f"{'points/bound':>12} {'depth':>5} {'build_s':>8}")
    ok = True
    for r in rows:
        print(f"{r.n:>7} {r.b:>3} {r.avg_trace:>6.2f} {r.avg_cmp_independent:>8.2f} {r.avg_cmp_cascading:>8.2f} "
              f"{r.max_cmp_over_budget:>12.3f} {r.emitted_points / r.point_bound:>12.5f} "
              f"{r.gadget_depth:>5} {r.build_seconds:>8.1f}")
        ok &= r.max_cmp_over_budget <= 1 and r.emitted_points <= r.point_bound and r.max_trace <= r.trace_bound
        ok &= r.gadget_depth <= r.depth_budget
    print("all rows within budget" if ok else "BUDGET EXCEEDED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
