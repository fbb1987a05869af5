"""Measure the constants frozen in hia.harness.

Runs the acceptance query set (seed 42, 200 pairs, n in [3, 60]) plus larger
random instances, and prints the smallest constants that cover every
observation together with the headroom-adjusted values that were committed.

    python3 scripts/calibrate.py [--sizes 1024,2048,4096,8192]
"""
from __future__ import annotations

import argparse
import json
import math
import random

from hia.cascade import build_gadget_tree
from hia.decomposition import build_branch_tree, decompose
from hia.engine import HiaIndex, default_b
from hia.harness import instances, log2_ceil
from hia.instances import random_pair, random_tree
from hia.tree_model import WeightedLabelledTree

CMP_PER_LOG_N = 4  # two initial searches, each at most about log2 of a catalog of size <= 2n


def comparison_observations(sizes):
    obs = []
    for _, pair, queries in instances(42, 200, 60):
        index = HiaIndex(pair)
        for v1, v2 in queries:
            ans, steps = index.trace(v1, v2, "cascading")
            obs.append((ans.stats.comparisons, len(steps), pair.n))
    rng = random.Random(7)
    for n in sizes:
        pair = random_pair(n, rng)
        index = HiaIndex(pair)
        for _ in range(300):
            v1, v2 = rng.randrange(n), rng.randrange(n)
            ans, steps = index.trace(v1, v2, "cascading")
            obs.append((ans.stats.comparisons, len(steps), n))
    return obs


def depth_observations():
    rng = random.Random(11)
    obs = []
    for n in (100, 1000, 10000):
        for _ in range(100):
            p, w = random_tree(n, rng)
            tree = WeightedLabelledTree.from_parents(p, w, {})
            g = build_gadget_tree(build_branch_tree(decompose(tree, default_b(n))), n)
            obs.append((g.depth(), n))
    return obs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1024,2048,4096,8192")
    args = ap.parse_args()
    sizes = [int(x) for x in args.sizes.split(",")]

    cmp_obs = comparison_observations(sizes)
    c1 = max(math.ceil(max(0, c - CMP_PER_LOG_N * log2_ceil(n)) / max(1, t)) for c, t, n in cmp_obs)
    depth_obs = depth_observations()

    def ratio(d, n):
        lg = math.log2(max(n, 4))
        return d / (lg / math.log2(lg))

    c_depth = max(ratio(d, n) for d, n in depth_obs)
    print(json.dumps({
        "queries": len(cmp_obs),
        "observed_cmp_per_step": c1,
        "cmp_per_log_n": CMP_PER_LOG_N,
        "suggested_cmp_per_step": math.ceil(1.5 * c1),
        "gadget_instances": len(depth_obs),
        "observed_depth_factor": round(c_depth, 3),
        "suggested_depth_factor": math.ceil(1.5 * c_depth * 2) / 2,
    }, indent=2))


if __name__ == "__main__":
    main()
