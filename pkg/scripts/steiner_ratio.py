"""Distribution of routed length over the Steiner reference length."""

from __future__ import annotations

import argparse
import statistics

from hgr import RunConfig, generate_mosaic
from hgr.docio import build_floorplan
from hgr.metrics import normalized_length
from hgr.router import route_all


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--blocks", type=int, default=30)
    p.add_argument("--nets", type=int, default=90)
    p.add_argument("--seeds", type=int, default=20)
    args = p.parse_args()
    exact, approx = [], []
    for seed in range(args.seeds):
        fp = build_floorplan(generate_mosaic(args.blocks, seed, args.nets))
        per_net, _ = normalized_length(route_all(fp, RunConfig()))
        for ratio, is_exact in per_net.values():
            (exact if is_exact else approx).append(ratio)
    for label, vals in (("exact reference (<=4 pins)", exact), ("heuristic reference (>4 pins)", approx)):
        if vals:
            q = statistics.quantiles(vals, n=10)
            print(f"{label}: {len(vals)} nets, mean {statistics.mean(vals):.3f}, min {min(vals):.3f}, p10 {q[0]:.3f}, p90 {q[-1]:.3f}")


if __name__ == "__main__":
    main()
