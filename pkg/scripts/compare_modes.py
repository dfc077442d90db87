"""Route seeded mosaics in both modes and tabulate vias, length and layers."""

from __future__ import annotations

import argparse
import statistics

from hgr import HYBRID, STAIRCASE_ONLY, RunConfig, generate_mosaic
from hgr.cli import run_jobs
from hgr.docio import build_floorplan


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--blocks", type=int, default=80)
    p.add_argument("--nets", type=int, default=160)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--epe", action="store_true")
    args = p.parse_args()
    jobs = []
    for seed in range(args.seeds):
        fp = build_floorplan(generate_mosaic(args.blocks, seed, args.nets))
        jobs += [(fp, RunConfig(mode=HYBRID, epe=args.epe)), (fp, RunConfig(mode=STAIRCASE_ONLY, epe=args.epe))]
    results = run_jobs(jobs)
    print("seed,hybrid_vias,staircase_vias,hybrid_length,staircase_length,hybrid_completion,staircase_completion")
    reductions = []
    for seed in range(args.seeds):
        h, s = results[2 * seed], results[2 * seed + 1]
        reductions.append((s.total_vias - h.total_vias) / s.total_vias if s.total_vias else 0.0)
        print(f"{seed},{h.total_vias},{s.total_vias},{h.total_length},{s.total_length},{h.completion:.4f},{s.completion:.4f}")
    print(f"# mean via reduction {statistics.mean(reductions):.1%}")


if __name__ == "__main__":
    main()
