"""Wall time of route_all as the net count doubles at fixed block count."""

from __future__ import annotations

import argparse
import dataclasses
import time

from hgr import STAIRCASE_ONLY, RunConfig, generate_mosaic
from hgr.docio import build_floorplan
from hgr.router import route_all


def timed(fp, config) -> float:
    t0 = time.perf_counter()
    route_all(fp, config)
    return time.perf_counter() - t0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[30, 60, 90])
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    print("blocks,nets,hybrid_s,staircase_s")
    for n in args.sizes:
        full = build_floorplan(generate_mosaic(n, args.seed, 8 * n))
        for k in (n, 2 * n, 4 * n, 8 * n):
            fp = dataclasses.replace(full, nets=full.nets[:k])
            print(f"{n},{k},{timed(fp, RunConfig()):.3f},{timed(fp, RunConfig(mode=STAIRCASE_ONLY)):.3f}")


if __name__ == "__main__":
    main()
