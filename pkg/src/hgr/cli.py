"""Command-line driver: ``hgr route`` and ``hgr gen``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .config import HYBRID, STAIRCASE_ONLY, RunConfig
from .docio import ParseError, ValidationError, build_floorplan, generate_mosaic, load_floorplan, serialize_document
from .floorplan import Floorplan
from .metrics import RoutingResult, format_csv
from .router import RoutingState, route_all

COMPARE_METRICS = ("total_length", "total_vias", "wace4", "layers_used", "completion")


def result_to_dict(result: RoutingResult, config: RunConfig) -> dict:
    nets = []
    for n in sorted(result.nets, key=lambda n: n.net_id):
        entry = {
            "net_id": n.net_id,
            "name": n.name,
            "degree": n.degree,
            "hpwl": n.hpwl,
            "status": n.status,
            "length": n.length,
            "vias": n.vias,
        }
        if n.tree is not None:
            entry["segments"] = [[*s.p0, *s.p1, s.layer, s.kind] for s in n.tree.segments]
            entry["via_list"] = [list(v) for v in n.tree.vias]
            entry["steiner_points"] = [list(p) for p in n.tree.steiner_points]
        nets.append(entry)
    cfg = config.as_dict()
    cfg["capacities"] = str(cfg["capacities"]) if cfg["capacities"] is not None else None
    return {"config": cfg, "summary": result.summary(), "nets": nets}


def run_once(fp: Floorplan, config: RunConfig) -> tuple[RoutingResult, RoutingState]:
    t0 = time.process_time()
    state = RoutingState.build(fp, config)
    result = route_all(fp, config, state)
    if config.timing:
        result.cpu_seconds = time.process_time() - t0
    return result, state


def _job(args: tuple[Floorplan, RunConfig]) -> RoutingResult:
    result, _ = run_once(*args)
    return result


def threads() -> int:
    try:
        return max(1, int(os.environ.get("HGR_THREADS", "1")))
    except ValueError:
        return 1


def run_jobs(jobs: Sequence[tuple[Floorplan, RunConfig]]) -> list[RoutingResult]:
    """Run independent (floorplan, config) jobs, in parallel up to HGR_THREADS."""
    workers = min(threads(), len(jobs))
    if workers <= 1:
        return [_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_job, jobs))


def compare_table(hybrid: RoutingResult, stair: RoutingResult) -> str:
    hs, ss = hybrid.summary(), stair.summary()
    lines = ["metric,hybrid,staircase_only,delta"]
    for m in COMPARE_METRICS:
        a, b = hs[m], ss[m]
        if isinstance(a, float) or isinstance(b, float):
            lines.append(f"{m},{a:.6f},{b:.6f},{a - b:.6f}")
        else:
            lines.append(f"{m},{a},{b},{a - b}")
    return "\n".join(lines) + "\n"


def _config_from(args: argparse.Namespace, mode: Optional[str] = None) -> RunConfig:
    return RunConfig(
        max_layers=args.layers,
        split=args.split,
        epe=args.epe,
        mode=mode or args.mode,
        pitch=args.pitch,
        via_penalty=args.via_penalty,
        net_order=args.net_order,
        grid_cap_mode=args.grid_cap_mode,
        bbox_restrict=args.bbox_restrict,
        capacities=Path(args.capacities) if args.capacities else None,
        timing=args.timing,
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_route(args: argparse.Namespace) -> int:
    fp = load_floorplan(args.input, args.layers)
    if args.compare:
        hcfg, scfg = _config_from(args, HYBRID), _config_from(args, STAIRCASE_ONLY)
        hyb, stair = run_jobs([(fp, hcfg), (fp, scfg)])
        table = compare_table(hyb, stair)
        sys.stdout.write(table)
        if args.csv:
            base = Path(args.csv)
            base.write_text(table)
            base.with_suffix(".hybrid.csv").write_text(format_csv(hyb))
            base.with_suffix(".staircase-only.csv").write_text(format_csv(stair))
        if args.json:
            doc = {"hybrid": result_to_dict(hyb, hcfg), "staircase-only": result_to_dict(stair, scfg)}
            Path(args.json).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    config = _config_from(args)
    result, state = run_once(fp, config)
    _emit(format_csv(result), args.csv)
    if args.json:
        Path(args.json).write_text(json.dumps(result_to_dict(result, config), indent=1, sort_keys=True) + "\n")
    if args.svg:
        from .svg import write_svgs

        write_svgs(args.svg, state, result)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    doc = generate_mosaic(args.blocks, args.seed, args.nets, locality=args.locality)
    # the generator's output must always be a valid mosaic
    build_floorplan(doc)
    _emit(serialize_document(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hgr", description="Hybrid early global router for mosaic floorplans.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("route", help="route a floorplan document")
    r.add_argument("input")
    r.add_argument("--mode", choices=[HYBRID, STAIRCASE_ONLY], default=HYBRID)
    r.add_argument("--layers", type=int, default=8, help="M_max")
    r.add_argument("--split", type=int, default=2, help="M_j: top staircase layer")
    r.add_argument("--epe", action="store_true", help="charge 1.5 units of demand per net")
    r.add_argument("--pitch", type=int, default=RunConfig.pitch, help="staircase track pitch")
    r.add_argument("--via-penalty", type=float, default=None, help="cost per via (default: half a bin side)")
    r.add_argument("--net-order", choices=["asc", "desc"], default="asc")
    r.add_argument("--grid-cap-mode", choices=["replicate", "divide"], default="replicate")
    r.add_argument("--compare", action="store_true", help="run both modes and print a delta table")
    r.add_argument("--svg", metavar="DIR")
    r.add_argument("--csv", metavar="FILE")
    r.add_argument("--json", metavar="FILE")
    r.add_argument("--capacities", metavar="FILE", help="per-edge capacity overrides")
    r.add_argument("--bbox-restrict", action="store_true", help="confine searches near the net bounding box")
    r.add_argument("--timing", action="store_true", help="report CPU seconds (otherwise NA)")
    r.set_defaults(func=cmd_route)
    g = sub.add_parser("gen", help="generate a random mosaic floorplan")
    g.add_argument("--blocks", type=int, required=True)
    g.add_argument("--nets", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--locality", type=int, default=10, help="pin pool size per pin; 0 draws from all blocks")
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, OSError, ValueError) as exc:
        print(f"hgr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
