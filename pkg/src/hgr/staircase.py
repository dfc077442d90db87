"""Junction graph over T-junctions and the per-layer congestion model.

Edges are the wall pieces between adjacent junctions. Each edge carries an
``EdgeState`` with capacity ``r`` and demand ``u`` per layer; the routing
weight is ``length / (1 - u/r)``.
"""

from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .config import H, V, layer_direction
from .floorplan import Floorplan, Point, TJunction, WallIndex, extract_junctions

if TYPE_CHECKING:
    from .grid import GridGraph

EPE_INCREMENT = 1.5
PLAIN_INCREMENT = 1.0
_EPS = 1e-9


class ZeroPitch(ValueError):
    pass


class EdgeSaturated(Exception):
    pass


class OverflowRejected(Exception):
    pass


@dataclass
class EdgeState:
    """Per-layer capacity and demand; index 0 is unused."""

    capacity: list[float]
    demand: list[float]

    @classmethod
    def empty(cls, max_layers: int) -> "EdgeState":
        return cls([0.0] * (max_layers + 1), [0.0] * (max_layers + 1))

    def congestion(self, layer: int) -> float:
        r = self.capacity[layer]
        if r <= 0:
            raise EdgeSaturated(f"layer {layer} has no capacity")
        return self.demand[layer] / r

    def admits(self, layer: int, inc: float) -> bool:
        return self.capacity[layer] > 0 and self.demand[layer] + inc <= self.capacity[layer] + _EPS


@dataclass(frozen=True)
class StaircaseSegment:
    id: int
    endpoints: tuple[int, int]  # junction ids, lower coordinate first
    orientation: str
    length: int
    p0: Point
    p1: Point


@dataclass
class JunctionGraph:
    junctions: list[TJunction]
    segments: list[StaircaseSegment]
    states: list[EdgeState]
    layers: list[int]
    adjacency: list[list[tuple[int, int]]] = field(default_factory=list)  # junction -> [(nbr, seg)]
    by_point: dict[Point, int] = field(default_factory=dict)
    block_junctions: dict[int, list[int]] = field(default_factory=dict)

    @property
    def num_vertices(self) -> int:
        return len(self.junctions)

    @property
    def num_edges(self) -> int:
        return len(self.segments)

    def layers_for(self, orientation: str) -> list[int]:
        return [L for L in self.layers if layer_direction(L) == orientation]


def segment_capacity(length: int, pitch: int) -> int:
    """Number of routing tracks of the given pitch that fit along a segment."""
    if pitch <= 0:
        raise ZeroPitch("pitch must be positive")
    return length // pitch


def edge_weight(length: float, demand: float, capacity: float) -> float:
    if capacity <= 0:
        raise EdgeSaturated("edge has no capacity")
    p = demand / capacity
    if p >= 1.0:
        raise EdgeSaturated(f"congestion {p:.3f} leaves no room")
    return length / (1.0 - p)


def update_demand(state: EdgeState, layer: int, epe_mode: bool = False) -> float:
    """Charge one routed net on ``layer``; returns the new demand."""
    inc = EPE_INCREMENT if epe_mode else PLAIN_INCREMENT
    if not state.admits(layer, inc):
        raise OverflowRejected(
            f"demand {state.demand[layer]} + {inc} exceeds capacity {state.capacity[layer]}"
        )
    state.demand[layer] += inc
    return state.demand[layer]


def _wall_pieces(walls: WallIndex, junctions: Sequence[TJunction]):
    """Yield (orientation, p0, p1) for every wall piece between adjacent junctions."""
    on_h: dict[int, list[int]] = defaultdict(list)
    on_v: dict[int, list[int]] = defaultdict(list)
    for j in junctions:
        x, y = j.location
        on_h[y].append(x)
        on_v[x].append(y)
    for y in sorted(on_h):
        xs = sorted(on_h[y])
        for a, b in walls.horizontal.get(y, ()):
            inside = xs[bisect.bisect_left(xs, a) : bisect.bisect_right(xs, b)]
            for x0, x1 in zip(inside, inside[1:]):
                yield H, (x0, y), (x1, y)
    for x in sorted(on_v):
        ys = sorted(on_v[x])
        for a, b in walls.vertical.get(x, ()):
            inside = ys[bisect.bisect_left(ys, a) : bisect.bisect_right(ys, b)]
            for y0, y1 in zip(inside, inside[1:]):
                yield V, (x, y0), (x, y1)


def build_junction_graph(fp: Floorplan, pitch: int, layers: Iterable[int], max_layers: int | None = None) -> JunctionGraph:
    """Junction graph of a mosaic floorplan.

    ``layers`` is the staircase layer group; each segment gets track capacity
    on the layers whose preferred direction matches its orientation.
    """
    if pitch <= 0:
        raise ZeroPitch("pitch must be positive")
    layers = sorted(layers)
    max_layers = max_layers or (max(layers) if layers else 0)
    junctions = extract_junctions(fp)
    walls = WallIndex(fp.die, [b.outline for b in fp.blocks])
    by_point = {j.location: j.id for j in junctions}
    segments: list[StaircaseSegment] = []
    states: list[EdgeState] = []
    adjacency: list[list[tuple[int, int]]] = [[] for _ in junctions]
    for orient, p0, p1 in _wall_pieces(walls, junctions):
        a, b = by_point[p0], by_point[p1]
        length = abs(p1[0] - p0[0]) + abs(p1[1] - p0[1])
        seg = StaircaseSegment(len(segments), (a, b), orient, length, p0, p1)
        st = EdgeState.empty(max_layers)
        cap = segment_capacity(length, pitch)
        for L in layers:
            if layer_direction(L) == orient:
                st.capacity[L] = float(cap)
        segments.append(seg)
        states.append(st)
        adjacency[a].append((b, seg.id))
        adjacency[b].append((a, seg.id))
    jg = JunctionGraph(junctions, segments, states, layers, adjacency, by_point)
    jg.block_junctions = _junctions_per_block(fp, junctions)
    return jg


def _junctions_per_block(fp: Floorplan, junctions: Sequence[TJunction]) -> dict[int, list[int]]:
    on_h: dict[int, list[tuple[int, int]]] = defaultdict(list)
    on_v: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for j in junctions:
        x, y = j.location
        on_h[y].append((x, j.id))
        on_v[x].append((y, j.id))
    for d in (on_h, on_v):
        for k in d:
            d[k].sort()
    out: dict[int, list[int]] = {}
    for blk in fp.blocks:
        r = blk.outline
        found: set[int] = set()
        for y in (r.y_lo, r.y_hi):
            row = on_h.get(y, [])
            lo = bisect.bisect_left(row, (r.x_lo, -1))
            hi = bisect.bisect_right(row, (r.x_hi, len(junctions)))
            found.update(jid for _, jid in row[lo:hi])
        for x in (r.x_lo, r.x_hi):
            col = on_v.get(x, [])
            lo = bisect.bisect_left(col, (r.y_lo, -1))
            hi = bisect.bisect_right(col, (r.y_hi, len(junctions)))
            found.update(jid for _, jid in col[lo:hi])
        out[blk.id] = sorted(found)
    return out


def read_capacity_overrides(path: Path | str) -> list[tuple[str, int, float]]:
    """Parse ``edge_id layer capacity`` lines; ``#`` starts a comment.

    Edge ids are ``S<k>`` (staircase segment), ``G<k>`` (grid edge) or a bare
    integer, which names a staircase segment.
    """
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'edge_id layer capacity'")
        eid, layer, cap = parts
        if eid[0] in "SG":
            kind, num = eid[0], eid[1:]
        else:
            kind, num = "S", eid
        out.append((f"{kind}{int(num)}", int(layer), float(cap)))
    return out


def apply_capacity_overrides(
    overrides: Iterable[tuple[str, int, float]],
    jg: JunctionGraph,
    gg: "GridGraph | None" = None,
) -> None:
    for eid, layer, cap in overrides:
        kind, k = eid[0], int(eid[1:])
        if cap < 0:
            raise ValueError(f"negative capacity for {eid}")
        if kind == "S":
            states = jg.states
        elif gg is not None:
            states = gg.states
        else:
            raise ValueError(f"grid override {eid} given without a grid graph")
        if not 0 <= k < len(states):
            raise ValueError(f"unknown edge {eid}")
        if not 1 <= layer < len(states[k].capacity):
            raise ValueError(f"layer {layer} out of range for {eid}")
        states[k].capacity[layer] = float(cap)
