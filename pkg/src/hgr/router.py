"""Hybrid global router.

Each two-terminal connection is a shortest path over (vertex, layer) states
of the net's hGSRG. Staircase and grid edges take the lowest
direction-compatible layer that still admits one more net; connector edges
are L-shapes whose bend orientation is chosen by the search. The cost of a
path is the sum of congestion-penalised edge weights plus ``via_cost`` per
layer change.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .config import H, RunConfig, V, layer_direction
from .floorplan import Floorplan, Net, Point, hpwl, order_nets
from .geometry import (
    CONNECTOR,
    GRID,
    LOCAL,
    STAIRCASE,
    RouteSegment,
    Via,
    branch_points,
    merge_segments,
    via_stack,
)
from .grid import BOTTOM, LEFT, RIGHT, TOP, GridGraph, build_grid_graph, compute_grid_capacities, grid_dimension
from .hybrid import HGSRG, HybridBase, IsolatedPin, build_hgsrg
from .metrics import ROUTED, UNROUTED, CongestionSnapshot, NetResult, RoutingResult
from .staircase import (
    EdgeState,
    JunctionGraph,
    OverflowRejected,
    apply_capacity_overrides,
    build_junction_graph,
    edge_weight,
    read_capacity_overrides,
    update_demand,
)

# An option is one way to realise an arc on the layer stack:
# (entry layer, exit layer, internal layer changes, weight, tag). Entry None means
# the arc has no wire and leaves the current layer unchanged.
Option = tuple
_SINK = math.inf


class Unroutable(Exception):
    pass


class AssignmentFailed(Exception):
    def __init__(self, key, msg: str = ""):
        super().__init__(msg or f"layer assignment failed on {key}")
        self.key = key


class LocalOverflow(Exception):
    pass


def layered_dijkstra(
    src: int,
    src_layer: int,
    dst: int,
    dst_layer: int,
    arcs: Callable[[int], Iterable[tuple[int, object, Sequence[Option]]]],
    via_cost: float,
) -> Optional[tuple[float, list[tuple[int, int, object, Option]]]]:
    """Minimum-cost path from ``src`` to ``dst`` over (vertex, layer) states.

    Returns ``(cost, steps)`` with steps ``(from, to, arc key, option)``, or
    None when ``dst`` is unreachable. Equal keys pop lowest vertex id first.
    """
    if src == dst:
        return 0.0, []
    inf = math.inf
    dist: dict[tuple, float] = {(src, src_layer): 0.0}
    pred: dict[tuple, tuple] = {}
    heap = [(0.0, src, src_layer)]
    while heap:
        d, v, L = heapq.heappop(heap)
        if v == _SINK:
            steps = []
            state = pred[(_SINK, 0)][0]
            while state in pred:
                prev, key, opt = pred[state]
                steps.append((prev[0], state[0], key, opt))
                state = prev
            steps.reverse()
            return d, steps
        if d > dist[(v, L)]:
            continue
        if v == dst:
            nd = d + (0.0 + via_cost * (L != dst_layer))
            if nd < dist.get((_SINK, 0), inf):
                dist[(_SINK, 0)] = nd
                pred[(_SINK, 0)] = ((v, L), None, None)
                heapq.heappush(heap, (nd, _SINK, 0))
            continue
        for to, key, options in arcs(v):
            for opt in options:
                entry = opt[0]
                if entry is None:
                    vias, nL = 0, L
                else:
                    vias, nL = (L != entry) + opt[2], opt[1]
                nd = d + (opt[3] + via_cost * vias)
                s = (to, nL)
                if nd < dist.get(s, inf):
                    dist[s] = nd
                    pred[s] = ((v, L), key, opt)
                    heapq.heappush(heap, (nd, to, nL))
    return None


@dataclass
class Route:
    net_id: int
    src: Point
    dst: Point
    segments: tuple[RouteSegment, ...] = ()
    vias: tuple[Via, ...] = ()
    cost: float = 0.0
    demand: tuple = ()

    @property
    def length(self) -> int:
        return sum(s.length for s in merge_segments(self.segments))

    @property
    def via_count(self) -> int:
        return len(set(self.vias))


@dataclass
class SteinerTree:
    terminals: tuple[Point, ...]
    steiner_points: list[Point]
    segments: list[RouteSegment]
    vias: list[Via]
    pair_routes: list[Route] = field(default_factory=list)
    pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segments)

    @property
    def via_count(self) -> int:
        return len(self.vias)


def _manhattan(a: Point, b: Point) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def decompose_multi_terminal(net: Net | Sequence[Point]) -> list[tuple[int, int]]:
    """MST of the complete Manhattan graph on the terminals (Kruskal order).

    Candidate edges are tried in (weight, i, j) order, so ties resolve by
    edge id and the returned pairs follow construction order.
    """
    pts = [p.location for p in net.pins] if isinstance(net, Net) else list(net)
    t = len(pts)
    cand = sorted((_manhattan(pts[i], pts[j]), i, j) for i in range(t) for j in range(i + 1, t))
    parent = list(range(t))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    out = []
    for _, i, j in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            out.append((i, j))
            if len(out) == t - 1:
                break
    return out


def identify_steiner_points(routes: Sequence[Route], terminals: Sequence[Point] = ()) -> SteinerTree:
    """Merge pair routes into one tree: shared wiring and vias count once."""
    segs = [s for r in routes for s in r.segments]
    vias = sorted({v for r in routes for v in r.vias})
    merged = merge_segments(segs)
    if not terminals:
        terminals = tuple(dict.fromkeys(p for r in routes for p in (r.src, r.dst)))
    return SteinerTree(tuple(terminals), branch_points(merged, vias), merged, vias, list(routes))


def _l_shape(a: Point, b: Point, h_layer: int, v_layer: int, h_first: bool, kind: str):
    """Segments and bend vias of an L from ``a`` to ``b``."""
    corner = (b[0], a[1]) if h_first else (a[0], b[1])
    segs, vias = [], []
    legs = [(a, corner), (corner, b)]
    layers = [h_layer, v_layer] if h_first else [v_layer, h_layer]
    for (p, q), L in zip(legs, layers):
        if p != q:
            segs.append(RouteSegment(p, q, L, kind))
    if len(segs) == 2:
        vias = via_stack(corner, h_layer, v_layer)
    return segs, vias


@dataclass
class LocalRoute:
    segments: list[RouteSegment]
    vias: list[Via]
    reservations: list[tuple]


def _quadrant_sides(entity: Point, center: Point) -> tuple[Optional[str], Optional[str]]:
    hs = LEFT if entity[0] < center[0] else RIGHT if entity[0] > center[0] else None
    vs = BOTTOM if entity[1] < center[1] else TOP if entity[1] > center[1] else None
    return hs, vs


class RoutingState:
    """Graphs, demand and counters shared across the nets of one run."""

    def __init__(self, fp: Floorplan, config: RunConfig, jg: JunctionGraph, gg: GridGraph):
        self.fp = fp
        self.config = config
        self.jg = jg
        self.gg = gg
        self.base = HybridBase(jg, gg)
        self.inc = config.demand_increment
        self.epe = config.epe
        side = max(fp.die.width, fp.die.height) / gg.m
        self.via_cost = float(config.via_penalty) if config.via_penalty is not None else side / 2
        self.grid_on = bool(gg.layers)
        self.c_r = 0
        self.c_u = 0
        self.charges: dict[tuple, float] = {}
        self._blocks_by_bin = self._bucket_blocks()
        self._floor_cache: dict[Point, int] = {}
        self.s_layers = {o: jg.layers_for(o) for o in (H, V)}
        self.g_layers = {o: gg.layers_for(o) for o in (H, V)}
        self.h_stair = min(jg.layers_for(H))
        self.v_stair = min(jg.layers_for(V))

    @classmethod
    def build(cls, fp: Floorplan, config: RunConfig) -> "RoutingState":
        max_l = config.max_layers
        jg = build_junction_graph(fp, config.pitch, config.staircase_layers(), max_l)
        gg = build_grid_graph(grid_dimension(fp.n), fp.die, max_l, config.grid_layers())
        if fp.nets:
            compute_grid_capacities(gg, fp.nets, fp, config.grid_cap_mode)
        if config.capacities:
            apply_capacity_overrides(read_capacity_overrides(config.capacities), jg, gg)
        return cls(fp, config, jg, gg)

    # -- demand -----------------------------------------------------------
    def edge_state(self, group: str, idx: int) -> EdgeState:
        return self.jg.states[idx] if group == "S" else self.gg.states[idx]

    def admits(self, group: str, idx: int, layer: int) -> bool:
        return (group, idx, layer) in self.charges or self.edge_state(group, idx).admits(layer, self.inc)

    def weight(self, group: str, idx: int, layer: int, length: float) -> float:
        st = self.edge_state(group, idx)
        u = st.demand[layer] - self.charges.get((group, idx, layer), 0.0)
        return edge_weight(length, u, st.capacity[layer])

    def commit(self, demand: Iterable[tuple]) -> None:
        """Charge each (group, edge, layer) once per net; all or nothing."""
        fresh = [k for k in dict.fromkeys(demand) if k not in self.charges]
        for g, i, L in fresh:
            if not self.edge_state(g, i).admits(L, self.inc):
                raise OverflowRejected(f"{g}{i} layer {L} is full")
        for g, i, L in fresh:
            update_demand(self.edge_state(g, i), L, self.epe)
            self.charges[(g, i, L)] = self.inc

    def begin_net(self) -> None:
        self.charges = {}

    def rollback_net(self) -> None:
        for (g, i, L), inc in self.charges.items():
            self.edge_state(g, i).demand[L] -= inc
        self.charges = {}

    # -- over-the-block availability --------------------------------------
    def _bucket_blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.gg.bins]
        m = self.gg.m
        for k, blk in enumerate(self.fp.blocks):
            r = blk.outline
            c0 = self.gg.bin_of((r.x_lo, r.y_lo)) % m
            r0 = self.gg.bin_of((r.x_lo, r.y_lo)) // m
            c1 = min(m - 1, self.gg.bin_of((r.x_hi, r.y_hi)) % m + 1)
            r1 = min(m - 1, self.gg.bin_of((r.x_hi, r.y_hi)) // m + 1)
            for row in range(r0, r1 + 1):
                for col in range(c0, c1 + 1):
                    out[row * m + col].append(k)
        return out

    def point_floor(self, p: Point) -> int:
        """Highest reserved layer among blocks whose outline contains ``p``."""
        f = self._floor_cache.get(p)
        if f is None:
            f = 0
            for k in self._blocks_by_bin[self.gg.bin_of(p)]:
                blk = self.fp.blocks[k]
                if blk.outline.contains(p):
                    f = max(f, blk.reserved_up_to)
            self._floor_cache[p] = f
        return f

    def local_leg_layer(self, b: int, side: Optional[str], orient: str, floor: int) -> Optional[int]:
        """Lowest grid layer for a local leg toward ``side`` whose boundary edge can take the reservation."""
        e = self.gg.side_edge.get((b, side)) if side else None
        for L in self.g_layers[orient]:
            if L <= floor:
                continue
            if e is None:
                return L
            if L > self.gg.floor[e] and self.admits("G", e, L):
                return L
        return None

    def local_layers(self, entity: Point, b: int) -> Optional[tuple[Optional[int], Optional[int]]]:
        center = self.gg.bins[b].center
        hs, vs = _quadrant_sides(entity, center)
        floor = max(self.point_floor(entity), self.point_floor(center))
        gh = self.local_leg_layer(b, hs, H, floor) if hs else None
        gv = self.local_leg_layer(b, vs, V, floor) if vs else None
        if (hs and gh is None) or (vs and gv is None):
            return None
        return gh, gv


def local_route(
    entity: Point,
    bin_id: int,
    global_side: Optional[str],
    state: RoutingState,
    h_layer: Optional[int] = None,
    v_layer: Optional[int] = None,
    h_first: bool = True,
) -> LocalRoute:
    """L-shaped connection from a pin or junction to its bin centre.

    Each leg reserves one unit of demand on the bin boundary edge of the
    quadrant side the entity sits in, unless the global route leaves the bin
    through that same side (the leg then shares the global route's track).
    """
    center = state.gg.bins[bin_id].center
    hs, vs = _quadrant_sides(entity, center)
    if hs is None and vs is None:
        return LocalRoute([], [], [])
    if h_layer is None or v_layer is None:
        layers = state.local_layers(entity, bin_id)
        if layers is None:
            raise LocalOverflow(f"no local layer at bin {bin_id} for {entity}")
        h_layer = h_layer if h_layer is not None else layers[0]
        v_layer = v_layer if v_layer is not None else layers[1]
    reservations = []
    for side, L in ((hs, h_layer), (vs, v_layer)):
        if side is None or side == global_side:
            continue
        e = state.gg.side_edge.get((bin_id, side))
        if e is None:
            continue
        if L is None or L <= state.gg.floor[e] or not state.admits("G", e, L):
            raise LocalOverflow(f"bin {bin_id} {side} edge cannot take a reservation on layer {L}")
        reservations.append(("G", e, L))
    # a leg whose layer is unset has zero length
    segs, vias = _l_shape(entity, center, h_layer or 0, v_layer or 0, h_first, LOCAL)
    return LocalRoute(segs, vias, reservations)


class _PairSearch:
    """Arc generator for one terminal pair over a frozen demand snapshot."""

    def __init__(self, state: RoutingState, g: HGSRG, a: int, b: int, excluded: frozenset):
        self.state = state
        self.g = g
        self.J, self.B = state.base.J, state.base.B
        self.src_v, self.dst_v = g.pin_vertex(a), g.pin_vertex(b)
        self.a, self.b = a, b
        self.excluded = excluded
        pins = g.net.pins
        self.pin_pts = {self.src_v: pins[a].location, self.dst_v: pins[b].location}
        self.pin_block = {self.src_v: pins[a].block_id, self.dst_v: pins[b].block_id}
        self.dst_junctions = set(state.jg.block_junctions.get(pins[b].block_id, ()))
        self.pin_bin = {v: state.gg.bin_of(p) for v, p in self.pin_pts.items()}
        self._arcs: dict[int, list] = {}
        self.box = None
        if state.config.bbox_restrict:
            xs = [p.location[0] for p in pins]
            ys = [p.location[1] for p in pins]
            pad = max(state.fp.die.width, state.fp.die.height) // state.gg.m
            self.box = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)

    def point(self, v: int) -> Point:
        if v < self.J:
            return self.state.jg.junctions[v].location
        if v < self.J + self.B:
            return self.state.gg.bins[v - self.J].center
        return self.pin_pts[v]

    def _inside(self, v: int) -> bool:
        if self.box is None:
            return True
        x, y = self.point(v)
        return self.box[0] <= x <= self.box[2] and self.box[1] <= y <= self.box[3]

    # -- options ------------------------------------------------------------
    def _edge_option(self, group: str, idx: int) -> list[Option]:
        st = self.state
        if group == "S":
            seg = st.jg.segments[idx]
            layers, length, lo = st.s_layers[seg.orientation], seg.length, 0
        else:
            e = st.gg.edges[idx]
            layers, length, lo = st.g_layers[e.orientation], e.length, st.gg.floor[idx]
        for L in layers:
            if L > lo and st.admits(group, idx, L):
                return [(L, L, 0, st.weight(group, idx, L, float(length)), L)]
        return []

    @staticmethod
    def _l_options(p: Point, q: Point, hl: Optional[int], vl: Optional[int]) -> list[Option]:
        w = float(_manhattan(p, q))
        dx, dy = p[0] != q[0], p[1] != q[1]
        if dx and dy:
            bend = int(hl != vl)
            return [(hl, vl, bend, w, (hl, vl, True)), (vl, hl, bend, w, (hl, vl, False))]
        if dx:
            return [(hl, hl, 0, w, (hl, vl, True))]
        if dy:
            return [(vl, vl, 0, w, (hl, vl, False))]
        return [(None, None, 0, 0.0, (hl, vl, True))]

    def _bin_options(self, entity: Point, b: int, frm: Point, to: Point) -> list[Option]:
        layers = self.state.local_layers(entity, b)
        if layers is None:
            return []
        return self._l_options(frm, to, layers[0], layers[1])

    def arcs(self, v: int) -> list:
        cached = self._arcs.get(v)
        if cached is not None:
            return cached
        st, J, B = self.state, self.J, self.B
        out = []
        ex = self.excluded
        if v < J:
            for nbr, s in st.jg.adjacency[v]:
                if ("S", s) not in ex and self._inside(nbr):
                    opts = self._edge_option("S", s)
                    if opts:
                        out.append((nbr, ("S", s), opts))
            if st.grid_on:
                b = st.base.junction_bins[v]
                key = ("JB", v)
                if key not in ex and self._inside(J + b):
                    p = st.jg.junctions[v].location
                    opts = self._bin_options(p, b, p, st.gg.bins[b].center)
                    if opts:
                        out.append((J + b, key, opts))
            if v in self.dst_junctions:
                key = ("PJ", self.b, v)
                if key not in ex:
                    p = st.jg.junctions[v].location
                    out.append((self.dst_v, key, self._l_options(p, self.pin_pts[self.dst_v], st.h_stair, st.v_stair)))
        elif v < J + B:
            b = v - J
            c = st.gg.bins[b].center
            for side in (LEFT, BOTTOM, RIGHT, TOP):
                e = st.gg.side_edge.get((b, side))
                if e is None or ("G", e) in ex:
                    continue
                nb = st.gg.neighbour(b, side)
                if not self._inside(J + nb):
                    continue
                opts = self._edge_option("G", e)
                if opts:
                    out.append((J + nb, ("G", e), opts))
            for j in st.base.bin_junctions[b]:
                key = ("JB", j)
                if key in ex or not self._inside(j):
                    continue
                p = st.jg.junctions[j].location
                opts = self._bin_options(p, b, c, p)
                if opts:
                    out.append((j, key, opts))
            if st.grid_on and self.pin_bin[self.dst_v] == b:
                key = ("PB", self.b)
                if key not in ex:
                    p = self.pin_pts[self.dst_v]
                    opts = self._bin_options(p, b, c, p)
                    if opts:
                        out.append((self.dst_v, key, opts))
        elif v == self.src_v:
            p = self.pin_pts[v]
            for j in st.jg.block_junctions.get(self.pin_block[v], ()):
                key = ("PJ", self.a, j)
                if key not in ex and self._inside(j):
                    q = st.jg.junctions[j].location
                    out.append((j, key, self._l_options(p, q, st.h_stair, st.v_stair)))
            if st.grid_on:
                b = self.pin_bin[v]
                key = ("PB", self.a)
                if key not in ex:
                    opts = self._bin_options(p, b, p, st.gg.bins[b].center)
                    if opts:
                        out.append((J + b, key, opts))
        out.sort(key=lambda arc: arc[0])
        self._arcs[v] = out
        return out


def _side_of(gg: GridGraph, b: int, e: int) -> Optional[str]:
    for side in (LEFT, BOTTOM, RIGHT, TOP):
        if gg.side_edge.get((b, side)) == e:
            return side
    return None


def assign_layers(steps, search: _PairSearch, state: RoutingState):
    """Realise a searched path as layered segments, vias and demand keys."""
    J = state.base.J
    src_layer = search.g.net.pins[search.a].layer
    dst_layer = search.g.net.pins[search.b].layer
    cur = src_layer
    segs: list[RouteSegment] = []
    vias: list[Via] = []
    demand: list[tuple] = []
    for i, (u, v, key, opt) in enumerate(steps):
        pu, pv = search.point(u), search.point(v)
        entry, exit_, _, _, tag = opt
        if entry is not None:
            vias += via_stack(pu, cur, entry)
        kind = key[0]
        if kind in ("S", "G"):
            L = tag
            if not state.admits(kind, key[1], L):
                raise AssignmentFailed(key)
            if layer_direction(L) != (H if pu[1] == pv[1] else V):
                raise AssignmentFailed(key, f"layer {L} does not match {key}")
            segs.append(RouteSegment(pu, pv, L, STAIRCASE if kind == "S" else GRID))
            demand.append((kind, key[1], L))
        elif kind == "PJ":
            s, vv = _l_shape(pu, pv, tag[0], tag[1], tag[2], CONNECTOR)
            segs += s
            vias += vv
        else:
            # pin-bin or junction-bin: one endpoint is a bin vertex
            if J <= v < J + state.base.B:
                b, entity, from_entity = v - J, pu, True
                nxt = steps[i + 1] if i + 1 < len(steps) else None
                side = _side_of(state.gg, b, nxt[2][1]) if nxt and nxt[2][0] == "G" else None
            else:
                b, entity, from_entity = u - J, pv, False
                prv = steps[i - 1] if i > 0 else None
                side = _side_of(state.gg, b, prv[2][1]) if prv and prv[2][0] == "G" else None
            h_first = tag[2] if from_entity else not tag[2]
            try:
                lr = local_route(entity, b, side, state, tag[0], tag[1], h_first)
            except LocalOverflow as exc:
                raise AssignmentFailed(key, str(exc)) from exc
            segs += lr.segments
            vias += lr.vias
            demand += lr.reservations
        if exit_ is not None:
            cur = exit_
    last = search.point(steps[-1][1]) if steps else search.pin_pts[search.dst_v]
    vias += via_stack(last, cur, dst_layer)
    return segs, vias, demand


def route_two_pin(
    src: int,
    dst: int,
    g: HGSRG,
    state: RoutingState,
    excluded: Iterable = (),
) -> Route:
    """Search and layer-assign one terminal pair; demand is not committed."""
    excluded = set(excluded)
    pins = g.net.pins
    for _ in range(state.config.max_retries + 1):
        search = _PairSearch(state, g, src, dst, frozenset(excluded))
        found = layered_dijkstra(
            search.src_v, pins[src].layer, search.dst_v, pins[dst].layer, search.arcs, state.via_cost
        )
        if found is None:
            raise Unroutable(f"net {g.net.name}: no admissible path for pins {src}-{dst}")
        cost, steps = found
        if not steps:
            return Route(g.net.id, pins[src].location, pins[dst].location, cost=0.0)
        try:
            segs, vias, demand = assign_layers(steps, search, state)
        except AssignmentFailed as exc:
            excluded.add(exc.key)
            continue
        return Route(
            g.net.id,
            pins[src].location,
            pins[dst].location,
            tuple(segs),
            tuple(dict.fromkeys(vias)),
            cost,
            tuple(demand),
        )
    raise Unroutable(f"net {g.net.name}: retries exhausted for pins {src}-{dst}")


def route_net(net: Net, state: RoutingState) -> NetResult:
    res = NetResult(net.id, net.name, net.degree, hpwl(net), UNROUTED, pins=tuple(p.location for p in net.pins))
    try:
        g = build_hgsrg(net, state.jg, state.gg, state.base)
    except IsolatedPin:
        state.c_u += 1
        return res
    pairs = [(0, 1)] if net.degree == 2 else decompose_multi_terminal(net)
    state.begin_net()
    routes = []
    for a, b in pairs:
        try:
            r = route_two_pin(a, b, g, state)
            state.commit(r.demand)
        except (Unroutable, OverflowRejected):
            # all-or-nothing: release what the earlier pairs of this net took
            state.rollback_net()
            state.c_u += 1
            return res
        routes.append(r)
    state.charges = {}
    state.c_r += 1
    tree = identify_steiner_points(routes, tuple(p.location for p in net.pins))
    tree.pairs = list(pairs)
    res.status = ROUTED
    res.tree = tree
    res.length = tree.length
    res.vias = tree.via_count
    return res


def congestion_snapshot(state: RoutingState) -> CongestionSnapshot:
    entries = []
    for group, states in (("S", state.jg.states), ("G", state.gg.states)):
        for k, st in enumerate(states):
            for L in range(1, len(st.capacity)):
                if st.capacity[L] > 0:
                    entries.append((f"{group}{k}", L, st.demand[L] / st.capacity[L]))
    return CongestionSnapshot(entries)


def route_all(fp: Floorplan, config: RunConfig, state: RoutingState | None = None) -> RoutingResult:
    t0 = time.process_time()
    state = state or RoutingState.build(fp, config)
    nets = order_nets(fp.nets, descending=config.net_order == "desc")
    results = [route_net(net, state) for net in nets]
    layers = 0
    for r in results:
        if r.tree is not None:
            for s in r.tree.segments:
                layers = max(layers, s.layer)
    elapsed = time.process_time() - t0
    return RoutingResult(
        results,
        state.c_r,
        state.c_u,
        congestion_snapshot(state),
        layers,
        elapsed if config.timing else None,
        config.mode,
    )
