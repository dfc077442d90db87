"""The m-by-m bin grid used for over-the-block routing."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import H, V, layer_direction
from .floorplan import Floorplan, Net, Point, Rect
from .staircase import EdgeState

LEFT, RIGHT, BOTTOM, TOP = "left", "right", "bottom", "top"


@dataclass(frozen=True)
class Bin:
    id: int
    row: int
    col: int
    rect: Rect
    center: Point


@dataclass(frozen=True)
class GridEdge:
    id: int
    bins: tuple[int, int]  # (lower/left bin, upper/right bin)
    orientation: str  # direction of the wires crossing it: H between columns, V between rows
    boundary: tuple[Point, Point]
    length: int


@dataclass
class GridGraph:
    m: int
    die: Rect
    bins: list[Bin]
    edges: list[GridEdge]
    states: list[EdgeState]
    layers: list[int] = field(default_factory=list)
    x_bounds: list[int] = field(default_factory=list)  # interior column boundaries
    y_bounds: list[int] = field(default_factory=list)
    side_edge: dict[tuple[int, str], int] = field(default_factory=dict)
    # lowest layer usable over the blocks under each edge's boundary
    floor: list[int] = field(default_factory=list)

    @property
    def num_vertices(self) -> int:
        return len(self.bins)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def bin_of(self, p: Point) -> int:
        """Bin containing ``p``; points on a border go to the lower-indexed bin."""
        col = bisect.bisect_left(self.x_bounds, p[0])
        row = bisect.bisect_left(self.y_bounds, p[1])
        return row * self.m + col

    def neighbour(self, b: int, side: str) -> int | None:
        e = self.side_edge.get((b, side))
        if e is None:
            return None
        lo, hi = self.edges[e].bins
        return hi if lo == b else lo

    def layers_for(self, orientation: str) -> list[int]:
        return [L for L in self.layers if layer_direction(L) == orientation]


def grid_dimension(n: int) -> int:
    """ceil(sqrt(2n - 2)), at least 1."""
    if n < 1:
        raise ValueError("need at least one block")
    t = 2 * n - 2
    if t <= 1:
        return 1
    return math.isqrt(t - 1) + 1


def _cuts(lo: int, hi: int, m: int) -> list[int]:
    step = (hi - lo) // m
    if step <= 0:
        raise ValueError(f"die span {hi - lo} too small for {m} bins")
    return [lo + step * k for k in range(m)] + [hi]


def build_grid_graph(m: int, die: Rect, max_layers: int = 0, layers: Sequence[int] = ()) -> GridGraph:
    if m < 1:
        raise ValueError("m must be >= 1")
    xs = _cuts(die.x_lo, die.x_hi, m)
    ys = _cuts(die.y_lo, die.y_hi, m)
    bins = []
    for r in range(m):
        for c in range(m):
            rect = Rect(xs[c], ys[r], xs[c + 1], ys[r + 1])
            bins.append(Bin(r * m + c, r, c, rect, rect.center))
    edges: list[GridEdge] = []
    side_edge: dict[tuple[int, str], int] = {}
    for r in range(m):
        for c in range(m):
            b = r * m + c
            if c + 1 < m:
                o = b + 1
                seg = ((xs[c + 1], ys[r]), (xs[c + 1], ys[r + 1]))
                length = bins[o].center[0] - bins[b].center[0]
                side_edge[(b, RIGHT)] = side_edge[(o, LEFT)] = len(edges)
                edges.append(GridEdge(len(edges), (b, o), H, seg, length))
            if r + 1 < m:
                o = b + m
                seg = ((xs[c], ys[r + 1]), (xs[c + 1], ys[r + 1]))
                length = bins[o].center[1] - bins[b].center[1]
                side_edge[(b, TOP)] = side_edge[(o, BOTTOM)] = len(edges)
                edges.append(GridEdge(len(edges), (b, o), V, seg, length))
    states = [EdgeState.empty(max_layers) for _ in edges]
    return GridGraph(
        m, die, bins, edges, states, sorted(layers), xs[1:-1], ys[1:-1], side_edge, [0] * len(edges)
    )


def _boundary_arrays(gg: GridGraph) -> tuple[np.ndarray, ...]:
    b = np.array([[e.boundary[0][0], e.boundary[0][1], e.boundary[1][0], e.boundary[1][1]] for e in gg.edges])
    if not len(b):
        b = np.zeros((0, 4), dtype=np.int64)
    return b[:, 0], b[:, 1], b[:, 2], b[:, 3]


def bbox_edge_counts(gg: GridGraph, nets: Iterable[Net]) -> np.ndarray:
    """Number of nets whose pin bounding box touches each edge's boundary."""
    sx0, sy0, sx1, sy1 = _boundary_arrays(gg)
    counts = np.zeros(len(gg.edges), dtype=np.int64)
    for net in nets:
        xs = [p.location[0] for p in net.pins]
        ys = [p.location[1] for p in net.pins]
        bx0, bx1, by0, by1 = min(xs), max(xs), min(ys), max(ys)
        hit = (sx0 <= bx1) & (bx0 <= sx1) & (sy0 <= by1) & (by0 <= sy1)
        counts += hit
    return counts


def compute_grid_capacities(gg: GridGraph, nets: Sequence[Net], fp: Floorplan | None = None, mode: str = "replicate") -> np.ndarray:
    """Assign bounding-box-count capacities to every usable grid layer.

    A layer is usable on an edge when its direction matches the edge and it
    lies above the reserved layers of every block under the boundary.
    Returns the base per-edge counts.
    """
    base = bbox_edge_counts(gg, nets)
    if fp is not None:
        gg.floor = [_reserved_floor(fp, e) for e in gg.edges]
    for e, st, R in zip(gg.edges, gg.states, base):
        usable = [L for L in gg.layers_for(e.orientation) if L > gg.floor[e.id]]
        share = float(R) if mode == "replicate" else (float(R) / len(usable) if usable else 0.0)
        for L in usable:
            st.capacity[L] = share
    return base


def _reserved_floor(fp: Floorplan, e: GridEdge) -> int:
    (x0, y0), (x1, y1) = e.boundary
    top = 0
    for blk in fp.blocks:
        r = blk.outline
        # positive-length overlap between the boundary segment and the block
        if x0 == x1:
            if r.x_lo <= x0 <= r.x_hi and min(y1, r.y_hi) - max(y0, r.y_lo) > 0:
                top = max(top, blk.reserved_up_to)
        elif r.y_lo <= y0 <= r.y_hi and min(x1, r.x_hi) - max(x0, r.x_lo) > 0:
            top = max(top, blk.reserved_up_to)
    return top
