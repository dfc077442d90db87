"""Brute-force oracles used by the test suite.

Nothing here imports the production graph or router code: each oracle
recomputes its answer from first principles so that agreement is evidence.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Point = tuple[int, int]

MAX_TINY_VERTICES = 12


class TooManyPins(ValueError):
    pass


# ---------------------------------------------------------------------------
# shortest paths


@dataclass
class TinyGraph:
    """A directed graph with per-arc layer options, small enough to enumerate.

    ``arcs[v]`` lists ``(to, options)``; each option is
    ``(entry_layer, exit_layer, internal_changes, weight)`` and an entry of
    None means the arc carries no wire and keeps the current layer.
    """

    n: int
    arcs: dict[int, list[tuple[int, list[tuple]]]] = field(default_factory=dict)
    src_layer: int = 1
    dst_layer: int = 1
    via_cost: float = 0.0

    def __post_init__(self) -> None:
        if self.n > MAX_TINY_VERTICES:
            raise ValueError(f"TinyGraph holds at most {MAX_TINY_VERTICES} vertices")

    def add_arc(self, u: int, v: int, options: Sequence[tuple]) -> None:
        self.arcs.setdefault(u, []).append((v, [tuple(o[:4]) for o in options]))

    def add_edge(self, u: int, v: int, weight: float, layer: int) -> None:
        """Undirected single-layer edge."""
        self.add_arc(u, v, [(layer, layer, 0, weight)])
        self.add_arc(v, u, [(layer, layer, 0, weight)])

    def out(self, v: int):
        return self.arcs.get(v, [])


def _path_cost(g: TinyGraph, hops: list[list[tuple]]) -> float:
    """Cheapest layer choice along a fixed vertex path (exhaustive over options)."""
    best = float("inf")
    for choice in itertools.product(*hops):
        cost, cur = 0.0, g.src_layer
        for entry, exit_, internal, w in choice:
            changes = 0
            if entry is not None:
                changes = (1 if cur != entry else 0) + internal
                cur = exit_
            cost = cost + (w + g.via_cost * changes)
        cost = cost + (0.0 + g.via_cost * (1 if cur != g.dst_layer else 0))
        best = min(best, cost)
    return best


def exhaustive_shortest_path(g: TinyGraph, s: int, t: int) -> tuple[float, list[tuple[int, ...]]]:
    """Minimum cost over all simple s-t paths, with every path attaining it.

    Returns ``(inf, [])`` when t is unreachable.
    """
    if s == t:
        return 0.0, [(s,)]
    best, arg = float("inf"), []

    def walk(v: int, seen: list[int], hops: list[list[tuple]]) -> None:
        nonlocal best, arg
        for to, options in g.out(v):
            if to in seen:
                continue
            hops.append(options)
            seen.append(to)
            if to == t:
                c = _path_cost(g, hops)
                if c < best:
                    best, arg = c, [tuple(seen)]
                elif c == best:
                    arg.append(tuple(seen))
            else:
                walk(to, seen, hops)
            seen.pop()
            hops.pop()

    walk(s, [s], [])
    return best, arg


def random_tiny_graph(rng: random.Random, n: int | None = None, layers: int = 4) -> TinyGraph:
    """Random directed graph with a mix of single-layer, L-bend and zero-length arcs."""
    n = n or rng.randint(2, 10)
    g = TinyGraph(n, src_layer=rng.randint(1, layers), dst_layer=rng.randint(1, layers), via_cost=rng.choice([0.0, 0.5, 1.0, 2.5, 7.0]))
    density = rng.uniform(0.15, 0.45)
    for u in range(n):
        for v in range(n):
            if u == v or rng.random() > density:
                continue
            kind = rng.random()
            if kind < 0.6:
                L = rng.randint(1, layers)
                g.add_arc(u, v, [(L, L, 0, float(rng.randint(1, 20)))])
            elif kind < 0.9:
                a, b = rng.sample(range(1, layers + 1), 2)
                w = round(rng.uniform(0.5, 20.0), 3)
                g.add_arc(u, v, [(a, b, 1, w), (b, a, 1, w)])
            else:
                g.add_arc(u, v, [(None, None, 0, 0.0)])
    return g


# ---------------------------------------------------------------------------
# rectilinear Steiner trees


def _dreyfus_wagner(nodes: list[Point], adj: dict[Point, list[tuple[Point, int]]], terms: list[Point]) -> int:
    inf = float("inf")
    # all-pairs shortest paths on the Hanan grid graph (Floyd-Warshall)
    idx = {p: i for i, p in enumerate(nodes)}
    N = len(nodes)
    d = [[inf] * N for _ in range(N)]
    for i in range(N):
        d[i][i] = 0
    for p, nbrs in adj.items():
        for q, w in nbrs:
            d[idx[p]][idx[q]] = min(d[idx[p]][idx[q]], w)
    for k in range(N):
        dk = d[k]
        for i in range(N):
            dik = d[i][k]
            if dik == inf:
                continue
            di = d[i]
            for j in range(N):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    t = [idx[p] for p in terms]
    q = len(t) - 1
    root, rest = t[q], t[:q]
    full = (1 << q) - 1
    # S[mask][v]: min tree connecting terminals in mask plus vertex v
    S = [[inf] * N for _ in range(full + 1)]
    for i, ti in enumerate(rest):
        for v in range(N):
            S[1 << i][v] = d[ti][v]
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        row = S[mask]
        sub = (mask - 1) & mask
        while sub:
            if sub < (mask ^ sub):
                a, b = S[sub], S[mask ^ sub]
                for v in range(N):
                    s = a[v] + b[v]
                    if s < row[v]:
                        row[v] = s
            sub = (sub - 1) & mask
        relaxed = list(row)
        for v in range(N):
            rv = row[v]
            if rv == inf:
                continue
            dv = d[v]
            for u in range(N):
                if rv + dv[u] < relaxed[u]:
                    relaxed[u] = rv + dv[u]
        S[mask] = relaxed
    return int(S[full][root])


def exhaustive_rsmt(pins: Sequence[Point]) -> int:
    """Exact rectilinear Steiner minimal tree length for up to four pins.

    Runs Dreyfus-Wagner over the Hanan grid graph, which contains an optimal
    rectilinear Steiner tree.
    """
    pts = sorted(set(map(tuple, pins)))
    if len(pins) > 4:
        raise TooManyPins(f"{len(pins)} pins; the oracle handles at most 4")
    if len(pts) <= 1:
        return 0
    if len(pts) == 2:
        return abs(pts[0][0] - pts[1][0]) + abs(pts[0][1] - pts[1][1])
    xs = sorted({p[0] for p in pts})
    ys = sorted({p[1] for p in pts})
    nodes = [(x, y) for x in xs for y in ys]
    adj: dict[Point, list[tuple[Point, int]]] = {p: [] for p in nodes}
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if i + 1 < len(xs):
                w = xs[i + 1] - x
                adj[(x, y)].append(((xs[i + 1], y), w))
                adj[(xs[i + 1], y)].append(((x, y), w))
            if j + 1 < len(ys):
                w = ys[j + 1] - y
                adj[(x, y)].append(((x, ys[j + 1]), w))
                adj[(x, ys[j + 1])].append(((x, y), w))
    return _dreyfus_wagner(nodes, adj, pts)


# ---------------------------------------------------------------------------
# floorplan walls


@dataclass(frozen=True)
class ScanResult:
    junctions: list[tuple[Point, tuple[str, ...]]]
    segments: list[tuple[Point, Point]]  # wall pieces between adjacent junctions


def _edges_of(rect) -> list[tuple[Point, Point]]:
    x0, y0, x1, y1 = rect
    return [((x0, y0), (x1, y0)), ((x0, y1), (x1, y1)), ((x0, y0), (x0, y1)), ((x1, y0), (x1, y1))]


def _on_wall(edges, p: tuple[Fraction, Fraction]) -> bool:
    x, y = p
    for (ax, ay), (bx, by) in edges:
        if ay == by == y and ax <= x <= bx:
            return True
        if ax == bx == x and ay <= y <= by:
            return True
    return False


def wall_scan(fp) -> ScanResult:
    """Pairwise scan of block edges: T-junctions and the wall pieces joining them.

    A point is a junction when exactly three of the four half-step probes
    around it land on some block edge. Die corners never qualify (two arms).
    """
    rects = [(b.outline.x_lo, b.outline.y_lo, b.outline.x_hi, b.outline.y_hi) for b in fp.blocks]
    edges = [e for r in rects for e in _edges_of(r)]
    half = Fraction(1, 2)
    cands = sorted({c for (x0, y0, x1, y1) in rects for c in ((x0, y0), (x1, y0), (x0, y1), (x1, y1))})
    junctions = []
    for x, y in cands:
        arms = tuple(
            name
            for name, (dx, dy) in (("E", (1, 0)), ("N", (0, 1)), ("W", (-1, 0)), ("S", (0, -1)))
            if _on_wall(edges, (x + dx * half, y + dy * half))
        )
        if len(arms) == 3:
            junctions.append(((x, y), arms))
    jpts = [p for p, _ in junctions]
    segs = []
    # horizontal pieces: consecutive junctions on a row joined by continuous wall
    breaks_x: dict[int, set[int]] = {}
    breaks_y: dict[int, set[int]] = {}
    for (ax, ay), (bx, by) in edges:
        if ay == by:
            breaks_x.setdefault(ay, set()).update((ax, bx))
        else:
            breaks_y.setdefault(ax, set()).update((ay, by))
    for y in sorted({p[1] for p in jpts}):
        row = sorted(p[0] for p in jpts if p[1] == y)
        stops = sorted(breaks_x.get(y, set()) | set(row))
        for a, b in zip(row, row[1:]):
            inner = [s for s in stops if a <= s <= b]
            if all(_on_wall(edges, (Fraction(u + v, 2), y)) for u, v in zip(inner, inner[1:])):
                segs.append(((a, y), (b, y)))
    for x in sorted({p[0] for p in jpts}):
        col = sorted(p[1] for p in jpts if p[0] == x)
        stops = sorted(breaks_y.get(x, set()) | set(col))
        for a, b in zip(col, col[1:]):
            inner = [s for s in stops if a <= s <= b]
            if all(_on_wall(edges, (x, Fraction(u + v, 2))) for u, v in zip(inner, inner[1:])):
                segs.append(((x, a), (x, b)))
    return ScanResult(junctions, sorted(segs))
