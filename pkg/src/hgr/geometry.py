"""Routed geometry: layered axis-parallel segments, vias and their union."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .floorplan import Point

STAIRCASE, GRID, CONNECTOR, LOCAL = "staircase", "grid", "connector", "local"


@dataclass(frozen=True, order=True)
class RouteSegment:
    p0: Point
    p1: Point
    layer: int
    kind: str = STAIRCASE

    def __post_init__(self) -> None:
        if self.p0[0] != self.p1[0] and self.p0[1] != self.p1[1]:
            raise ValueError(f"segment {self.p0}->{self.p1} is not axis-parallel")
        if self.p1 < self.p0:
            a, b = self.p1, self.p0
            object.__setattr__(self, "p0", a)
            object.__setattr__(self, "p1", b)

    @property
    def horizontal(self) -> bool:
        return self.p0[1] == self.p1[1] and self.p0[0] != self.p1[0]

    @property
    def length(self) -> int:
        return abs(self.p1[0] - self.p0[0]) + abs(self.p1[1] - self.p0[1])


Via = tuple[int, int, int, int]  # (x, y, lower layer, upper layer): one layer change


def via_stack(p: Point, a: int, b: int) -> list[Via]:
    """The via for a layer change from ``a`` to ``b`` at ``p`` (none if a == b)."""
    if a == b:
        return []
    return [(p[0], p[1], min(a, b), max(a, b))]


def _lines(segments: Iterable[RouteSegment]):
    lines: dict[tuple[int, str, int], list[tuple[int, int, str]]] = defaultdict(list)
    for s in segments:
        if s.length == 0:
            continue
        if s.horizontal:
            lines[(s.layer, "H", s.p0[1])].append((s.p0[0], s.p1[0], s.kind))
        else:
            lines[(s.layer, "V", s.p0[0])].append((s.p0[1], s.p1[1], s.kind))
    return lines


def merge_segments(segments: Iterable[RouteSegment]) -> list[RouteSegment]:
    """Union of same-layer collinear segments; overlaps and touching runs merge."""
    out = []
    for (layer, orient, c), ivs in sorted(_lines(segments).items()):
        ivs.sort()
        cur = list(ivs[0])
        runs = []
        for a, b, kind in ivs[1:]:
            if a <= cur[1]:
                cur[1] = max(cur[1], b)
            else:
                runs.append(cur)
                cur = [a, b, kind]
        runs.append(cur)
        for a, b, kind in runs:
            if orient == "H":
                out.append(RouteSegment((a, c), (b, c), layer, kind))
            else:
                out.append(RouteSegment((c, a), (c, b), layer, kind))
    return out


def union_length(segments: Iterable[RouteSegment]) -> int:
    return sum(s.length for s in merge_segments(segments))


def branch_points(segments: Iterable[RouteSegment], vias: Iterable[Via] = ()) -> list[Point]:
    """Points where the merged wiring has at least three arm directions."""
    merged = merge_segments(segments)
    arms: dict[Point, set[str]] = defaultdict(set)
    cands: set[Point] = {s.p0 for s in merged} | {s.p1 for s in merged}
    cands |= {(v[0], v[1]) for v in vias}
    # endpoints of one run may sit in the middle of another; index runs by line
    h: dict[int, list[tuple[int, int]]] = defaultdict(list)
    v: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for s in merged:
        if s.horizontal:
            h[s.p0[1]].append((s.p0[0], s.p1[0]))
        else:
            v[s.p0[0]].append((s.p0[1], s.p1[1]))
    for p in cands:
        x, y = p
        for a, b in h.get(y, ()):
            if a <= x <= b:
                if x < b:
                    arms[p].add("E")
                if x > a:
                    arms[p].add("W")
        for a, b in v.get(x, ()):
            if a <= y <= b:
                if y < b:
                    arms[p].add("N")
                if y > a:
                    arms[p].add("S")
    return sorted(p for p, a in arms.items() if len(a) >= 3)
