"""Floorplan data model: blocks, pins, nets, T-junction extraction and mosaic checks.

All coordinates are integers (database units) so every geometric predicate
is exact.
"""

from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

HARD = "hard-macro"
SOFT = "soft-block"
BLOCK_KINDS = (HARD, SOFT)

Point = tuple[int, int]

# Arm directions: east, north, west, south.
E, N, W, S = "E", "N", "W", "S"


class FloorplanError(Exception):
    pass


class NonMosaicFloorplan(FloorplanError):
    pass


class DegenerateCross(FloorplanError):
    pass


@dataclass(frozen=True, order=True)
class Rect:
    x_lo: int
    y_lo: int
    x_hi: int
    y_hi: int

    def __post_init__(self) -> None:
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> int:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> int:
        return self.y_hi - self.y_lo

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def center(self) -> Point:
        return ((self.x_lo + self.x_hi) // 2, (self.y_lo + self.y_hi) // 2)

    def contains(self, p: Point) -> bool:
        """Closed containment (boundary counts)."""
        return self.x_lo <= p[0] <= self.x_hi and self.y_lo <= p[1] <= self.y_hi

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x_lo <= other.x_lo
            and self.y_lo <= other.y_lo
            and other.x_hi <= self.x_hi
            and other.y_hi <= self.y_hi
        )

    def overlaps(self, other: "Rect") -> bool:
        """True when the interiors intersect."""
        return (
            self.x_lo < other.x_hi
            and other.x_lo < self.x_hi
            and self.y_lo < other.y_hi
            and other.y_lo < self.y_hi
        )

    def on_boundary(self, p: Point) -> bool:
        if not self.contains(p):
            return False
        x, y = p
        return x in (self.x_lo, self.x_hi) or y in (self.y_lo, self.y_hi)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        return (
            (self.x_lo, self.y_lo),
            (self.x_hi, self.y_lo),
            (self.x_hi, self.y_hi),
            (self.x_lo, self.y_hi),
        )


@dataclass(frozen=True)
class Block:
    id: int
    name: str
    outline: Rect
    kind: str = SOFT
    # layers M1..reserved_up_to are blocked over this block
    reserved_up_to: int = 2


@dataclass(frozen=True)
class Pin:
    net_id: int
    block_id: int
    location: Point
    layer: int = 1


@dataclass(frozen=True)
class Net:
    id: int
    name: str
    pins: tuple[Pin, ...]

    @property
    def degree(self) -> int:
        return len(self.pins)


@dataclass(frozen=True)
class TJunction:
    id: int
    location: Point
    arms: tuple[str, ...]


@dataclass(frozen=True)
class Floorplan:
    die: Rect
    blocks: tuple[Block, ...]
    nets: tuple[Net, ...] = ()

    @property
    def n(self) -> int:
        return len(self.blocks)


@dataclass
class ValidationReport:
    coverage_gap: int = 0
    overlaps: list[tuple[int, int]] = field(default_factory=list)
    crosses: list[Point] = field(default_factory=list)
    pins_outside: list[tuple[int, int]] = field(default_factory=list)  # (net id, pin index)
    outside_die: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.coverage_gap
            or self.overlaps
            or self.crosses
            or self.pins_outside
            or self.outside_die
        )

    def violations(self) -> list[str]:
        out = []
        if self.coverage_gap:
            out.append(f"blocks leave {self.coverage_gap} units of whitespace")
        out += [f"blocks {a} and {b} overlap" for a, b in self.overlaps]
        out += [f"4-way crossing at {p}" for p in self.crosses]
        out += [f"net {n} pin {i} lies outside its block" for n, i in self.pins_outside]
        out += [f"block {b} extends outside the die" for b in self.outside_die]
        return out


class WallIndex:
    """Union of all wall segments (block edges and die outline), per line.

    ``horizontal[y]`` and ``vertical[x]`` hold sorted, disjoint, maximal
    intervals; collinear intervals that touch are merged.
    """

    def __init__(self, die: Rect, rects: Iterable[Rect]):
        h: dict[int, list[tuple[int, int]]] = defaultdict(list)
        v: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for r in list(rects) + [die]:
            h[r.y_lo].append((r.x_lo, r.x_hi))
            h[r.y_hi].append((r.x_lo, r.x_hi))
            v[r.x_lo].append((r.y_lo, r.y_hi))
            v[r.x_hi].append((r.y_lo, r.y_hi))
        self.horizontal = {y: _merge(iv) for y, iv in h.items()}
        self.vertical = {x: _merge(iv) for x, iv in v.items()}
        self._h_lo = {y: [a for a, _ in iv] for y, iv in self.horizontal.items()}
        self._v_lo = {x: [a for a, _ in iv] for x, iv in self.vertical.items()}

    @staticmethod
    def _covers(intervals, los, a: int, b: int) -> bool:
        # is the open span (a, b) covered by a single interval?
        if intervals is None:
            return False
        i = bisect.bisect_right(los, a) - 1
        return i >= 0 and intervals[i][0] <= a and b <= intervals[i][1]

    def arms(self, p: Point) -> tuple[str, ...]:
        x, y = p
        hs, hl = self.horizontal.get(y), self._h_lo.get(y)
        vs, vl = self.vertical.get(x), self._v_lo.get(x)
        out = []
        if self._covers(hs, hl, x, x + 1):
            out.append(E)
        if self._covers(vs, vl, y, y + 1):
            out.append(N)
        if self._covers(hs, hl, x - 1, x):
            out.append(W)
        if self._covers(vs, vl, y - 1, y):
            out.append(S)
        return tuple(out)


def _merge(intervals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def _candidate_points(fp: Floorplan) -> list[Point]:
    pts = {c for b in fp.blocks for c in b.outline.corners()}
    pts -= set(fp.die.corners())
    return sorted(pts)


def validate_mosaic(fp: Floorplan) -> ValidationReport:
    """Check that the blocks tile the die exactly with no 4-way crossings."""
    rep = ValidationReport()
    rects = [b.outline for b in fp.blocks]
    for b in fp.blocks:
        if not fp.die.contains_rect(b.outline):
            rep.outside_die.append(b.id)
    # sweep over blocks sorted by x_lo; only blocks that start before the
    # current one ends can overlap it
    order = sorted(range(len(rects)), key=lambda i: rects[i].x_lo)
    for pos, i in enumerate(order):
        ri = rects[i]
        for j in order[pos + 1 :]:
            rj = rects[j]
            if rj.x_lo >= ri.x_hi:
                break
            if ri.overlaps(rj):
                a, b = fp.blocks[i].id, fp.blocks[j].id
                rep.overlaps.append((min(a, b), max(a, b)))
    rep.overlaps.sort()
    if not rep.overlaps and not rep.outside_die:
        rep.coverage_gap = fp.die.area - sum(r.area for r in rects)
    walls = WallIndex(fp.die, rects)
    for p in _candidate_points(fp):
        if len(walls.arms(p)) == 4:
            rep.crosses.append(p)
    by_id = {b.id: b for b in fp.blocks}
    for net in fp.nets:
        for k, pin in enumerate(net.pins):
            owner = by_id.get(pin.block_id)
            if owner is None or not owner.outline.contains(pin.location):
                rep.pins_outside.append((net.id, k))
    return rep


def extract_junctions(fp: Floorplan) -> list[TJunction]:
    """All points where exactly three wall segments meet, sorted by (x, y)."""
    rep = validate_mosaic(fp)
    if rep.overlaps or rep.coverage_gap or rep.outside_die:
        raise NonMosaicFloorplan("; ".join(rep.violations()))
    if rep.crosses:
        raise DegenerateCross(f"4-way crossing at {rep.crosses[0]}")
    walls = WallIndex(fp.die, [b.outline for b in fp.blocks])
    out = []
    for p in _candidate_points(fp):
        arms = walls.arms(p)
        if len(arms) == 3:
            out.append(TJunction(len(out), p, arms))
    return out


def hpwl(net: Net | Sequence[Pin]) -> int:
    pins = net.pins if isinstance(net, Net) else net
    xs = [p.location[0] for p in pins]
    ys = [p.location[1] for p in pins]
    return (max(xs) - min(xs)) + (max(ys) - min(ys))


def order_nets(nets: Sequence[Net], descending: bool = False) -> list[Net]:
    """Sort by (degree, HPWL), net id breaking ties."""
    if descending:
        return sorted(nets, key=lambda n: (-n.degree, -hpwl(n), n.id))
    return sorted(nets, key=lambda n: (n.degree, hpwl(n), n.id))


def block_at(fp: Floorplan, p: Point) -> list[Block]:
    """Blocks whose closed outline contains ``p``."""
    return [b for b in fp.blocks if b.outline.contains(p)]
