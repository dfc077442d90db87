"""Routing quality metrics: ACE(x)/wACE4 congestion, Steiner-normalised length, CSV report."""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .floorplan import Point

ACE_POINTS = (0.5, 1, 2, 5)

ROUTED, UNROUTED = "routed", "unrouted"

CSV_NET_COLUMNS = ("net_id", "degree", "hpwl", "routed_length", "vias", "status")
CSV_SUMMARY_COLUMNS = (
    "total_length",
    "total_vias",
    "completion",
    "layers_used",
    "ace_0.5",
    "ace_1",
    "ace_2",
    "ace_5",
    "wace4",
    "cpu_seconds",
)


class EmptySnapshot(ValueError):
    pass


@dataclass
class CongestionSnapshot:
    # (edge label, layer, p_e) in edge-id order; only capacity-bearing layers
    entries: list[tuple[str, int, float]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "CongestionSnapshot":
        return cls([(f"E{k}", 1, float(p)) for k, p in enumerate(values)])


def ace(x: float, snap: CongestionSnapshot) -> float:
    """Mean congestion of the worst ``x`` percent of edges."""
    if not len(snap):
        raise EmptySnapshot("no capacity-bearing edges")
    if not 0 < x <= 100:
        raise ValueError("x must lie in (0, 100]")
    k = math.ceil(Fraction(str(x)) * len(snap) / 100)
    # stable sort keeps edge-id order among equal congestion values
    worst = sorted(snap.entries, key=lambda e: -e[2])[:k]
    return sum(p for _, _, p in worst) / k


def wace4(snap: CongestionSnapshot) -> float:
    return sum(ace(x, snap) for x in ACE_POINTS) / len(ACE_POINTS)


def _dist(a: Point, b: Point) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def rectilinear_mst_length(points: Sequence[Point]) -> int:
    pts = list(dict.fromkeys(points))
    if len(pts) < 2:
        return 0
    best = [_dist(pts[0], p) for p in pts]
    used = [False] * len(pts)
    used[0] = True
    total = 0
    for _ in range(len(pts) - 1):
        i = min((k for k in range(len(pts)) if not used[k]), key=lambda k: best[k])
        used[i] = True
        total += best[i]
        for k in range(len(pts)):
            if not used[k]:
                d = _dist(pts[i], pts[k])
                if d < best[k]:
                    best[k] = d
    return total


def _hanan(points: Sequence[Point]) -> list[Point]:
    xs = sorted({p[0] for p in points})
    ys = sorted({p[1] for p in points})
    pts = set(points)
    return [(x, y) for x in xs for y in ys if (x, y) not in pts]


def steiner_reference(points: Sequence[Point]) -> tuple[int, bool]:
    """Rectilinear Steiner tree length and whether it is exact.

    Exact for up to four distinct pins (best MST over the pins plus at most
    t-2 Hanan points); larger nets use iterated 1-Steiner starting from the
    rectilinear MST.
    """
    pts = list(dict.fromkeys(points))
    t = len(pts)
    if t <= 1:
        return 0, True
    if t <= 4:
        hanan = _hanan(pts)
        best = rectilinear_mst_length(pts)
        for k in range(1, t - 1):
            for extra in itertools.combinations(hanan, k):
                best = min(best, rectilinear_mst_length(pts + list(extra)))
        return best, True
    current = list(pts)
    length = rectilinear_mst_length(current)
    while True:
        gain, pick = 0, None
        for h in _hanan(current):
            cand = rectilinear_mst_length(current + [h])
            if length - cand > gain:
                gain, pick = length - cand, h
        if pick is None:
            return length, False
        current.append(pick)
        length -= gain


@dataclass
class NetResult:
    net_id: int
    name: str
    degree: int
    hpwl: int
    status: str
    length: int = 0
    vias: int = 0
    tree: Optional[object] = None  # router.SteinerTree
    pins: tuple[Point, ...] = ()


@dataclass
class RoutingResult:
    nets: list[NetResult]
    c_r: int
    c_u: int
    snapshot: CongestionSnapshot
    layers_used: int
    cpu_seconds: Optional[float] = None
    mode: str = ""

    @property
    def completion(self) -> float:
        total = self.c_r + self.c_u
        return 1.0 if total == 0 else self.c_r / total

    @property
    def total_length(self) -> int:
        return sum(n.length for n in self.nets if n.status == ROUTED)

    @property
    def total_vias(self) -> int:
        return sum(n.vias for n in self.nets if n.status == ROUTED)

    def ace_values(self) -> dict[float, float]:
        if not len(self.snapshot):
            return {x: 0.0 for x in ACE_POINTS}
        return {x: ace(x, self.snapshot) for x in ACE_POINTS}

    @property
    def wace4(self) -> float:
        vals = self.ace_values()
        return sum(vals.values()) / len(vals)

    def summary(self) -> dict:
        a = self.ace_values()
        return {
            "total_length": self.total_length,
            "total_vias": self.total_vias,
            "completion": self.completion,
            "layers_used": self.layers_used,
            "ace_0.5": a[0.5],
            "ace_1": a[1],
            "ace_2": a[2],
            "ace_5": a[5],
            "wace4": self.wace4,
            "cpu_seconds": self.cpu_seconds,
        }


def normalized_length(result: RoutingResult) -> tuple[dict[int, tuple[float, bool]], float]:
    """Per-net routed/Steiner ratio (with exactness flag) and their mean."""
    out = {}
    for n in result.nets:
        if n.status != ROUTED:
            continue
        ref, exact = steiner_reference(n.pins)
        if ref == 0:
            continue
        out[n.net_id] = (n.length / ref, exact)
    mean = sum(r for r, _ in out.values()) / len(out) if out else float("nan")
    return out, mean


def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def format_csv(result: RoutingResult) -> str:
    """Per-net table, a blank line, then the one-row summary block."""
    buf = io.StringIO()
    buf.write(",".join(CSV_NET_COLUMNS) + "\n")
    for n in sorted(result.nets, key=lambda n: n.net_id):
        buf.write(f"{n.net_id},{n.degree},{n.hpwl},{n.length},{n.vias},{n.status}\n")
    buf.write("\n")
    s = result.summary()
    buf.write(",".join(CSV_SUMMARY_COLUMNS) + "\n")
    buf.write(",".join(_fmt(s[c]) for c in CSV_SUMMARY_COLUMNS) + "\n")
    return buf.getvalue()


def parse_csv_summary(text: str) -> dict[str, str]:
    """Read back the summary block written by ``format_csv``."""
    lines = text.strip().splitlines()
    head = lines.index(",".join(CSV_SUMMARY_COLUMNS))
    return dict(zip(CSV_SUMMARY_COLUMNS, lines[head + 1].split(",")))
