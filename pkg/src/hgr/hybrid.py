"""Per-net hybrid routing graph: junction graph + bin grid + the net's pins.

Vertex numbering inside an ``HGSRG``: junctions first (``0..J-1``), then
bins (``J..J+B-1``), then the net's pins in net order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .floorplan import Net, Point
from .grid import GridGraph
from .staircase import JunctionGraph

PIN_JUNCTION = "pin-junction"
PIN_BIN = "pin-bin"
JUNCTION_BIN = "junction-bin"


class IsolatedPin(Exception):
    pass


@dataclass(frozen=True)
class ConnectorEdge:
    kind: str
    endpoints: tuple[int, int]  # hGSRG vertex ids, entity first
    length: int


def _manhattan(a: Point, b: Point) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


class HybridBase:
    """Connector data shared by every net's hGSRG (computed once)."""

    def __init__(self, jg: JunctionGraph, gg: GridGraph):
        self.jg = jg
        self.gg = gg
        self.J = jg.num_vertices
        self.B = gg.num_vertices

    @cached_property
    def junction_bins(self) -> list[int]:
        return [self.gg.bin_of(j.location) for j in self.jg.junctions]

    @cached_property
    def junction_bin_edges(self) -> tuple[ConnectorEdge, ...]:
        out = []
        for j, b in zip(self.jg.junctions, self.junction_bins):
            out.append(ConnectorEdge(JUNCTION_BIN, (j.id, self.J + b), _manhattan(j.location, self.gg.bins[b].center)))
        return tuple(out)

    @cached_property
    def bin_junctions(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.B)]
        for j, b in enumerate(self.junction_bins):
            out[b].append(j)
        return out


def pin_junction_edges(net: Net, jg: JunctionGraph, pin_offset: int = 0) -> list[ConnectorEdge]:
    """Connect each pin to every junction on its owner block's boundary."""
    out = []
    for k, pin in enumerate(net.pins):
        js = jg.block_junctions.get(pin.block_id, [])
        if not js:
            raise IsolatedPin(f"net {net.name}: block {pin.block_id} has no boundary junction")
        for j in js:
            loc = jg.junctions[j].location
            out.append(ConnectorEdge(PIN_JUNCTION, (pin_offset + k, j), _manhattan(pin.location, loc)))
    return out


def vertical_connector_edges(net: Net, jg: JunctionGraph, gg: GridGraph, base: HybridBase | None = None) -> list[ConnectorEdge]:
    """Pin-bin edges for the net's pins followed by every junction-bin edge."""
    base = base or HybridBase(jg, gg)
    J, B = base.J, base.B
    out = []
    for k, pin in enumerate(net.pins):
        b = gg.bin_of(pin.location)
        out.append(ConnectorEdge(PIN_BIN, (J + B + k, J + b), _manhattan(pin.location, gg.bins[b].center)))
    out.extend(base.junction_bin_edges)
    return out


@dataclass
class HGSRG:
    net: Net
    base: HybridBase
    pin_junction: list[ConnectorEdge]
    pin_bin: list[ConnectorEdge]

    @property
    def jg(self) -> JunctionGraph:
        return self.base.jg

    @property
    def gg(self) -> GridGraph:
        return self.base.gg

    def pin_vertex(self, k: int) -> int:
        return self.base.J + self.base.B + k

    def bin_vertex(self, b: int) -> int:
        return self.base.J + b

    @property
    def connectors(self) -> list[ConnectorEdge]:
        return self.pin_junction + self.pin_bin + list(self.base.junction_bin_edges)

    @property
    def num_vertices(self) -> int:
        return self.base.J + self.base.B + self.net.degree

    @property
    def num_edges(self) -> int:
        return self.jg.num_edges + self.gg.num_edges + len(self.connectors)

    def pin_bins(self) -> list[int]:
        return [e.endpoints[1] - self.base.J for e in self.pin_bin]


def build_hgsrg(net: Net, jg: JunctionGraph, gg: GridGraph, base: HybridBase | None = None) -> HGSRG:
    base = base or HybridBase(jg, gg)
    offset = base.J + base.B
    pj = pin_junction_edges(net, jg, pin_offset=offset)
    pb = [e for e in vertical_connector_edges(net, jg, gg, base) if e.kind == PIN_BIN]
    return HGSRG(net, base, pj, pb)
