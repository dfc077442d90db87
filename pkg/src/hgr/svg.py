"""Static SVG overlays: per-layer congestion heatmaps and per-net route polylines."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .metrics import ROUTED, RoutingResult
from .router import RoutingState

_CANVAS = 800
_LAYER_COLOURS = ["#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _heat(p: float) -> str:
    """Green (idle) through yellow to red (full)."""
    p = max(0.0, min(1.0, p))
    if p < 0.5:
        r, g = int(510 * p), 200
    else:
        r, g = 255, int(200 * (1 - p) * 2)
    return f"#{r:02x}{g:02x}30"


class _Canvas:
    def __init__(self, die):
        self.die = die
        self.scale = _CANVAS / max(die.width, die.height)
        self.items: list[str] = []

    def xy(self, p) -> tuple[float, float]:
        # SVG y grows downwards
        return (
            round((p[0] - self.die.x_lo) * self.scale, 2),
            round((self.die.y_hi - p[1]) * self.scale, 2),
        )

    def line(self, p, q, colour: str, width: float = 2.0, title: str = "") -> None:
        (x0, y0), (x1, y1) = self.xy(p), self.xy(q)
        tip = f"<title>{escape(title)}</title>" if title else ""
        self.items.append(
            f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="{colour}" stroke-width="{width}">{tip}</line>'
        )

    def rect(self, r, fill: str = "none", stroke: str = "#999999") -> None:
        x0, y1 = self.xy((r.x_lo, r.y_lo))
        x1, y0 = self.xy((r.x_hi, r.y_hi))
        self.items.append(
            f'<rect x="{x0}" y="{y0}" width="{round(x1 - x0, 2)}" height="{round(y1 - y0, 2)}" fill="{fill}" stroke="{stroke}" stroke-width="0.5"/>'
        )

    def render(self, title: str) -> str:
        w, h = self.xy((self.die.x_hi, self.die.y_lo))
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
            f"<title>{escape(title)}</title>\n{body}\n</svg>\n"
        )


def congestion_svg(state: RoutingState, layer: int) -> str:
    c = _Canvas(state.fp.die)
    for blk in state.fp.blocks:
        c.rect(blk.outline)
    for seg, st in zip(state.jg.segments, state.jg.states):
        if st.capacity[layer] > 0:
            p = st.demand[layer] / st.capacity[layer]
            c.line(seg.p0, seg.p1, _heat(p), 3.0, f"S{seg.id} p={p:.3f}")
    for e, st in zip(state.gg.edges, state.gg.states):
        if st.capacity[layer] > 0:
            p = st.demand[layer] / st.capacity[layer]
            c.line(e.boundary[0], e.boundary[1], _heat(p), 3.0, f"G{e.id} p={p:.3f}")
    return c.render(f"congestion on M{layer}")


def routes_svg(state: RoutingState, result: RoutingResult) -> str:
    c = _Canvas(state.fp.die)
    for blk in state.fp.blocks:
        c.rect(blk.outline)
    for net in sorted(result.nets, key=lambda n: n.net_id):
        if net.status != ROUTED or net.tree is None:
            continue
        c.items.append(f'<g id="net-{escape(net.name)}">')
        for s in net.tree.segments:
            c.line(s.p0, s.p1, _LAYER_COLOURS[s.layer % len(_LAYER_COLOURS)], 1.5, f"{net.name} M{s.layer}")
        c.items.append("</g>")
    return c.render("routes")


def write_svgs(directory: Path | str, state: RoutingState, result: RoutingResult) -> list[Path]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for L in range(1, state.config.max_layers + 1):
        path = out_dir / f"congestion_M{L}.svg"
        path.write_text(congestion_svg(state, L))
        written.append(path)
    path = out_dir / "routes.svg"
    path.write_text(routes_svg(state, result))
    written.append(path)
    return written
