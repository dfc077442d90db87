"""Line-oriented floorplan documents, random mosaic generation and a bookshelf converter.

Document format (one record per line, ``#`` starts a comment)::

    HGR-FLOORPLAN 1
    DIE 0 0 4000 2000
    BLOCK a 0 0 2000 2000 soft 2
    BLOCK b 2000 0 4000 2000 hard 2
    NET n0 a b@3000,500:1

A pin reference is ``block[@x,y][:layer]``; without a location the pin sits
at the block centre, without a layer it is on M1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .floorplan import HARD, SOFT, Block, Floorplan, Net, Pin, Point, Rect, validate_mosaic

SCHEMA = "HGR-FLOORPLAN"
VERSION = 1
_KINDS = {"soft": SOFT, "hard": HARD}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}
_PINREF = re.compile(r"^([^@:\s]+)(?:@(-?\d+),(-?\d+))?(?::(\d+))?$")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class ValidationError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid floorplan:\n  " + "\n  ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class BlockSpec:
    name: str
    rect: tuple[int, int, int, int]
    kind: str = SOFT
    reserved_up_to: int = 2


@dataclass(frozen=True)
class PinRef:
    block: str
    location: Optional[Point] = None
    layer: Optional[int] = None

    def __str__(self) -> str:
        s = self.block
        if self.location is not None:
            s += f"@{self.location[0]},{self.location[1]}"
        if self.layer is not None:
            s += f":{self.layer}"
        return s


@dataclass(frozen=True)
class NetSpec:
    name: str
    pins: tuple[PinRef, ...]


@dataclass
class FloorplanDocument:
    die: tuple[int, int, int, int]
    blocks: list[BlockSpec] = field(default_factory=list)
    nets: list[NetSpec] = field(default_factory=list)
    version: int = VERSION


def _ints(tokens: list[str], cols: list[int], lineno: int) -> list[int]:
    out = []
    for tok, col in zip(tokens, cols):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None
    return out


def _tokens(line: str) -> tuple[list[str], list[int]]:
    toks, cols = [], []
    for m in re.finditer(r"\S+", line):
        toks.append(m.group())
        cols.append(m.start() + 1)
    return toks, cols


def parse_document(text: str) -> FloorplanDocument:
    doc: Optional[FloorplanDocument] = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks, cols = _tokens(line)
        if not toks:
            continue
        head = toks[0]
        if not seen_header:
            if head != SCHEMA or len(toks) != 2:
                raise ParseError(f"expected '{SCHEMA} <version>' header", lineno, cols[0])
            (ver,) = _ints(toks[1:], cols[1:], lineno)
            if ver != VERSION:
                raise ParseError(f"unsupported schema version {ver}", lineno, cols[1])
            seen_header = True
            continue
        if head == "DIE":
            if len(toks) != 5:
                raise ParseError("DIE takes four coordinates", lineno, cols[0])
            if doc is not None:
                raise ParseError("duplicate DIE record", lineno, cols[0])
            doc = FloorplanDocument(tuple(_ints(toks[1:], cols[1:], lineno)))
            continue
        if doc is None:
            raise ParseError("DIE must precede BLOCK and NET records", lineno, cols[0])
        if head == "BLOCK":
            if len(toks) not in (6, 7, 8):
                raise ParseError("BLOCK takes name, four coordinates, [kind], [reserved]", lineno, cols[0])
            rect = tuple(_ints(toks[2:6], cols[2:6], lineno))
            kind = SOFT
            if len(toks) > 6:
                if toks[6] not in _KINDS:
                    raise ParseError(f"unknown block kind {toks[6]!r}", lineno, cols[6])
                kind = _KINDS[toks[6]]
            reserved = _ints(toks[7:8], cols[7:8], lineno)[0] if len(toks) > 7 else 2
            doc.blocks.append(BlockSpec(toks[1], rect, kind, reserved))
        elif head == "NET":
            if len(toks) < 2:
                raise ParseError("NET needs a name", lineno, cols[0])
            pins = []
            for tok, col in zip(toks[2:], cols[2:]):
                m = _PINREF.match(tok)
                if not m:
                    raise ParseError(f"bad pin reference {tok!r}", lineno, col)
                loc = (int(m.group(2)), int(m.group(3))) if m.group(2) is not None else None
                layer = int(m.group(4)) if m.group(4) is not None else None
                pins.append(PinRef(m.group(1), loc, layer))
            doc.nets.append(NetSpec(toks[1], tuple(pins)))
        else:
            raise ParseError(f"unknown record {head!r}", lineno, cols[0])
    if not seen_header:
        raise ParseError(f"missing '{SCHEMA}' header", 1, 1)
    if doc is None:
        raise ParseError("missing DIE record", 1, 1)
    return doc


def serialize_document(doc: FloorplanDocument) -> str:
    lines = [f"{SCHEMA} {doc.version}", "DIE " + " ".join(map(str, doc.die))]
    for b in doc.blocks:
        lines.append(f"BLOCK {b.name} {' '.join(map(str, b.rect))} {_KIND_NAMES[b.kind]} {b.reserved_up_to}")
    for n in doc.nets:
        lines.append(" ".join(["NET", n.name] + [str(p) for p in n.pins]))
    return "\n".join(lines) + "\n"


def build_floorplan(doc: FloorplanDocument, max_layers: int = 8) -> Floorplan:
    """Validate a document and turn it into a Floorplan; all violations are reported together."""
    errs: list[str] = []
    try:
        die = Rect(*doc.die)
    except ValueError as exc:
        raise ValidationError([f"die: {exc}"]) from None
    blocks: list[Block] = []
    index: dict[str, int] = {}
    for spec in doc.blocks:
        if spec.name in index:
            errs.append(f"block {spec.name}: duplicate name")
            continue
        try:
            rect = Rect(*spec.rect)
        except ValueError as exc:
            errs.append(f"block {spec.name}: {exc}")
            continue
        if not 2 <= spec.reserved_up_to <= max_layers:
            errs.append(f"block {spec.name}: reserved_up_to {spec.reserved_up_to} outside 2..{max_layers}")
        index[spec.name] = len(blocks)
        blocks.append(Block(len(blocks), spec.name, rect, spec.kind, spec.reserved_up_to))
    nets: list[Net] = []
    names: set[str] = set()
    for spec in doc.nets:
        if spec.name in names:
            errs.append(f"net {spec.name}: duplicate name")
            continue
        names.add(spec.name)
        pins: dict[tuple[int, Point], Pin] = {}
        ok = True
        for ref in spec.pins:
            if ref.block not in index:
                errs.append(f"net {spec.name}: unknown block {ref.block!r}")
                ok = False
                continue
            blk = blocks[index[ref.block]]
            loc = ref.location if ref.location is not None else blk.outline.center
            if not blk.outline.contains(loc):
                errs.append(f"net {spec.name}: pin {ref} lies outside block {blk.name}")
                ok = False
            layer = ref.layer if ref.layer is not None else 1
            if layer not in (1, 2):
                errs.append(f"net {spec.name}: pin {ref} must sit on M1 or M2")
                ok = False
            pins.setdefault((blk.id, loc), Pin(len(nets), blk.id, loc, layer))
        if ok and len(pins) < 2:
            errs.append(f"net {spec.name}: fewer than two distinct pins")
            ok = False
        if ok:
            nets.append(Net(len(nets), spec.name, tuple(pins.values())))
    if not errs:
        fp = Floorplan(die, tuple(blocks), tuple(nets))
        report = validate_mosaic(fp)
        errs.extend(report.violations())
        if not errs:
            return fp
    raise ValidationError(errs)


def parse_floorplan(text: str, max_layers: int = 8) -> Floorplan:
    return build_floorplan(parse_document(text), max_layers)


def load_floorplan(path: Path | str, max_layers: int = 8) -> Floorplan:
    return parse_floorplan(Path(path).read_text(), max_layers)


# ---------------------------------------------------------------------------
# random instances

BLOCK_PITCH = 2000
_MIN_SIDE = 200


def _slice(rect, count, rng, used_x, used_y, out):
    x0, y0, x1, y1 = rect
    if count == 1:
        out.append(rect)
        return
    c1 = int(rng.integers(max(1, count // 3), count - max(1, count // 3) + 1)) if count > 2 else 1
    c2 = count - c1
    w, h = x1 - x0, y1 - y0
    vertical_ok = w >= count * _MIN_SIDE
    horizontal_ok = h >= count * _MIN_SIDE
    if vertical_ok and horizontal_ok:
        vertical = bool(rng.random() < w / (w + h))
    else:
        vertical = vertical_ok
    lo, hi, used = (x0, x1, used_x) if vertical else (y0, y1, used_y)
    span = hi - lo
    a, b = lo + c1 * _MIN_SIDE, hi - c2 * _MIN_SIDE
    ideal = lo + span * c1 / count
    cut = int(min(b, max(a, round(ideal + rng.normal(0, 0.08 * span)))))
    # perturb until the coordinate is unused, so no two cuts line up into a cross
    step = 0
    while cut in used:
        step += 1
        if step > 2 * span:
            raise RuntimeError("no free cut coordinate")
        cand = cut + (step if step % 2 else -step)
        if a <= cand <= b and cand not in used:
            cut = cand
            break
    used.add(cut)
    if vertical:
        _slice((x0, y0, cut, y1), c1, rng, used_x, used_y, out)
        _slice((cut, y0, x1, y1), c2, rng, used_x, used_y, out)
    else:
        _slice((x0, y0, x1, cut), c1, rng, used_x, used_y, out)
        _slice((x0, cut, x1, y1), c2, rng, used_x, used_y, out)


def generate_mosaic(
    n: int,
    seed: int,
    k: int = 0,
    mean_extra_degree: float = 2.3,
    max_degree: int = 12,
    locality: int = 10,
) -> FloorplanDocument:
    """Random ``n``-block guillotine mosaic with ``k`` locality-biased nets.

    Net degree is ``2 + Poisson(mean_extra_degree)`` capped by ``max_degree``
    and ``n``; pins sit at block centres. The other pins of a net are drawn
    from the ``locality * degree`` blocks nearest to a random first block,
    or from all blocks when ``locality`` is 0. Cut coordinates are unique per
    orientation, which rules out 4-way crossings.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    side = BLOCK_PITCH * math.isqrt(n - 1) + BLOCK_PITCH if n > 1 else BLOCK_PITCH
    rects: list[tuple[int, int, int, int]] = []
    _slice((0, 0, side, side), n, rng, {0, side}, {0, side}, rects)
    blocks = [BlockSpec(f"b{i}", r, HARD if rng.random() < 0.2 else SOFT, 2) for i, r in enumerate(rects)]
    doc = FloorplanDocument((0, 0, side, side), blocks)
    if n < 2:
        return doc
    centers = np.array([[(r[0] + r[2]) / 2, (r[1] + r[3]) / 2] for r in rects])
    for j in range(k):
        deg = int(min(max_degree, n, 2 + rng.poisson(mean_extra_degree)))
        first = int(rng.integers(n))
        d = np.abs(centers - centers[first]).sum(axis=1)
        order = np.argsort(d, kind="stable")
        span = n if locality <= 0 else locality * deg
        pool = [int(i) for i in order[1 : 1 + span]]
        chosen = [first] + [int(i) for i in rng.choice(pool, size=deg - 1, replace=False)]
        doc.nets.append(NetSpec(f"n{j}", tuple(PinRef(f"b{i}") for i in chosen)))
    return doc


# ---------------------------------------------------------------------------
# bookshelf-style input (best effort)


def convert_bookshelf(blocks_text: str, nets_text: str, pl_text: str) -> FloorplanDocument:
    """Convert ``.blocks``/``.nets``/``.pl`` text into a document.

    Hard blocks take their outline from the vertex list; soft blocks become
    squares of the stated area. The die is the bounding box of all blocks.
    The result only validates if the placement is a mosaic.
    """
    dims: dict[str, tuple[int, int, str]] = {}
    for raw in blocks_text.splitlines():
        toks = raw.replace("(", " ").replace(")", " ").replace(",", " ").split()
        if len(toks) < 2 or toks[0].startswith(("#", "UCSC", "Num")):
            continue
        name, kind = toks[0], toks[1].lower()
        if kind.startswith("hardrectilinear"):
            coords = list(map(float, toks[3:]))
            xs, ys = coords[0::2], coords[1::2]
            dims[name] = (round(max(xs) - min(xs)), round(max(ys) - min(ys)), HARD)
        elif kind.startswith("softrectangular"):
            s = round(math.sqrt(float(toks[2])))
            dims[name] = (s, s, SOFT)
    place: dict[str, tuple[int, int]] = {}
    for raw in pl_text.splitlines():
        toks = raw.split()
        if len(toks) >= 3 and toks[0] in dims:
            place[toks[0]] = (round(float(toks[1])), round(float(toks[2])))
    blocks = []
    for name, (w, h, kind) in dims.items():
        if name in place:
            x, y = place[name]
            blocks.append(BlockSpec(name, (x, y, x + w, y + h), kind, 2))
    if not blocks:
        raise ValueError("no placed blocks found")
    die = (
        min(b.rect[0] for b in blocks),
        min(b.rect[1] for b in blocks),
        max(b.rect[2] for b in blocks),
        max(b.rect[3] for b in blocks),
    )
    doc = FloorplanDocument(die, blocks)
    known = {b.name for b in blocks}
    current: list[str] = []
    remaining = 0
    for raw in nets_text.splitlines():
        toks = raw.replace(":", " : ").split()
        if not toks or toks[0].startswith(("#", "UCLA", "Num")):
            continue
        if toks[0] == "NetDegree":
            remaining = int(toks[2])
            current = []
            continue
        if remaining:
            if toks[0] in known and toks[0] not in current:
                current.append(toks[0])
            remaining -= 1
            if remaining == 0 and len(current) >= 2:
                doc.nets.append(NetSpec(f"n{len(doc.nets)}", tuple(PinRef(b) for b in current)))
    return doc
