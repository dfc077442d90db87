from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from hgr.docio import build_floorplan, generate_mosaic
from hgr.floorplan import Block, Floorplan, Net, Pin, Rect

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


TOY = """HGR-FLOORPLAN 1
DIE 0 0 300 100
BLOCK a 0 0 100 100
BLOCK b 100 0 200 100
BLOCK c 200 0 300 100
""" + "".join(f"NET n{i} a@100,0 c@200,0\n" for i in range(8))

# only the bottom wall between the outer blocks carries wires: six M1 tracks
TOY_CAPS = "S0 1 6\nS1 1 0\nS2 2 0\nS3 2 0\n"


def make_fp(die, rects, nets=()):
    """Floorplan from raw rectangles; nets are lists of (block index, point or None)."""
    blocks = tuple(Block(i, f"b{i}", Rect(*r)) for i, r in enumerate(rects))
    built = []
    for k, pins in enumerate(nets):
        ps = tuple(
            Pin(k, b, loc if loc is not None else blocks[b].outline.center) for b, loc in pins
        )
        built.append(Net(k, f"n{k}", ps))
    return Floorplan(Rect(*die), blocks, tuple(built))


def mosaic(n: int, seed: int, k: int = 0, **kw) -> Floorplan:
    return build_floorplan(generate_mosaic(n, seed, k, **kw))


@pytest.fixture
def two_block():
    """Die 0..200 x 0..100 split by a vertical cut at x=100, one net across it."""
    return make_fp((0, 0, 200, 100), [(0, 0, 100, 100), (100, 0, 200, 100)], [[(0, None), (1, None)]])


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance verdicts, one line per criterion."""
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(LINES):
            terminalreporter.write_line(LINES[key])
