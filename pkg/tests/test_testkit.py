from __future__ import annotations

import random

import pytest

from conftest import make_fp
from hgr.testkit import TinyGraph, TooManyPins, exhaustive_rsmt, exhaustive_shortest_path, random_tiny_graph, wall_scan


def test_same_vertex_costs_nothing():
    g = TinyGraph(3)
    g.add_edge(0, 1, 4.0, 1)
    assert exhaustive_shortest_path(g, 1, 1) == (0.0, [(1,)])


def test_triangle_prefers_two_hops():
    g = TinyGraph(3)
    g.add_edge(0, 1, 1.0, 1)
    g.add_edge(1, 2, 1.0, 1)
    g.add_edge(0, 2, 3.0, 1)
    assert exhaustive_shortest_path(g, 0, 2) == (2.0, [(0, 1, 2)])


def test_layer_change_is_charged():
    g = TinyGraph(2, src_layer=1, dst_layer=1, via_cost=5.0)
    g.add_arc(0, 1, [(2, 2, 0, 1.0)])
    # one change onto layer 2 and one back to the sink layer
    assert exhaustive_shortest_path(g, 0, 1)[0] == 11.0


def test_unreachable():
    g = TinyGraph(2)
    assert exhaustive_shortest_path(g, 0, 1) == (float("inf"), [])


def test_tiny_graph_size_limit():
    with pytest.raises(ValueError):
        TinyGraph(13)
    g = random_tiny_graph(random.Random(0), 12)
    assert g.n == 12


def test_rsmt_examples():
    assert exhaustive_rsmt([(0, 0), (4, 0), (2, 3)]) == 7
    assert exhaustive_rsmt([(0, 0), (1, 0), (0, 1), (1, 1)]) == 3
    assert exhaustive_rsmt([(0, 0), (3, 4)]) == 7
    assert exhaustive_rsmt([(2, 2)]) == 0


def test_rsmt_pin_limit():
    with pytest.raises(TooManyPins):
        exhaustive_rsmt([(i, i) for i in range(5)])


def test_wall_scan_two_blocks():
    fp = make_fp((0, 0, 200, 100), [(0, 0, 100, 100), (100, 0, 200, 100)])
    scan = wall_scan(fp)
    assert [p for p, _ in scan.junctions] == [(100, 0), (100, 100)]
    assert scan.segments == [((100, 0), (100, 100))]


def test_wall_scan_single_block_is_empty():
    scan = wall_scan(make_fp((0, 0, 100, 100), [(0, 0, 100, 100)]))
    assert scan.junctions == [] and scan.segments == []
