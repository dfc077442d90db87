from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import make_fp, mosaic
from hgr.floorplan import Block, Floorplan, Net, Pin, Rect
from hgr.grid import (
    LEFT,
    TOP,
    bbox_edge_counts,
    build_grid_graph,
    compute_grid_capacities,
    grid_dimension,
)


@pytest.mark.parametrize("n, m", [(1, 1), (2, 2), (3, 2), (5, 3), (2254, 68)])
def test_grid_dimension(n, m):
    assert grid_dimension(n) == m


@pytest.mark.parametrize("m, v, e", [(1, 1, 0), (3, 9, 12), (68, 4624, 9112)])
def test_grid_counts(m, v, e):
    gg = build_grid_graph(m, Rect(0, 0, 10_000, 10_000))
    assert gg.num_vertices == v and gg.num_edges == e


def test_last_row_and_column_absorb_remainder():
    gg = build_grid_graph(3, Rect(0, 0, 10, 11))
    assert [b.rect.x_hi - b.rect.x_lo for b in gg.bins[:3]] == [3, 3, 4]
    assert [gg.bins[3 * r].rect.y_hi - gg.bins[3 * r].rect.y_lo for r in range(3)] == [3, 3, 5]


def test_border_points_go_to_lower_bin():
    gg = build_grid_graph(2, Rect(0, 0, 10, 10))
    assert gg.bin_of((5, 5)) == 0
    assert gg.bin_of((6, 5)) == 1
    assert gg.bin_of((5, 6)) == 2


def test_neighbours_and_sides():
    gg = build_grid_graph(3, Rect(0, 0, 9, 9))
    assert gg.neighbour(4, LEFT) == 3 and gg.neighbour(4, TOP) == 7
    assert gg.neighbour(0, LEFT) is None


def _net(i, pts):
    return Net(i, f"n{i}", tuple(Pin(i, 0, p) for p in pts))


def test_die_covering_net_counts_once_everywhere():
    gg = build_grid_graph(3, Rect(0, 0, 90, 90))
    assert bbox_edge_counts(gg, [_net(0, [(0, 0), (90, 90)])]).tolist() == [1] * 12


def test_net_inside_one_bin_counts_nothing():
    gg = build_grid_graph(3, Rect(0, 0, 90, 90))
    assert bbox_edge_counts(gg, [_net(0, [(35, 35), (50, 50)])]).sum() == 0


def _brute_counts(gg, nets):
    out = []
    for e in gg.edges:
        (x0, y0), (x1, y1) = e.boundary
        c = 0
        for n in nets:
            xs = [p.location[0] for p in n.pins]
            ys = [p.location[1] for p in n.pins]
            if min(xs) <= x1 and x0 <= max(xs) and min(ys) <= y1 and y0 <= max(ys):
                c += 1
        out.append(c)
    return out


def test_twenty_net_counts_match_scan():
    fp = mosaic(12, 7, k=20)
    gg = build_grid_graph(grid_dimension(fp.n), fp.die, 8, [3, 4, 5, 6, 7, 8])
    assert bbox_edge_counts(gg, fp.nets).tolist() == _brute_counts(gg, fp.nets)


@given(st.integers(1, 80), st.integers(0, 1000), st.integers(1, 40))
def test_counts_depend_only_on_n_and_match_scan(n, seed, k):
    fp = mosaic(n, seed, k=k if n > 1 else 0)
    m = grid_dimension(n)
    gg = build_grid_graph(m, fp.die, 8, [3, 4])
    assert gg.num_vertices == m * m and gg.num_edges == 2 * m * (m - 1)
    assert sum(b.rect.area for b in gg.bins) == fp.die.area
    assert bbox_edge_counts(gg, fp.nets).tolist() == _brute_counts(gg, fp.nets)
    # order independence
    assert bbox_edge_counts(gg, list(reversed(fp.nets))).tolist() == _brute_counts(gg, fp.nets)


def test_replicate_and_divide_modes():
    fp = mosaic(5, 1, k=10)
    a = build_grid_graph(3, fp.die, 8, [3, 4, 5, 6, 7, 8])
    b = build_grid_graph(3, fp.die, 8, [3, 4, 5, 6, 7, 8])
    base = compute_grid_capacities(a, fp.nets, fp, "replicate")
    compute_grid_capacities(b, fp.nets, fp, "divide")
    for e, sa, sb, R in zip(a.edges, a.states, b.states, base):
        usable = [L for L in a.layers_for(e.orientation) if L > a.floor[e.id]]
        assert all(sa.capacity[L] == R for L in usable)
        assert sum(sb.capacity[L] for L in usable) == pytest.approx(R)


def test_reserved_blocks_close_low_grid_layers():
    die = Rect(0, 0, 100, 100)
    blocks = (Block(0, "a", Rect(0, 0, 50, 100), reserved_up_to=4), Block(1, "b", Rect(50, 0, 100, 100)))
    net = Net(0, "n", (Pin(0, 0, (10, 10)), Pin(0, 1, (90, 90))))
    fp = Floorplan(die, blocks, (net,))
    gg = build_grid_graph(2, die, 8, [3, 4, 5, 6, 7, 8])
    compute_grid_capacities(gg, fp.nets, fp)
    # edge order: bin0 right, bin0 top, bin1 top, bin2 right; only bin1's top avoids block a
    assert gg.floor == [4, 4, 2, 4]
    v = gg.side_edge[(0, TOP)]
    assert gg.states[v].capacity[4] == 0 and gg.states[v].capacity[6] == 1
