from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import make_fp, mosaic
from hgr.floorplan import (
    DegenerateCross,
    NonMosaicFloorplan,
    Net,
    Pin,
    Rect,
    extract_junctions,
    hpwl,
    order_nets,
    validate_mosaic,
)
from hgr.testkit import wall_scan


def _net(i, pts):
    return Net(i, f"n{i}", tuple(Pin(i, 0, p) for p in pts))


def test_rect_rejects_empty():
    with pytest.raises(ValueError):
        Rect(0, 0, 0, 5)


def test_single_block_has_no_junctions():
    fp = make_fp((0, 0, 10, 10), [(0, 0, 10, 10)])
    assert validate_mosaic(fp).ok
    assert extract_junctions(fp) == []


def test_two_blocks_give_cut_endpoints(two_block):
    js = extract_junctions(two_block)
    assert [j.location for j in js] == [(100, 0), (100, 100)]
    assert all(len(j.arms) == 3 for j in js)


def test_overlap_is_reported_as_pair():
    fp = make_fp((0, 0, 10, 10), [(0, 0, 6, 10), (4, 0, 10, 10)])
    rep = validate_mosaic(fp)
    assert rep.overlaps == [(0, 1)]
    with pytest.raises(NonMosaicFloorplan):
        extract_junctions(fp)


def test_whitespace_is_rejected():
    fp = make_fp((0, 0, 10, 10), [(0, 0, 5, 10)])
    assert validate_mosaic(fp).coverage_gap == 50
    with pytest.raises(NonMosaicFloorplan):
        extract_junctions(fp)


def test_quadrants_form_a_cross():
    fp = make_fp((0, 0, 10, 10), [(0, 0, 5, 5), (5, 0, 10, 5), (0, 5, 5, 10), (5, 5, 10, 10)])
    assert validate_mosaic(fp).crosses == [(5, 5)]
    with pytest.raises(DegenerateCross):
        extract_junctions(fp)


def test_pin_outside_owner_is_reported():
    fp = make_fp((0, 0, 20, 10), [(0, 0, 10, 10), (10, 0, 20, 10)], [[(0, (15, 5)), (1, None)]])
    assert validate_mosaic(fp).pins_outside == [(0, 0)]


def test_ten_block_mosaic_matches_wall_scan():
    fp = mosaic(10, 42)
    js = extract_junctions(fp)
    assert len(js) == 18
    scan = wall_scan(fp)
    assert sorted((j.location, j.arms) for j in js) == sorted(scan.junctions)


@pytest.mark.parametrize(
    "pts, expected",
    [([(0, 0), (10, 0)], 10), ([(0, 0), (3, 4)], 7), ([(1, 1), (5, 2), (3, 9)], 12)],
)
def test_hpwl(pts, expected):
    assert hpwl(_net(0, pts)) == expected


def test_order_by_degree():
    a = _net(0, [(0, 0), (1, 0), (2, 0)])
    b = _net(1, [(0, 0), (1, 0)])
    assert [n.id for n in order_nets([a, b])] == [1, 0]


def test_order_by_hpwl_then_id():
    a = _net(0, [(0, 0), (12, 0)])
    b = _net(1, [(0, 0), (7, 0)])
    assert [n.id for n in order_nets([a, b])] == [1, 0]
    c = _net(2, [(0, 0), (5, 0)])
    d = _net(3, [(1, 0), (6, 0)])
    assert [n.id for n in order_nets([d, c])] == [2, 3]


def test_descending_order_reverses_keys():
    a = _net(0, [(0, 0), (1, 0), (2, 0)])
    b = _net(1, [(0, 0), (1, 0)])
    assert [n.id for n in order_nets([b, a], descending=True)] == [0, 1]


@given(st.integers(1, 60), st.integers(0, 10_000))
def test_generated_mosaics_have_2n_minus_2_junctions(n, seed):
    fp = mosaic(n, seed)
    assert validate_mosaic(fp).ok
    assert sum(b.outline.area for b in fp.blocks) == fp.die.area
    assert len(extract_junctions(fp)) == 2 * n - 2


@given(st.lists(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), min_size=2, max_size=5), min_size=1, max_size=8))
def test_order_nets_is_a_deterministic_permutation(pinsets):
    nets = [_net(i, p) for i, p in enumerate(pinsets)]
    out = order_nets(nets)
    assert sorted(n.id for n in out) == list(range(len(nets)))
    assert [n.id for n in order_nets(list(reversed(nets)))] == [n.id for n in out]
    keys = [(n.degree, hpwl(n), n.id) for n in out]
    assert keys == sorted(keys)
