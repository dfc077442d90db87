from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from hgr.metrics import (
    CSV_NET_COLUMNS,
    CSV_SUMMARY_COLUMNS,
    ROUTED,
    UNROUTED,
    CongestionSnapshot,
    EmptySnapshot,
    NetResult,
    RoutingResult,
    ace,
    format_csv,
    normalized_length,
    parse_csv_summary,
    rectilinear_mst_length,
    steiner_reference,
    wace4,
)
from hgr.testkit import exhaustive_rsmt


def _sorted_top_mean(values, x):
    k = math.ceil(x * len(values) / 100 - 1e-12)
    top = sorted(values, reverse=True)[:k]
    return sum(top) / k


def test_uniform_ace():
    snap = CongestionSnapshot.from_values([0.5] * 37)
    assert all(ace(x, snap) == 0.5 for x in (0.5, 1, 2, 5, 50, 100))


def test_top_one_of_four():
    assert ace(25, CongestionSnapshot.from_values([1.0, 0.0, 0.0, 0.0])) == 1.0


def test_two_percent_of_two_hundred():
    rng = random.Random(7)
    vals = [rng.random() for _ in range(200)]
    assert ace(2, CongestionSnapshot.from_values(vals)) == pytest.approx(sum(sorted(vals)[-4:]) / 4)


def test_wace4_examples():
    assert wace4(CongestionSnapshot.from_values([0.3] * 10)) == pytest.approx(0.3)
    assert wace4(CongestionSnapshot.from_values([0.7])) == pytest.approx(0.7)


def test_wace4_matches_sort_oracle_on_thousand_values():
    rng = random.Random(11)
    vals = [rng.random() for _ in range(1000)]
    expect = sum(_sorted_top_mean(vals, x) for x in (0.5, 1, 2, 5)) / 4
    assert wace4(CongestionSnapshot.from_values(vals)) == pytest.approx(expect, rel=1e-12)


def test_empty_snapshot_and_bad_percent():
    with pytest.raises(EmptySnapshot):
        ace(1, CongestionSnapshot())
    with pytest.raises(EmptySnapshot):
        wace4(CongestionSnapshot())
    with pytest.raises(ValueError):
        ace(0, CongestionSnapshot.from_values([0.1]))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=300), st.floats(0.1, 100), st.floats(0.1, 100))
def test_ace_is_monotone_and_bounded(vals, x1, x2):
    snap = CongestionSnapshot.from_values(vals)
    lo, hi = sorted((x1, x2))
    assert ace(lo, snap) >= ace(hi, snap) - 1e-12
    assert 0.0 <= wace4(snap) <= 1.0


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), min_size=1, max_size=4))
@settings(max_examples=150)
def test_steiner_reference_matches_rsmt_oracle(pins):
    length, exact = steiner_reference(pins)
    assert exact and length == exhaustive_rsmt(pins)


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), min_size=5, max_size=9))
@settings(max_examples=50)
def test_large_net_reference_is_between_bounds(pins):
    length, exact = steiner_reference(pins)
    assert not exact or len(set(pins)) <= 4
    mst = rectilinear_mst_length(pins)
    # Hwang: RSMT >= 2/3 of the rectilinear MST
    assert 2 * mst <= 3 * length <= 3 * mst


def _result(nets, snapshot=None, layers=2):
    c_r = sum(n.status == ROUTED for n in nets)
    return RoutingResult(nets, c_r, len(nets) - c_r, snapshot or CongestionSnapshot.from_values([0.25, 0.5]), layers)


def test_normalized_length_examples():
    two = NetResult(0, "a", 2, 7, ROUTED, length=7, pins=((0, 0), (3, 4)))
    square = NetResult(1, "b", 4, 2, ROUTED, length=4, pins=((0, 0), (1, 0), (0, 1), (1, 1)))
    lost = NetResult(2, "c", 2, 5, UNROUTED, pins=((0, 0), (5, 0)))
    per, mean = normalized_length(_result([two, square, lost]))
    assert per[0] == (1.0, True)
    assert per[1][0] == pytest.approx(4 / 3) and per[1][1]
    assert 2 not in per
    assert mean == pytest.approx((1 + 4 / 3) / 2)


def test_csv_layout_and_round_trip():
    nets = [
        NetResult(1, "b", 3, 10, UNROUTED),
        NetResult(0, "a", 2, 7, ROUTED, length=9, vias=2),
    ]
    text = format_csv(_result(nets))
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_NET_COLUMNS)
    assert lines[1] == "0,2,7,9,2,routed"
    assert lines[2] == "1,3,10,0,0,unrouted"
    assert lines[3] == ""
    assert lines[4] == ",".join(CSV_SUMMARY_COLUMNS)
    summary = parse_csv_summary(text)
    assert summary["total_length"] == "9"
    assert summary["completion"] == "0.500000"
    assert summary["cpu_seconds"] == "NA"
    assert summary["ace_0.5"] == "0.500000"


def test_empty_result_reports_full_completion():
    res = RoutingResult([], 0, 0, CongestionSnapshot(), 0)
    assert res.completion == 1.0
    assert parse_csv_summary(format_csv(res))["wace4"] == "0.000000"
