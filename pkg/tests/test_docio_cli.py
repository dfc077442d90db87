from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import TOY, TOY_CAPS
from hgr.cli import main
from hgr.docio import (
    FloorplanDocument,
    ParseError,
    ValidationError,
    build_floorplan,
    convert_bookshelf,
    generate_mosaic,
    parse_document,
    parse_floorplan,
    serialize_document,
)
from hgr.metrics import parse_csv_summary
from hgr.staircase import build_junction_graph

MINIMAL = """HGR-FLOORPLAN 1
# two blocks side by side
DIE 0 0 200 100
BLOCK a 0 0 100 100
BLOCK b 100 0 200 100 hard 4
NET n0 a b@150,20:2
"""

def test_minimal_document():
    fp = parse_floorplan(MINIMAL)
    assert len(fp.blocks) == 2 and len(fp.nets) == 1
    a, b = fp.nets[0].pins
    assert a.location == (50, 50) and a.layer == 1
    assert b.location == (150, 20) and b.layer == 2
    assert fp.blocks[1].reserved_up_to == 4


def test_unknown_block_names_the_net():
    with pytest.raises(ValidationError) as exc:
        parse_floorplan(MINIMAL.replace("NET n0 a b", "NET n0 a zz"))
    assert "n0" in str(exc.value) and "zz" in str(exc.value)


def test_all_violations_are_reported():
    bad = MINIMAL.replace("hard 4", "hard 9") + "NET n1 a a\n"
    with pytest.raises(ValidationError) as exc:
        parse_floorplan(bad)
    assert len(exc.value.violations) >= 2


def test_pin_outside_block():
    with pytest.raises(ValidationError):
        parse_floorplan(MINIMAL.replace("b@150,20", "b@50,20"))


def test_overlap_is_rejected():
    with pytest.raises(ValidationError):
        parse_floorplan(MINIMAL.replace("BLOCK b 100 0", "BLOCK b 90 0"))


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_document(MINIMAL.replace("BLOCK a 0 0 100 100", "BLOCK a 0 x 100 100"))
    assert exc.value.line == 4 and exc.value.column == 11


def test_missing_header():
    with pytest.raises(ParseError) as exc:
        parse_document("DIE 0 0 1 1\n")
    assert exc.value.line == 1


@given(st.integers(1, 30), st.integers(0, 10_000), st.integers(0, 40))
@settings(max_examples=30)
def test_serialize_round_trip(n, seed, k):
    doc = generate_mosaic(n, seed, k)
    text = serialize_document(doc)
    again = parse_document(text)
    assert serialize_document(again) == text
    assert again == doc


def test_generator_is_deterministic_and_valid():
    a = serialize_document(generate_mosaic(40, 3, 90))
    b = serialize_document(generate_mosaic(40, 3, 90))
    assert a == b
    fp = parse_floorplan(a)
    assert len(fp.blocks) == 40 and len(fp.nets) == 90


def test_hundred_blocks_have_198_junctions():
    fp = build_floorplan(generate_mosaic(100, 1))
    assert len(build_junction_graph(fp, 100, [1, 2]).junctions) == 198


def test_single_block():
    fp = build_floorplan(generate_mosaic(1, 0))
    assert len(fp.blocks) == 1
    assert len(build_junction_graph(fp, 100, [1, 2]).junctions) == 0


def test_bookshelf_conversion():
    blocks = """UCSC blocks 1.0
NumSoftRectangularBlocks : 1
NumHardRectilinearBlocks : 1
h1 hardrectilinear 4 (0, 0) (0, 100) (100, 100) (100, 0)
s1 softrectangular 10000 0.5 2.0
"""
    pl = "UCLA pl 1.0\nh1 0 0\ns1 100 0\n"
    nets = "UCLA nets 1.0\nNumNets : 1\nNetDegree : 2\nh1 B\ns1 B\n"
    doc = convert_bookshelf(blocks, nets, pl)
    fp = build_floorplan(doc)
    assert fp.die.x_hi == 200 and len(fp.nets) == 1


def _run(args, capsys):
    code = main([str(a) for a in args])
    return code, capsys.readouterr()


@pytest.fixture
def mosaic_file(tmp_path):
    path = tmp_path / "m.hgr"
    assert main(["gen", "--blocks", "30", "--nets", "100", "--seed", "5", "--out", str(path)]) == 0
    return path


def test_compare_table_equals_single_mode_difference(mosaic_file, tmp_path, capsys):
    table = tmp_path / "cmp.csv"
    code, _ = _run(["route", mosaic_file, "--compare", "--csv", table], capsys)
    assert code == 0
    _run(["route", mosaic_file, "--csv", tmp_path / "h.csv"], capsys)
    _run(["route", mosaic_file, "--mode", "staircase-only", "--csv", tmp_path / "s.csv"], capsys)
    h = parse_csv_summary((tmp_path / "h.csv").read_text())
    s = parse_csv_summary((tmp_path / "s.csv").read_text())
    rows = {r.split(",")[0]: r.split(",") for r in table.read_text().splitlines()[1:]}
    for m in ("total_length", "total_vias", "layers_used"):
        assert int(rows[m][3]) == int(h[m]) - int(s[m])
    assert float(rows["wace4"][3]) == pytest.approx(float(h["wace4"]) - float(s["wace4"]), abs=2e-6)
    assert (tmp_path / "cmp.hybrid.csv").read_text() == (tmp_path / "h.csv").read_text()
    assert (tmp_path / "cmp.staircase-only.csv").read_text() == (tmp_path / "s.csv").read_text()


def test_split_at_top_layer_is_staircase_only(mosaic_file, tmp_path, capsys):
    _run(["route", mosaic_file, "--split", "8", "--csv", tmp_path / "a.csv"], capsys)
    _run(["route", mosaic_file, "--mode", "staircase-only", "--csv", tmp_path / "b.csv"], capsys)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_outputs_are_deterministic(mosaic_file, tmp_path, capsys):
    for tag in ("1", "2"):
        _run(["route", mosaic_file, "--csv", tmp_path / f"r{tag}.csv", "--json", tmp_path / f"r{tag}.json"], capsys)
    assert (tmp_path / "r1.csv").read_bytes() == (tmp_path / "r2.csv").read_bytes()
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
    doc = json.loads((tmp_path / "r1.json").read_text())
    assert len(doc["nets"]) == 100 and "wace4" in doc["summary"]


def test_timing_flag(mosaic_file, capsys):
    _, out = _run(["route", mosaic_file, "--timing"], capsys)
    assert parse_csv_summary(out.out)["cpu_seconds"] != "NA"


def test_svg_overlays(mosaic_file, tmp_path, capsys):
    code, _ = _run(["route", mosaic_file, "--svg", tmp_path / "svg", "--layers", "4"], capsys)
    assert code == 0
    names = sorted(p.name for p in (tmp_path / "svg").iterdir())
    assert names == ["congestion_M1.svg", "congestion_M2.svg", "congestion_M3.svg", "congestion_M4.svg", "routes.svg"]
    assert (tmp_path / "svg" / "routes.svg").read_text().startswith("<svg")


@pytest.mark.parametrize("epe,admitted", [(False, 6), (True, 4)])
def test_epe_toy_admission(tmp_path, capsys, epe, admitted):
    (tmp_path / "toy.hgr").write_text(TOY)
    (tmp_path / "caps.txt").write_text(TOY_CAPS)
    args = ["route", tmp_path / "toy.hgr", "--layers", "2", "--capacities", tmp_path / "caps.txt"]
    code, out = _run(args + (["--epe"] if epe else []), capsys)
    assert code == 0
    assert out.out.count(",routed\n") == admitted
    assert out.out.count(",unrouted\n") == 8 - admitted


def test_bad_input_exits_with_two(tmp_path, capsys):
    (tmp_path / "bad.hgr").write_text(MINIMAL.replace("NET n0 a b", "NET n0 a zz"))
    code, out = _run(["route", tmp_path / "bad.hgr"], capsys)
    assert code == 2 and "zz" in out.err
    code, _ = _run(["route", tmp_path / "missing.hgr"], capsys)
    assert code == 2
