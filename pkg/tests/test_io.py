import json
import os

import numpy as np
import pytest

import resonet as rn
from resonet.errors import ParseError
from resonet.touchstone import CSV_HEADER


@pytest.fixture()
def swept(xband4_design, xband4):
    return rn.sweep_two_port(xband4_design.matrix, xband4, 9e9, 11e9, 201)


def test_design_round_trip_is_exact(xband4_design, tmp_path):
    path = tmp_path / "design.json"
    rn.save_design(xband4_design, path)
    loaded = rn.load_design(path)
    d = xband4_design
    assert loaded.spec == d.spec
    assert loaded.prototype.g == d.prototype.g
    assert loaded.targets.qe_in == d.targets.qe_in
    assert loaded.targets.k == d.targets.k
    assert np.array_equal(loaded.matrix.m, d.matrix.m)
    assert loaded.matrix.qe1 == d.matrix.qe1
    assert loaded.matrix.qen == d.matrix.qen
    assert loaded.polynomials.e_roots == d.polynomials.e_roots
    assert loaded.polynomials.f_roots == d.polynomials.f_roots
    assert loaded.polynomials.p_roots == d.polynomials.p_roots
    assert loaded.polynomials.epsilon == d.polynomials.epsilon
    assert loaded.provenance == d.provenance


def test_second_round_trip_is_stable(xband4_design, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    rn.save_design(xband4_design, p1)
    rn.save_design(rn.load_design(p1), p2)
    assert p1.read_text() == p2.read_text()


def test_design_file_missing_key(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"spec": {"order": 4}}))
    with pytest.raises(ParseError, match="f0_hz"):
        rn.load_design(path)


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "order": 4,\n  oops\n}\n')
    with pytest.raises(ParseError, match="line 3"):
        rn.load_design(path)


def test_config_parsing(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"order": 4, "f0_hz": 10e9, "bandwidth_hz": 0.5e9, "ripple_db": 0.04321}))
    spec = rn.load_filter_config(path)
    assert spec == rn.FilterSpec(order=4, f0_hz=10e9, bandwidth_hz=0.5e9, ripple_db=0.04321)


def test_config_accepts_fbw(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"order": 4, "f0_hz": 300e9, "fbw": 0.02, "ripple_db": 0.04321}))
    spec = rn.load_filter_config(path)
    assert spec.bandwidth_hz == pytest.approx(6e9)


def test_config_missing_key_names_it(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"f0_hz": 10e9, "bandwidth_hz": 0.5e9, "ripple_db": 0.04321}))
    with pytest.raises(ParseError, match="order"):
        rn.load_filter_config(path)


def test_bundled_designs():
    assert rn.bundled_design_names() == ("xband-4pole", "xband-8pole", "yband-4pole")
    spec = rn.bundled_filter_spec("xband-4pole")
    assert (spec.order, spec.f0_hz, spec.bandwidth_hz) == (4, 10e9, 0.5e9)
    spec = rn.bundled_filter_spec("yband-4pole")
    assert spec.f0_hz == 300e9
    assert spec.fbw == pytest.approx(0.02)
    record = rn.bundled_design("xband-8pole")
    dims = record["reference_dimensions_mm"]["coupled_resonator_design"]
    assert dims["coupling_septa_s"][0] == 5.57


def test_atomic_save_leaves_no_partial_file(xband4_design, tmp_path):
    target = tmp_path / "missing-dir" / "design.json"
    with pytest.raises(OSError):
        rn.save_design(xband4_design, target)
    assert not target.exists()


def test_touchstone_round_trip(swept, tmp_path):
    resp, s12, s22 = swept
    path = tmp_path / "sweep.s2p"
    rn.write_touchstone(path, resp.grid, resp.s11, resp.s21, s12, s22)
    back = rn.read_touchstone(path)
    assert np.max(np.abs(back.grid - resp.grid) / resp.grid) < 1e-12
    assert np.max(np.abs(back.s11 - resp.s11)) < 1e-12
    assert np.max(np.abs(back.s21 - resp.s21)) < 1e-12


def test_touchstone_format(swept, tmp_path):
    resp, s12, s22 = swept
    path = tmp_path / "sweep.s2p"
    rn.write_touchstone(path, resp.grid, resp.s11, resp.s21, s12, s22)
    lines = path.read_text().splitlines()
    assert lines[0] == "# GHz S RI R 50"
    assert len(lines) == 1 + len(resp)
    assert len(lines[1].split()) == 9
    first_ghz = float(lines[1].split()[0])
    assert first_ghz == pytest.approx(9.0)


def test_touchstone_reader_handles_units_and_comments(tmp_path):
    path = tmp_path / "data.s2p"
    path.write_text(
        "! fixture data\n"
        "# MHz S RI R 50\n"
        "9000 0.1 0.0 0.9 0.0 0.9 0.0 0.1 0.0 ! row comment\n"
        "9100 0.2 0.0 0.8 0.0 0.8 0.0 0.2 0.0\n"
    )
    resp = rn.read_touchstone(path)
    assert resp.grid[0] == pytest.approx(9.0e9)
    assert resp.s21[1] == pytest.approx(0.8)


def test_touchstone_reader_rejects_ma_format(tmp_path):
    path = tmp_path / "data.s2p"
    path.write_text("# GHz S MA R 50\n9 1 0 1 0 1 0 1 0\n")
    with pytest.raises(ParseError, match="RI"):
        rn.read_touchstone(path)


def test_touchstone_reader_rejects_descending(tmp_path):
    path = tmp_path / "data.s2p"
    path.write_text("# GHz S RI R 50\n10 0 0 0 0 0 0 0 0\n9 0 0 0 0 0 0 0 0\n")
    with pytest.raises(ParseError, match="increasing"):
        rn.read_touchstone(path)


def test_touchstone_reader_rejects_bad_columns(tmp_path):
    path = tmp_path / "data.s2p"
    path.write_text("# GHz S RI R 50\n9 0 0 0\n")
    with pytest.raises(ParseError, match="9 columns"):
        rn.read_touchstone(path)


def test_csv_round_trip_and_header(swept, tmp_path):
    resp, _, _ = swept
    path = tmp_path / "sweep.csv"
    rn.write_csv(path, resp)
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + len(resp)
    back = rn.read_csv(path)
    assert np.max(np.abs(back.s11 - resp.s11)) < 1e-12
    assert np.max(np.abs(back.s21 - resp.s21)) < 1e-12


def test_csv_header_enforced(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("freq,s11\n1,0\n")
    with pytest.raises(ParseError, match="header"):
        rn.read_csv(path)


def test_read_response_dispatch(swept, tmp_path):
    resp, s12, s22 = swept
    ts = tmp_path / "sweep.s2p"
    cs = tmp_path / "sweep.csv"
    rn.write_touchstone(ts, resp.grid, resp.s11, resp.s21, s12, s22)
    rn.write_csv(cs, resp)
    assert np.max(np.abs(rn.read_response(ts).s21 - rn.read_response(cs).s21)) < 1e-12
