"""Tests for the deterministic verification sweep."""
import io
import json
from fractions import Fraction

import pytest

from energia.cli import json_ready
from energia.ring import DomainError, PolyMod
from energia.sweep import (
    CSV_COLUMNS,
    CellResult,
    SweepConfig,
    parse_config,
    run_cell,
    run_sweep,
    write_csv,
)

SMALL = SweepConfig(degrees=(2,), moduli=(7, 101), lengths=(2, 3, 5), seeds=(0, 1), master="t")


def test_parse_config_roundtrip():
    text = """
    # grid for a quick check
    d = 2
    m = 7, 11
    h = 2,3
    seeds = 0
    master = abc
    """
    cfg = parse_config(text)
    assert cfg == SweepConfig((2,), (7, 11), (2, 3), (0,), "abc")


def test_parse_config_aliases():
    cfg = parse_config("degrees=2,3\nmoduli=11\nlengths=4\nseed=1,2")
    assert cfg.degrees == (2, 3)
    assert cfg.moduli == (11,)
    assert cfg.lengths == (4,)
    assert cfg.seeds == (1, 2)
    assert cfg.master == "energia"  # default survives


def test_parse_config_errors():
    with pytest.raises(DomainError):
        parse_config("frobnicate = 3")
    with pytest.raises(DomainError):
        parse_config("just a line without equals")
    with pytest.raises(DomainError):
        parse_config("d = two")
    with pytest.raises(DomainError):
        parse_config("d = ")  # empty value list


def test_config_validation():
    with pytest.raises(DomainError):
        SweepConfig(degrees=(1,))
    with pytest.raises(DomainError):
        SweepConfig(moduli=(1,))
    with pytest.raises(DomainError):
        SweepConfig(lengths=(0,))
    with pytest.raises(DomainError):
        SweepConfig(seeds=())


def test_run_cell_pinned_square():
    cell = run_cell(2, 7, 3, 0, f=PolyMod((0, 0, 1), 7))
    assert cell.T == 15
    assert cell.energy_plus == 15
    assert cell.sumset == 6
    assert cell.K == Fraction(27, 15)
    assert cell.cs_ok is True  # 81 <= 6 * 15
    assert cell.sandwich_ok is True
    assert cell.error is None
    assert not cell.hard_failure


def test_run_cell_pinned_mismatch():
    with pytest.raises(DomainError):
        run_cell(3, 7, 3, 0, f=PolyMod((0, 0, 1), 7))
    with pytest.raises(DomainError):
        run_cell(2, 11, 3, 0, f=PolyMod((0, 0, 1), 7))


def test_run_cell_seeded_shape_and_determinism():
    a = run_cell(2, 101, 5, 1, master="x")
    b = run_cell(2, 101, 5, 1, master="x")
    assert a == b
    assert len(a.coeffs) == 3 and a.coeffs[-1] == 1  # monic
    assert all(0 <= c < 101 for c in a.coeffs)
    assert a.c_fourth == pytest.approx(a.T / (5**0.5 * a.bound_fourth))
    assert a.ratio_fourth == pytest.approx(a.T / a.bound_fourth)


def test_run_sweep_grid_order_and_checks():
    report = run_sweep(SMALL)
    keys = [(c.d, c.m, c.H, c.seed) for c in report.cells]
    want = [
        (2, m, H, s)
        for m in (7, 101)
        for H in (2, 3, 5)
        for s in (0, 1)
    ]
    assert keys == want
    assert report.hard_failures == 0
    assert report.ok
    assert all(c.error is None for c in report.cells)
    # both moduli here are prime, so the sandwich is always evaluated
    assert all(c.sandwich_ok is True for c in report.cells)
    assert report.max_c_fourth == max(c.c_fourth for c in report.cells)
    assert report.max_c_fourth > 0


def test_run_sweep_skips_lengths_beyond_modulus():
    cfg = SweepConfig(degrees=(2,), moduli=(3,), lengths=(2, 5), seeds=(0,))
    report = run_sweep(cfg)
    assert [(c.m, c.H) for c in report.cells] == [(3, 2)]


def test_run_sweep_slopes():
    report = run_sweep(SMALL)
    by_m = {rec.m: rec for rec in report.slopes}
    assert set(by_m) == {7, 101}
    # m = 7: crossover 7^(1/3) < 2, so no small-regime points at all
    assert by_m[7].points_small == 0
    assert by_m[7].slope_small is None
    assert by_m[7].points_all == 3
    assert by_m[7].slope_all is not None
    # m = 101: crossover ~4.65 keeps H in {2, 3}
    assert by_m[101].points_small == 2
    assert by_m[101].slope_small is not None


def test_run_sweep_byte_identical():
    r1 = run_sweep(SMALL)
    r2 = run_sweep(SMALL)
    assert r1 == r2
    assert json.dumps(json_ready(r1)) == json.dumps(json_ready(r2))


def test_run_sweep_worker_parity():
    seq = run_sweep(SMALL)
    par = run_sweep(SMALL, workers=2)
    assert seq == par
    assert json.dumps(json_ready(seq)) == json.dumps(json_ready(par))


def test_write_csv():
    report = run_sweep(SMALL)
    buf = io.StringIO()
    write_csv(report, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == len(report.cells) + 1
    first = lines[1].split(",")
    assert first[0] == "2" and first[1] == "7"
    assert "/" in first[8]  # K rendered as an exact fraction
    assert first[-1] == ""  # no error


def test_hard_failure_property():
    base = dict(d=2, m=7, H=2, seed=0)
    assert CellResult(**base, error="boom").hard_failure
    assert CellResult(**base, cs_ok=False).hard_failure
    assert CellResult(**base, cs_ok=True, sandwich_ok=False).hard_failure
    assert not CellResult(**base, cs_ok=True, sandwich_ok=None).hard_failure
