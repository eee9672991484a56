"""End-to-end tests of the command line front end."""
import json

from energia import charsum, cli, vinogradov
from energia.sweep import CSV_COLUMNS


def _run(capsys, argv):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def _run_json(capsys, argv):
    rc, out, err = _run(capsys, argv)
    assert rc == 0, err
    return json.loads(out), err


def test_energy_report(capsys):
    payload, _ = _run_json(capsys, ["energy", "--modulus", "7", "--poly", "0,0,1", "--H", "3"])
    assert payload["T"] == 15
    assert payload["sumset_size"] == 6
    assert payload["K"] == "9/5"


def test_energy_single_value(capsys):
    payload, _ = _run_json(
        capsys, ["energy", "--modulus", "7", "--poly", "0,0,1", "--H", "3", "--what", "T"]
    )
    assert payload == {"T": 15}


def test_vinogradov_J(capsys):
    payload, _ = _run_json(capsys, ["vinogradov", "--d", "2", "--s", "2", "--set", "1,2"])
    assert payload["kind"] == "J"
    assert payload["count"] == 6


def test_vinogradov_I_matches_J(capsys):
    payload, _ = _run_json(
        capsys, ["vinogradov", "--d", "2", "--s", "2", "--H", "3", "--shifts", "0,0"]
    )
    assert payload["kind"] == "I"
    assert payload["count"] == vinogradov.count_J(2, 2, (1, 2, 3))


def test_vinogradov_Ts(capsys):
    payload, _ = _run_json(
        capsys,
        ["vinogradov", "--d", "2", "--s", "2", "--poly", "0,0,1", "--modulus", "7", "--H", "3"],
    )
    assert payload["kind"] == "Ts"
    assert payload["count"] == 15


def test_vinogradov_slope(capsys):
    payload, _ = _run_json(capsys, ["vinogradov", "--d", "1", "--slope", "2,4,8"])
    assert len(payload["entries"]) == 3
    assert payload["d"] == 1


def test_vinogradov_missing_s(capsys):
    rc, _, err = _run(capsys, ["vinogradov", "--d", "2", "--H", "3"])
    assert rc == 2
    assert "error:" in err


def test_lattice_minima(capsys):
    payload, _ = _run_json(
        capsys, ["lattice", "minima", "--basis", "1,0;0,1", "--box", "2,1"]
    )
    assert payload["minima"] == ["1/2", "1/1"]


def test_lattice_minkowski(capsys):
    payload, _ = _run_json(
        capsys, ["lattice", "minkowski", "--basis", "1,1;0,5", "--box", "1,1"]
    )
    assert payload["ok"] is True


def test_lattice_dual(capsys):
    payload, _ = _run_json(capsys, ["lattice", "dual", "--basis", "1,1;0,5"])
    assert payload["den"] == 5
    assert len(payload["basis"]) == 2


def test_lattice_mahler_query(capsys):
    payload, _ = _run_json(
        capsys,
        ["lattice", "mahler", "--basis", "1,0;0,1", "--box", "1,1", "--query", "3,4"],
    )
    assert payload["within_factor"] is True
    assert len(payload["expansions"]) == 1


def test_lattice_bv(capsys):
    payload, _ = _run_json(capsys, ["lattice", "bv", "--matrix", "1,1,1"])
    assert payload["product_bound_ok"] is True
    assert payload["min_vector_bound_ok"] is True
    assert payload["is_basis"] is True


def test_lattice_measure(capsys):
    payload, _ = _run_json(
        capsys,
        ["lattice", "measure", "--matrix", "1,0;0,1", "--eps", "1/4,1/4",
         "--samples", "2000", "--seed", "3"],
    )
    assert payload["target"] == "1/16"
    assert payload["samples"] == 2000
    assert 0 <= payload["hits"] <= 2000


def test_lattice_needs_body(capsys):
    rc, _, err = _run(capsys, ["lattice", "minima", "--basis", "1,0;0,1"])
    assert rc == 2
    assert "error:" in err


def test_eqcount_eq(capsys):
    payload, _ = _run_json(
        capsys, ["eqcount", "eq", "--coeffs", "0,0,1", "--target", "3", "--H", "10"]
    )
    assert payload["count"] == 1
    assert payload["solutions"] == [[2, 1]]


def test_eqcount_sym(capsys):
    payload, _ = _run_json(capsys, ["eqcount", "sym", "--coeffs", "0,0,1", "--H", "2"])
    assert payload["total"] == 6
    assert payload["collision_pairs"] == 2


def test_eqcount_constant(capsys):
    payload, _ = _run_json(capsys, ["eqcount", "constant", "--d", "2"])
    assert payload == {"d": 2, "constant": "16214/554511"}


def test_eqcount_cong_pipeline(capsys):
    payload, _ = _run_json(
        capsys,
        ["eqcount", "cong", "--poly", "0,0,1", "--modulus", "340007", "--H", "2",
         "--shift", "3"],
    )
    assert payload["method"] == "pipeline"
    assert payload["count"] == 1
    assert payload["declined"] is None


def test_eqcount_cong_declined(capsys):
    payload, _ = _run_json(
        capsys,
        ["eqcount", "cong", "--poly", "0,0,0,1", "--modulus", "10007", "--H", "6",
         "--shift", "19"],
    )
    assert payload["method"] == "brute"
    assert payload["declined"] is not None


def test_charsum_weil(capsys):
    payload, _ = _run_json(capsys, ["charsum", "weil", "--p", "7", "--coeffs", "1,0,1"])
    assert payload["admissible"] is True
    assert payload["within_bound"] is True
    assert payload["magnitude"] <= payload["bound"]


def test_charsum_bilinear(capsys):
    payload, _ = _run_json(
        capsys, ["charsum", "bilinear", "--p", "11", "--set", "1,2", "--H", "3"]
    )
    assert abs(payload["value"]["re"] - 4.0) < 1e-9
    assert abs(payload["value"]["im"]) < 1e-9
    assert payload["trivial"] == 6.0


def test_charsum_primes(capsys):
    payload, _ = _run_json(
        capsys,
        ["charsum", "primes", "--p", "101", "--poly", "0,0,1", "--Q", "4", "--R", "4"],
    )
    assert payload["primes_q"] == 2  # 2 and 3
    assert payload["primes_r"] == 2
    assert payload["ratio_pairs"] <= 1.0 + 1e-9


def test_charsum_bound(capsys):
    payload, _ = _run_json(
        capsys,
        ["charsum", "bound", "--S", "10", "--H", "100", "--p", "100003",
         "--E", "50", "--r", "1"],
    )
    rec = charsum.bilinear_energy_bound(10, 100, 100003, 50, 1)
    assert payload["bound"] == rec.bound


def test_charsum_region(capsys):
    ok_payload, _ = _run_json(
        capsys, ["charsum", "region", "--zeta", "1/4", "--xi", "1/3", "--d", "2"]
    )
    assert ok_payload["ok"] is True
    bad_payload, _ = _run_json(
        capsys, ["charsum", "region", "--zeta", "1/4", "--xi", "3/10", "--d", "2"]
    )
    assert bad_payload["ok"] is False


def test_verify_csv_to_file(tmp_path, capsys):
    cfg = tmp_path / "grid.cfg"
    cfg.write_text("d = 2\nm = 7\nh = 2,3\nseeds = 0,1\nmaster = clitest\n")
    out = tmp_path / "report.csv"
    rc, _, err = _run(
        capsys, ["verify", "--config", str(cfg), "--emit", "csv", "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 5  # header + 2 lengths * 2 seeds
    summary = json.loads(err)
    assert summary["cells"] == 4
    assert summary["ok"] is True


def test_verify_seed_reruns_identically(tmp_path, capsys):
    cfg = tmp_path / "grid.cfg"
    cfg.write_text("d = 2\nm = 11\nh = 3\nseeds = 0\n")
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        rc, _, _ = _run(
            capsys,
            ["verify", "--config", str(cfg), "--emit", "csv", "--out", str(out),
             "--seed", "7"],
        )
        assert rc == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_json_stdout(tmp_path, capsys):
    cfg = tmp_path / "grid.cfg"
    cfg.write_text("d = 2\nm = 7\nh = 2\nseeds = 0\n")
    rc, out, err = _run(capsys, ["verify", "--config", str(cfg)])
    assert rc == 0
    payload = json.loads(out)
    assert payload["hard_failures"] == 0
    assert len(payload["cells"]) == 1
    assert payload["cells"][0]["T"] >= 4  # T >= H^2 always


def test_domain_error_exit_code(capsys):
    rc, _, err = _run(capsys, ["energy", "--modulus", "1", "--poly", "0,1", "--H", "2"])
    assert rc == 2
    assert "error:" in err
