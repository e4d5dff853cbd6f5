import json

import pytest
from click.testing import CliRunner

from quatlift.cli import main


@pytest.fixture(scope="module")
def fixture_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixture")
    runner = CliRunner()
    res = runner.invoke(main, ["export-fixture", "--dir", str(d)])
    assert res.exit_code == 0, res.output
    return d


def test_classset_command(fixture_files):
    runner = CliRunner()
    res = runner.invoke(main, ["classset",
                               "--algebra", str(fixture_files / "ramified17.json"),
                               "--order", str(fixture_files / "maximal.json")])
    assert res.exit_code == 0, res.output
    assert "classes: 2" in res.output
    assert "unit counts: [2, 6]" in res.output
    assert "mass: 2/3" in res.output


def test_lift_command_value_and_determinism(fixture_files, tmp_path):
    runner = CliRunner()
    out1 = tmp_path / "lift1.json"
    out2 = tmp_path / "lift2.json"
    r1 = runner.invoke(main, ["lift", "--fixture", "n17", "--bound", "100",
                              "--out", str(out1), "--jobs", "1"])
    r2 = runner.invoke(main, ["lift", "--fixture", "n17", "--bound", "100",
                              "--out", str(out2), "--jobs", "2"])
    assert r1.exit_code == 0 and r2.exit_code == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2  # byte-identical across worker counts
    obj = json.loads(b1)
    entry = next(e for e in obj["entries"] if e[:3] == [2, 1, 3])
    assert entry[3] == "32"


def test_hecke_command(fixture_files, tmp_path):
    runner = CliRunner()
    lift = tmp_path / "lift.json"
    runner.invoke(main, ["lift", "--fixture", "n17", "--bound", "400",
                         "--out", str(lift)])
    res = runner.invoke(main, ["hecke", "--expansion", str(lift), "--prime", "2",
                               "--out", str(tmp_path / "t2.json")])
    assert res.exit_code == 0, res.output
    assert "eigenvalue of T(2): -5" in res.output


def test_eigenforms_command(fixture_files, tmp_path):
    runner = CliRunner()
    out = tmp_path / "eig.json"
    res = runner.invoke(main, ["eigenforms",
                               "--algebra", str(fixture_files / "ramified17.json"),
                               "--order", str(fixture_files / "maximal.json"),
                               "--nu", "0", "--primes", "2,3", "--out", str(out)])
    assert res.exit_code == 0, res.output
    payload = json.loads(out.read_text())
    eigs = sorted(tuple(sorted(c.get("eigenvalues", {}).items())) for c in payload)
    assert (("2", "-1"), ("3", "0")) in eigs
    assert (("2", "3"), ("3", "4")) in eigs


def test_brandt_command(fixture_files, tmp_path):
    runner = CliRunner()
    res = runner.invoke(main, ["brandt",
                               "--algebra", str(fixture_files / "ramified17.json"),
                               "--order", str(fixture_files / "maximal.json"),
                               "--nu", "0", "--prime", "2"])
    assert res.exit_code == 0, res.output
    assert "row sums: ['3', '3']" in res.output


def test_roundtrip_command_idempotent(fixture_files, tmp_path):
    runner = CliRunner()
    out = tmp_path / "alg.json"
    res = runner.invoke(main, ["roundtrip", "--in", str(fixture_files / "ramified17.json"),
                               "--schema", "algebra", "--out", str(out)])
    assert res.exit_code == 0, res.output
    assert out.read_bytes() == (fixture_files / "ramified17.json").read_bytes()


def test_roundtrip_rejects_bad_order(fixture_files, tmp_path):
    runner = CliRunner()
    obj = json.loads((fixture_files / "maximal.json").read_text())
    obj["basis"][3] = ["0", "0", "0", "2"]
    bad = tmp_path / "bad_order.json"
    bad.write_text(json.dumps(obj))
    res = runner.invoke(main, ["roundtrip", "--in", str(bad), "--schema", "lattice",
                               "--algebra", str(fixture_files / "ramified17.json")])
    assert res.exit_code == 1
    assert "not closed under multiplication" in res.output


def test_lfactor_bad_prime_pole(fixture_files):
    runner = CliRunner()
    res = runner.invoke(main, ["lfactor", "--kind", "bad", "--degree", "3",
                               "--level", "17", "--s", "1.0"])
    assert res.exit_code == 2
    assert "pole" in res.output


def test_hecke_command_refuses_insufficient_bound(fixture_files, tmp_path):
    runner = CliRunner()
    lift = tmp_path / "tiny.json"
    runner.invoke(main, ["lift", "--fixture", "n17", "--bound", "3", "--out", str(lift)])
    res = runner.invoke(main, ["hecke", "--expansion", str(lift), "--prime", "2"])
    assert res.exit_code != 0
    assert "refusing" in res.output


def test_malformed_file_diagnostic(tmp_path):
    runner = CliRunner()
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    res = runner.invoke(main, ["classset", "--algebra", str(bad), "--order", str(bad)])
    assert res.exit_code != 0
    assert "bad.json:1" in res.output
