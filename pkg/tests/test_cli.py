"""Command-line contract: formats, exit codes, determinism."""

import json

import pytest
from click.testing import CliRunner

from bhindex.cli import main
from bhindex.serialize import canonical_dumps


@pytest.fixture()
def runner():
    return CliRunner()


def test_classify_tgi_json(runner):
    result = runner.invoke(main, ["classify", "--family", "tgi", "--m", "2", "--n", "3", "--format", "json"])
    assert result.exit_code == 0
    obj = json.loads(result.output)
    assert obj["index_exact"] == 1
    assert obj["nullity_exact"] == 10
    assert obj["nullity_split"] == {"first_eigen_pairs": 3, "killing": 3, "vertical": 4}


def test_classify_json_round_trip_byte_identical(runner):
    args = ["classify", "--family", "veronese", "--m", "5", "--format", "json"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2
    # re-parse + re-render is also byte-identical
    assert canonical_dumps(json.loads(out1)) + "\n" == out1


def test_classify_text(runner):
    result = runner.invoke(main, ["classify", "--family", "clifford", "--l", "1"])
    assert result.exit_code == 0
    assert "index >= 1" in result.output
    assert "conjecture" in result.output


def test_spectrum_single_row(runner):
    result = runner.invoke(main, ["spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "0", "--format", "csv"])
    assert result.exit_code == 0
    rows = result.output.strip().split("\n")
    assert rows[0] == "value_num,value_den,level,multiplicity"
    assert len(rows) == 2
    assert rows[1].startswith("0,1,") and rows[1].endswith(",1")


def test_spectrum_json_rational_cutoff(runner):
    result = runner.invoke(main, ["spectrum", "--family", "veronese", "--m", "2", "--lambda-max", "8/3", "--format", "json"])
    assert result.exit_code == 0
    obj = json.loads(result.output)
    assert obj["lambda_max"] == {"num": 8, "den": 3}
    values = [e["value"] for e in obj["eigenvalues"]]
    assert {"num": 4, "den": 3} in values
    assert all(isinstance(e["value"]["num"], int) for e in obj["eigenvalues"])


def test_quadform_block(runner):
    result = runner.invoke(main, ["quadform", "--family", "tgi", "--m", "2", "--n", "3", "--lam", "4", "--format", "json"])
    assert result.exit_code == 0
    obj = json.loads(result.output)
    by_bundle = {f["subbundle"]: f for f in obj["forms"]}
    assert by_bundle["normal"]["value"] == {"num": 16, "den": 1}
    assert by_bundle["tangent"]["value"] == {"num": 64, "den": 1}
    assert by_bundle["cross"]["value"] == {"num": -32, "den": 1}
    assert obj["block"]["kind"] == "positive_semidefinite"
    assert obj["block"]["kernel_direction"] == [2, 1]


def test_validation_exit_code_2(runner):
    cases = [
        ["spectrum", "--family", "tgi", "--m", "3"],  # missing n
        ["spectrum", "--family", "tgi", "--m", "5", "--n", "3"],  # m > n
        ["quadform", "--family", "tgi", "--m", "2", "--n", "3", "--lam", "5"],  # not an eigenvalue
        ["quadform", "--family", "identity", "--n", "3", "--lam", "3"],
        ["spectrum", "--family", "clifford", "--l", "1", "--lambda-max", "x"],  # bad rational
        ["classify", "--family", "tgi", "--m", "2", "--n", "3", "--lambda-max", "4"],  # cutoff too small
        ["verify", "--case", "torus", "--grid", "32"],  # grid below battery minimum
        ["verify", "--case", "circle", "--grid", "64"],  # circle battery needs 128
    ]
    for args in cases:
        result = runner.invoke(main, args)
        assert result.exit_code == 2, (args, result.output)


def test_verify_passes_and_fails_by_tolerance(runner):
    ok = runner.invoke(main, ["verify", "--case", "torus", "--grid", "64", "--seed", "7"])
    assert ok.exit_code == 0
    assert "all checks pass" in ok.output
    bad = runner.invoke(main, ["verify", "--case", "torus", "--grid", "64", "--seed", "7", "--tolerance", "1e-20"])
    assert bad.exit_code == 3
    assert "FAIL" in bad.output


def test_verify_json_structure(runner):
    result = runner.invoke(main, ["verify", "--case", "circle", "--format", "json"])
    assert result.exit_code == 0
    obj = json.loads(result.output)
    assert obj["case"] == "circle"
    assert obj["all_pass"] is True
    assert all({"name", "statement", "computed", "expected", "pass"} <= set(c) for c in obj["checks"])


def test_verify_identities_subset(runner):
    result = runner.invoke(main, ["verify", "--case", "identities", "--count", "6", "--seed", "2", "--format", "csv"])
    assert result.exit_code == 0
    rows = result.output.strip().split("\n")
    assert rows[0] == "case,name,kind,computed,expected,tolerance,pass"
    assert len(rows) >= 6


def test_report_writes_artifacts(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("BHINDEX_OUTPUT_DIR", str(tmp_path / "from-env"))
    result = runner.invoke(main, ["report", "--seed", "0"])
    assert result.exit_code == 0, result.output
    out = tmp_path / "from-env"
    for name in ("report.json", "report.txt", "checks.csv", "normal_forms.png",
                 "clifford_flip.png", "veronese_crossover.png", "residuals.png"):
        assert (out / name).exists(), name
    obj = json.loads((out / "report.json").read_text())
    assert obj["all_pass"] is True
    assert len(obj["criteria"]) == 8
    assert "overall: PASS" in result.output
