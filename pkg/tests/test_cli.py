import json

import pytest

from symblob.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--n", "2")
    assert code == EXIT_OK
    assert out.startswith("|B^x_2| = 19")
    assert "(ok)" in out


def test_basis_json(capsys):
    code, out, _ = run(capsys, "basis", "--n", "1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["count"] == 5 == len(doc["diagrams"])


@pytest.mark.parametrize("argv", [
    ["basis", "--n", "0"],
    ["verify", "nope"],
    ["gram", "--n", "5", "--m", "2"],
    ["mult", "--n", "2", "1-2"],
    ["blocks", "--n", "4", "--w1", "3", "--w2", "1/2", "--ell", "3"],
    ["blocks", "--n", "4", "--ell", "3", "--q0", "2"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_mult(capsys):
    code, out, _ = run(capsys, "mult", "--n", "2", "1-3:L 2-4", "1-3:L 2-4")
    assert code == EXIT_OK
    assert "[1-3:L 2-4]" in out


def test_gram_golden(capsys):
    code, out, _ = run(capsys, "gram", "--n", "5", "--m", "2", "--eps=-,-", "--basis", "diagram")
    assert code == EXIT_OK
    assert "dL^2 dR kL" in out and "dL dR^2 kR" in out


def test_gram_closed_form(capsys):
    code, out, _ = run(capsys, "gram", "--n", "5", "--m", "2", "--eps=-,-", "--det", "closed-form")
    assert code == EXIT_OK
    assert "dL^0 dR^0" in out


def test_central(capsys):
    code, out, _ = run(capsys, "central", "--n", "3")
    assert code == EXIT_OK and "central: True" in out


@pytest.mark.parametrize("suite", ["gram", "central", "confluence", "figures"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_blocks_json_and_compare(capsys):
    code, out, _ = run(capsys, "blocks", "--n", "4", "--w1", "1", "--w2", "3/4", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["regime"] == "w1-integral"
    code, out, _ = run(capsys, "blocks", "--n", "4", "--w1", "1", "--w2", "3/4", "--compare-oracle")
    assert code == EXIT_OK and "oracle agreement: True" in out


def test_blocks_with_theta(capsys):
    code, out, _ = run(capsys, "blocks", "--n", "3", "--theta", "1/7")
    assert code == EXIT_OK and "W^3(b)" in out


def test_svg_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    argv = ["blocks", "--n", "8", "--w1", "1/2", "--w2", "3/4", "--ell", "3", "--format", "svg"]
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b)]) == EXIT_OK
    assert a.read_text() == b.read_text()
    assert a.read_text().lstrip().startswith("<svg")


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "3")
    assert code == EXIT_OK and "classes=" in out


def test_plot(capsys):
    code, out, _ = run(capsys, "plot", "--n", "4", "--w1", "1", "--w2", "3/4")
    assert code == EXIT_OK and "<svg" in out


def test_verification_failure_exit_code(capsys, monkeypatch):
    import symblob.gram
    monkeypatch.setattr(symblob.gram, "closed_form_ratio", lambda label, params: None)
    code, out, _ = run(capsys, "gram", "--n", "5", "--m", "2", "--eps=-,-", "--det", "closed-form")
    assert code == EXIT_FAIL and "NOT" in out
