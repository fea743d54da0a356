import json

import pytest

from ncgeo.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_text_mode(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--presentation", "fuzzy", "--format", "text",
        "X^2 + Y^2 + Z^2",
    )
    assert code == 0
    assert out.strip() == "1"


def test_eval_json_mode(capsys):
    code, out, _ = run_cli(capsys, "eval", "--presentation", "weyl-lambda",
                           "L*Ls - Ls*L")
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"][0]["details"]["canonical"] == "2*hbar"


def test_eval_rejects_bad_input(capsys):
    code, _, err = run_cli(capsys, "eval", "--presentation", "fuzzy", "X + Q")
    assert code == 2
    assert "error" in err


def test_monopole_requires_valid_t(capsys):
    code, _, err = run_cli(capsys, "verify", "monopole", "--t", "1")
    assert code == 2
    code, _, err = run_cli(capsys, "verify", "monopole", "--t", "1/2")
    assert code == 2


def test_monopole_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "monopole", "--t", "3/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0


def test_verify_fuzzy_symbolic(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "fuzzy", "--mode", "symbolic", "--connection", "zero"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0
    ids = [c["id"] for c in payload["checks"]]
    assert "fuzzy-nabla-zero" in ids


def test_verify_fuzzy_matrix_single_spin(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "fuzzy", "--mode", "matrix", "--spin", "3/2",
        "--connection", "epsilon",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0


def test_report_determinism(capsys):
    _, out1, _ = run_cli(capsys, "verify", "monopole", "--t", "2")
    _, out2, _ = run_cli(capsys, "verify", "monopole", "--t", "2")
    a, b = json.loads(out1), json.loads(out2)
    a.pop("generated_at", None)
    b.pop("generated_at", None)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_minimal_enneper_report(capsys):
    code, out, _ = run_cli(
        capsys, "minimal", "--F", "1", "--fock-dim", "32", "--hbar", "1/2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0
    metric = next(c for c in payload["checks"] if c["id"] == "metric-components")
    assert metric["details"]["S"] == (
        "2*L^2*Ls^2 + (-16*hbar + 4)*L*Ls + 16*hbar^2 - 8*hbar + 2"
    )
    assert any(c["id"].startswith("enneper") for c in payload["checks"])


def test_minimal_with_gamma_parameters(capsys):
    code, out, _ = run_cli(
        capsys, "minimal", "--F", "1", "--gamma1", "L + Ls", "--gamma2", "1",
        "--fock-dim", "24",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0


def test_minimal_rejects_bad_polynomial(capsys):
    code, _, err = run_cli(capsys, "minimal", "--F", "Ls")
    assert code == 2
    assert "error" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "verify", "monopole", "--t", "2", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["summary"]["failed"] == 0


def test_text_format(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "monopole", "--t", "2", "--format", "text"
    )
    assert code == 0
    assert "monopole-projection" in out
    assert "pass" in out
