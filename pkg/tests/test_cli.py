import json

import pytest

from siegel3 import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_eval_power(capsys):
    code, payload = run_json(
        capsys, "eval-power", "--s", "1", "--w", "1", "--u", "1",
        "--z", "2j,0,0,2j,0,2j",
    )
    assert code == 0
    assert abs(payload["value"]["re"] + 64.0) < 1e-10
    assert abs(payload["value"]["im"]) < 1e-10


def test_eval_gamma3(capsys):
    code, payload = run_json(capsys, "eval-gamma3", "--s", "0", "--w", "0", "--u", "2")
    assert code == 0
    assert abs(payload["value"]["re"] + 4.934802200544679) < 1e-12


def test_fe_group(capsys):
    code, payload = run_json(capsys, "fe-group", "--k", "24")
    assert code == 0
    assert payload["order"] == 12
    assert payload["dihedral"] is True
    assert payload["order_of_aw"] == 6


def test_fe_group_dot_output(capsys, tmp_path):
    dot = tmp_path / "cayley.dot"
    code, payload = run_json(capsys, "fe-group", "--dot", str(dot))
    assert code == 0
    assert dot.read_text().startswith("digraph cayley")


def test_reduce_and_eps(capsys):
    code, payload = run_json(capsys, "reduce", "--form", "3,2,1,0,0,0")
    assert code == 0
    assert payload["form"] == [1, 2, 3, 0, 0, 0]
    code, payload = run_json(capsys, "eps", "--form", "1,1,1,0,0,0")
    assert code == 0 and payload["eps"] == 24


def test_classes_csv(capsys):
    code, out = run(capsys, "classes", "--det-bound", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t1,t2,t3,b12,b13,b23,det_num,det_den,eps"
    assert len(lines) == 4  # three classes up to determinant 1


def test_verify_claim1_pass_and_fail(capsys):
    code, payload = run_json(capsys, "verify-claim1", "--samples", "50", "--seed", "7")
    assert code == 0 and payload["pass"] is True
    code, payload = run_json(
        capsys, "verify-claim1", "--samples", "5", "--tol", "1e-30"
    )
    assert code == 2 and payload["pass"] is False


def test_verify_lemma_int(capsys):
    code, payload = run_json(capsys, "verify-lemma-int", "--samples", "2")
    assert code == 0 and payload["worst_gap"] <= 1e-8


def test_classical_lipschitz(capsys):
    code, payload = run_json(
        capsys, "classical-lipschitz", "--tau", "1j", "--s", "2", "--bound", "2000"
    )
    assert code == 0
    assert abs(payload["closed_form"]["re"] + 0.0739998067544724) < 1e-12


def test_verify_lipschitz_small(capsys):
    code, payload = run_json(
        capsys, "verify-lipschitz", "--max-abs", "4", "--trace-bound", "9",
        "--tail-correction", "--tol", "1e-3",
    )
    assert code == 0
    assert payload["relative_gap"] <= 1e-3


def test_eval_eisenstein_and_epstein(capsys):
    code, payload = run_json(
        capsys, "eval-eisenstein", "--form", "1,1,1,0,0,0",
        "--s", "2", "--w", "2", "--u", "0", "--bound", "4",
    )
    assert code == 0 and payload["terms_used"] > 0
    code, payload = run_json(
        capsys, "eval-epstein", "--y", "1,0,1", "--s", "2", "--bound", "10000"
    )
    assert code == 0
    assert abs(payload["value"]["re"] - 3.013406) < 1e-3


def test_verify_zetastar(capsys):
    code, payload = run_json(
        capsys, "verify-zetastar", "--s", "3.0", "--tau", "1j", "--bound", "4e4"
    )
    assert code == 0 and payload["residual"] <= 1e-8


def test_eval_km(capsys):
    code, payload = run_json(
        capsys, "eval-km", "--coeffs", "ones", "--s", "16", "--det-bound", "2"
    )
    assert code == 0 and payload["classes_used"] == 9
    code, payload = run_json(
        capsys, "eval-km-twisted", "--coeffs", "det_power:0.5", "--s", "2",
        "--w", "2", "--u", "14", "--det-bound", "1", "--bound", "6",
    )
    assert code == 0 and payload["classes_used"] == 3


def test_enum_and_complete_pair(capsys):
    code, payload = run_json(capsys, "enum-pairs", "--max-abs", "1")
    assert code == 0 and payload["count"] == 1096
    code, payload = run_json(
        capsys, "complete-pair", "--c", "0,0,0,0,0,0,0,0,0",
        "--d", "1,0,0,0,1,0,0,0,1",
    )
    assert code == 0
    assert payload["symplectic"][0][:3] == [1, 0, 0]


def test_eval_poincare_and_kernel(capsys):
    code, payload = run_json(
        capsys, "eval-poincare", "--k", "24", "--form", "1,1,1,0,0,0",
        "--z", "4j,0,0,4j,0,4j", "--max-abs", "1",
    )
    assert code == 0 and payload["terms_used"] > 0
    code, payload = run_json(
        capsys, "eval-kernel", "--k", "24", "--s", "2", "--w", "4", "--u", "5",
        "--z", "1j,0,0,1j,0,1j", "--det-bound", "1", "--bound", "6", "--max-abs", "1",
    )
    assert code == 0 and payload["classes_used"] == 3


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval-power", "--s", "1", "--w", "1"])  # missing --u/--z
    assert exc.value.code == 1


def test_input_error_exit_code(capsys):
    code = cli.main(["eval-km", "--coeffs", "/nonexistent/file.txt", "--s", "3"])
    assert code == 1


def test_json_round_trip_schema(capsys):
    code, payload = run_json(
        capsys, "eval-power", "--s", "0.5", "--w", "0.25", "--u", "1.5",
        "--z", "0.25+1j,0.1,0,1j,0.05,-0.25+1.5j",
    )
    assert code == 0
    assert set(payload["value"]) == {"re", "im"}
    assert isinstance(payload["value"]["re"], float)
