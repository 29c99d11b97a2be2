import json

import numpy as np
import pytest

from cliffcalc.cli import main, render_job
from cliffcalc.operators import CliffordOperator, operator_to_json


def run_cli(capsysbinary, argv):
    code = main(argv)
    captured = capsysbinary.readouterr()
    return code, captured.out


def test_mul_command(capsysbinary):
    code, out = run_cli(capsysbinary, ["mul", "-n", "2", "--a", "1+e1", "--b", "1+e2"])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "mul"
    assert report["result"]["product"]["coeffs"] == {"": 1.0, "1": 1.0, "2": 1.0, "12": 1.0}


def test_spectrum_command(capsysbinary):
    code, out = run_cli(capsysbinary, ["spectrum", "-n", "2", "--paravector", "1+2e1+2e2"])
    assert code == 0
    report = json.loads(out)
    s_plus = report["result"]["s_plus"]
    assert s_plus[0] == pytest.approx(1.0)
    assert s_plus[1] == pytest.approx(2 * np.sqrt(2))


def test_resolvent_command(capsysbinary):
    code, out = run_cli(capsysbinary, ["resolvent", "-n", "1", "--paravector", "e1",
                                       "--lambda", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["value"]["coeffs"][""] == [pytest.approx(0.4), 0.0]


def test_eval_both_methods(capsysbinary):
    code, out = run_cli(capsysbinary, [
        "eval", "-n", "2", "--fn", "z^2", "--at", "e1+e2", "--method", "both"])
    assert code == 0
    report = json.loads(out)
    direct = report["result"]["direct"]["coeffs"][""]
    assert direct[0] == pytest.approx(-2.0)
    assert report["result"]["residual"] <= 1e-8


def test_regularity_command(capsysbinary):
    code, out = run_cli(capsysbinary, [
        "regularity", "-n", "2", "--fn", "z^2 - e1*z", "--at", "0.5+e1"])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["residual"] <= 1e-6


def test_operator_commands(tmp_path, capsysbinary):
    T = CliffordOperator(1, 1, {0: [[0.0]], 1: [[1.0]]})
    matrix_file = tmp_path / "op.json"
    matrix_file.write_text(json.dumps(operator_to_json(T)))

    code, out = run_cli(capsysbinary, ["op-spectrum", "--matrix", str(matrix_file)])
    assert code == 0
    report = json.loads(out)
    assert sorted(tuple(e) for e in report["result"]["eigenvalues"]) == [(0.0, -1.0), (0.0, 1.0)]

    code, out = run_cli(capsysbinary, [
        "op-eval", "--matrix", str(matrix_file), "--fn", "z^2", "--method", "both"])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["riesz"]["components"][""][0][0] == pytest.approx(-1.0)
    assert report["result"]["residual"] <= 1e-6


def test_check_command(capsysbinary):
    code, out = run_cli(capsysbinary, ["check", "--suite", "projections", "--seed", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["passed"] is True


def test_validation_error_exit_code(capsysbinary):
    code, out = run_cli(capsysbinary, ["eval", "-n", "2", "--fn", "e5*z", "--at", "e1"])
    assert code == 1
    report = json.loads(out)
    assert "error" in report


def test_numeric_error_exit_code(capsysbinary):
    # resolvent exactly at a spectral point
    code, out = run_cli(capsysbinary, ["resolvent", "-n", "1", "--paravector", "e1",
                                       "--lambda", "1j"])
    assert code == 2
    report = json.loads(out)
    assert report["error"]["type"] == "SpectralPointError"


def test_out_flag_writes_file(tmp_path, capsysbinary):
    target = tmp_path / "report.json"
    code, out = run_cli(capsysbinary, ["mul", "-n", "1", "--a", "e1", "--b", "e1",
                                       "--out", str(target)])
    assert code == 0
    assert out == b""
    assert json.loads(target.read_text())["result"]["product"]["coeffs"] == {"": -1.0}


def test_job_file_replay(tmp_path, capsysbinary):
    job = {"command": "eval",
           "args": {"fn": "z^2", "at": "e1+e2", "n": 2, "method": "both"}}
    job_file = tmp_path / "job.json"
    job_file.write_text(json.dumps(job))
    code_a, out_a = run_cli(capsysbinary, ["--job", str(job_file)])
    code_b, out_b = run_cli(capsysbinary, ["--job", str(job_file)])
    assert code_a == code_b == 0
    assert out_a == out_b


def test_render_job_bytes_deterministic():
    job = {"command": "spectrum", "args": {"paravector": "1+2e1", "n": 1}}
    assert render_job(job) == render_job(job)
