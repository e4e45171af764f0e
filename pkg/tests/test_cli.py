import json
import math

import numpy as np
import pytest

from innerfourier.cli import RunConfig, main

PI = math.pi


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def read_csv(path):
    return np.genfromtxt(path, delimiter=",", names=True)


def test_decompose_sawtooth(tmp_path):
    assert run(tmp_path, "decompose", "--fn", "sawtooth") == 0
    data = read_csv(tmp_path / "decompose.csv")
    np.testing.assert_allclose(data["odd"], data["f"], atol=1e-14)
    assert abs(json.loads((tmp_path / "decompose.json").read_text())["mean"]) < 1e-12


def test_decompose_constant(tmp_path):
    assert run(tmp_path, "decompose", "--fn", "const:1") == 0
    data = read_csv(tmp_path / "decompose.csv")
    np.testing.assert_allclose(data["even"], 0.0, atol=1e-12)
    np.testing.assert_allclose(data["odd"], 0.0, atol=1e-12)
    assert json.loads((tmp_path / "decompose.json").read_text())["mean"] == pytest.approx(1.0)


def test_decompose_tent_table(tmp_path):
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"points": [[-PI, 0.0], [0.0, 1.0], [PI, 0.0]]}))
    assert run(tmp_path, "decompose", "--table", str(table)) == 0
    assert json.loads((tmp_path / "decompose.json").read_text())["mean"] == pytest.approx(0.5, abs=1e-12)
    data = read_csv(tmp_path / "decompose.csv")
    tent = 1 - np.abs(data["theta"]) / PI
    np.testing.assert_allclose(data["even"], tent - 0.5, atol=1e-12)


def test_coeffs_squarewave(tmp_path):
    assert run(tmp_path, "coeffs", "--fn", "squarewave", "--K", "8", "--kind", "sine") == 0
    d = json.loads((tmp_path / "coeffs.json").read_text())
    expected = [4 / PI, 0, 4 / (3 * PI), 0, 4 / (5 * PI), 0, 4 / (7 * PI), 0]
    assert d["kind"] == "sine" and d["provenance"] == "computed-from-function"
    np.testing.assert_allclose(d["values"], expected, atol=1e-10)


def test_classify_then_gate_refusal(tmp_path, capsys):
    assert run(tmp_path, "classify", "--seq", "geometric:2", "--K", "64") == 0
    report = json.loads((tmp_path / "classify.json").read_text())
    assert report["subexp_condition"] == "fail"
    assert run(tmp_path, "reconstruct", "--seq", "geometric:2", "--K", "64") == 2
    assert "0.6931" in capsys.readouterr().err
    assert run(tmp_path, "reconstruct", "--seq", "geometric:2", "--K", "64", "--force",
               "--theta", "0.5") == 0


def test_reconstruct_delta_taylor_peaks(tmp_path):
    assert run(tmp_path, "reconstruct", "--seq", "delta-taylor", "--rho-max", "j=10",
               "--theta", "0") == 0
    d = json.loads((tmp_path / "reconstruct.json").read_text())
    rho = np.array(d["ladder"])
    peaks = np.array(d["rung_values"])[:, 0]
    assert len(rho) == 10
    assert np.all(np.diff(peaks) > 0)
    # the sequence a_k = 1/pi omits the kernel's additive constant 1/(2 pi);
    # atol covers the truncated series tail (1e-12) plus summation rounding
    np.testing.assert_allclose(peaks + 1 / (2 * PI), (1 + rho) / (2 * PI * (1 - rho)),
                               rtol=1e-12, atol=1e-11)


def test_file_round_trip_squarewave(tmp_path):
    assert run(tmp_path, "coeffs", "--fn", "squarewave", "--K", "2048") == 0
    seq = f"file:{tmp_path / 'coeffs.json'}"
    assert run(tmp_path, "reconstruct", "--seq", seq, "--fn", "squarewave") == 0
    d = json.loads((tmp_path / "reconstruct.json").read_text())
    assert d["oracle"]["max_error"] < 1e-3
    header = (tmp_path / "reconstruct.csv").read_text().splitlines()[0]
    assert header == "theta,value,residual,converged"


def test_conjugate_and_kernel(tmp_path):
    assert run(tmp_path, "conjugate", "--seq", "series:logkernel", "--theta", "1.5707963267948966") == 0
    d = json.loads((tmp_path / "conjugate.json").read_text())
    assert d["value"][0] == pytest.approx(PI / 4, abs=1e-6)
    assert run(tmp_path, "kernel", "--rho", "0.5", "--theta1", "0", "--grid", "16") == 0
    data = read_csv(tmp_path / "kernel.csv")
    assert data.dtype.names == ("theta", "re", "im")
    assert np.all(data["re"] > 0)


def test_threshold(tmp_path):
    assert run(tmp_path, "threshold", "--A", "0.1") == 0
    assert json.loads((tmp_path / "threshold.json").read_text())["k_m"] == 36


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"fn": "squarewave", "K": 4, "kind": "sine"}))
    assert main(["coeffs", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    assert len(json.loads((tmp_path / "coeffs.json").read_text())["values"]) == 4


def test_identical_config_gives_identical_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["reconstruct", "--seq", "series:squarewave", "--grid", "32", "--out", str(out)]) == 0
    assert (a / "reconstruct.csv").read_bytes() == (b / "reconstruct.csv").read_bytes()
    assert (a / "reconstruct.json").read_bytes() == (b / "reconstruct.json").read_bytes()


@pytest.mark.parametrize("args", [["decompose", "--fn", "nope"], ["decompose"],
                                  ["coeffs", "--fn", "squarewave", "--grid", "8"],
                                  ["coeffs", "--fn", "cos", "--tol", "0"],
                                  ["threshold", "--A", "-1"],
                                  ["reconstruct", "--seq", "file:/nonexistent.json"]])
def test_errors_exit_one(tmp_path, args, capsys):
    assert run(tmp_path, *args) == 1
    assert "error" in capsys.readouterr().err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("coeffs", grid=15)
    with pytest.raises(ValueError):
        RunConfig("coeffs", fn="cos", table="t.json")
