import json
import subprocess
import sys

import pytest

from twistorpoly.cli import batch, dumps, main, run, run_safe
from twistorpoly.errors import MalformedInput, UnknownCommand

P_N = [[0, 0]] * 5 + [[1, 0]]
Q_I = {"coeffs": [[0, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0]]}
Q_J = {"coeffs": [[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]}

REPRESENTATIVES = [
    ([[0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [1, 0]], "RealNull"),
    ([[-1, 0], [0, 0], [0, -1], [0, 1], [0, 0], [1, 0]], "NonRealIsotropic"),
    ([[1, 0], [0, 0], [0, 0], [0, 0], [0, 0], [1, 0]], "RealTimelike"),
    ([[1, 0], [0, 0], [0, 0], [0, 0], [0, 0], [-1, 0]], "RealSpacelike"),
    ([[0, 0], [0, 0], [0, -1], [0, 1], [0, 0], [1, 0]], "NonRealDegenerate"),
    ([[0, 1], [0, 0], [0, 0], [0, 0], [0, 0], [1, 0]], "NonRealLorentzian"),
    ([[1, 0], [0, 0], [0, -0.5], [0, 0.5], [0, 0], [-1, 0]], "NonRealNegativeDefinite"),
]


def test_classify_point():
    report = run({"command": "classify-point", "payload": {"zeta": P_N}})
    assert report["result"]["tag"] == "RealNull"
    assert report["tolerance"] == 1e-9 and report["seed"] == 0
    assert set(report) == {"command", "inputs", "result", "diagnostics",
                           "tolerance", "seed", "version"}


def test_classify_hyperplane():
    report = run({"command": "classify-hyperplane",
                  "payload": {"z": [[1, 0], [0, 0], [0, 0.5], [0, -0.5], [0, 0], [-1, 0]]}})
    assert report["result"] == {"tag": "NonRealNegativeDefinite", "param": pytest.approx(0.5)}


def test_normal_form_of_q():
    report = run({"command": "normal-form", "payload": {"coeffs": [[0, 0, 0, 0], [1, 0, 0, 0]]}})
    assert report["result"]["normal_form"]["monic_coeffs"] == []
    assert report["result"]["witness"] == {"alpha": [1, 0, 0, 0], "beta": [0, 0, 0, 0],
                                           "gamma": [0, 0, 0, 0], "delta": [1, 0, 0, 0]}


def test_orbit_equal():
    report = run({"command": "orbit-equal", "payload": {"f": Q_I, "h": Q_J}})
    assert report["result"]["equal"] is True
    assert report["result"]["eta"] == pytest.approx([0.7071067811865476, 0, 0, 0.7071067811865476])


def test_lift_and_planarity():
    report = run({"command": "lift", "payload": {"poly": Q_I, "samples": [[0.5, 1], [0, 2]]}})
    assert len(report["result"]["points"]) == 2
    assert report["diagnostics"]["max_abs_q"] < 1e-12
    report = run({"command": "planarity", "payload": {"poly": Q_I}, "seed": 7})
    assert report["result"]["r"] == 2
    assert report["result"]["types"] == ["A_minus", "A_QminusN", "A_nd"]
    assert report["seed"] == 7
    family = run({"command": "hyperplane-family", "payload": {"poly": Q_I}})
    assert family["result"]["dimension"] == 2
    assert family["diagnostics"]["max_residual"] < 1e-9


def test_act_and_admissible():
    T = {"alpha": [1, 0, 0, 0], "beta": [0, 1, 0, 0], "gamma": [0, 0, 0, 0],
         "delta": [1, 0, 0, 0]}
    q = {"coeffs": [[0, 0, 0, 0], [1, 0, 0, 0]]}
    report = run({"command": "admissible", "payload": {"T": T, "poly": q}})
    assert report["result"]["admissible"] is False
    assert [0.0, 1.0] in [pytest.approx(r) for r in report["diagnostics"]["roots"]]
    report = run({"command": "act", "payload": {"T": T, "poly": q, "samples": [[0, 2]]}})
    assert report["result"]["poly"] is None
    lower = dict(T, beta=[0, 0, 0, 0], gamma=[1, 0, 0, 0])
    report = run({"command": "act", "payload": {"T": lower, "poly": q}})
    assert report["result"]["poly"] == {"coeffs": [[1, 0, 0, 0], [1, 0, 0, 0]]}


def test_errors_and_exit_codes():
    with pytest.raises(UnknownCommand):
        run({"command": "nope"})
    with pytest.raises(MalformedInput):
        run({"command": "classify-point", "payload": {"zeta": [[1, 0]]}})
    with pytest.raises(MalformedInput):
        run({"command": "classify-point", "payload": {"zeta": P_N}, "tolerance": -1})
    _, code = run_safe({"command": "normal-form", "payload": {"coeffs": [[1, 0, 0, 0]]}})
    assert code == 2
    record, code = run_safe({"command": "lift", "payload": {}})
    assert code == 1 and record["error"]["type"] == "MalformedInput"


def test_deterministic_output():
    request = {"command": "planarity", "payload": {"poly": {"coeffs": [[1, 0, 0, 0]] * 4}}}
    assert dumps(run(request, seed=3)) == dumps(run(request, seed=3))


def test_batch(tmp_path):
    assert batch([]) == []
    reports = batch([{"command": "classify-point", "payload": {"zeta": z}}
                     for z, _ in REPRESENTATIVES])
    assert [r["result"]["tag"] for r in reports] == [tag for _, tag in REPRESENTATIVES]
    mixed = batch([{"command": "classify-point", "payload": {"zeta": P_N}},
                   {"command": "bogus"},
                   "not a request"])
    assert mixed[0]["result"]["tag"] == "RealNull"
    assert mixed[1]["error"]["type"] == "UnknownCommand"
    assert mixed[2]["error"]["kind"] == "malformed"


def test_main_entry_point(tmp_path, capsys):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"zeta": P_N}))
    out = tmp_path / "out.json"
    assert main(["--in", str(src), "--out", str(out), "classify-point"]) == 0
    assert json.loads(out.read_text())["result"]["tag"] == "RealNull"

    path = tmp_path / "batch.json"
    path.write_text(json.dumps([{"command": "classify-point", "payload": {"zeta": P_N}},
                                {"command": "x"}]))
    assert main(["batch", str(path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert main(["batch", str(tmp_path / "missing.json")]) == 1
    capsys.readouterr()

    src.write_text("{not json")
    assert main(["--in", str(src), "lift"]) == 1
    src.write_text(json.dumps({"coeffs": [[2, 0, 0, 0]]}))
    assert main(["--in", str(src), "normal-form"]) == 2


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "twistorpoly.cli", "--tolerance", "1e-8",
                           "classify-point"], input=json.dumps({"zeta": P_N}),
                          capture_output=True, text=True, check=True)
    report = json.loads(proc.stdout)
    assert report["tolerance"] == 1e-8
    proc = subprocess.run([sys.executable, "-m", "twistorpoly.cli", "--version"],
                          capture_output=True, text=True)
    assert "schema" in proc.stdout
