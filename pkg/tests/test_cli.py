import json
import os
import subprocess
import sys

import pytest

from eulgen.cli import main


def _write(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return str(p)


CFG = {"grid": {"d": 2, "n": 8}, "t_end": 0.04, "dt": 0.02,
       "initial": {"pi": {"preset": "shear_layer", "amplitude": 0.1}}, "output": {"snapshot_every": 1}}


def test_simulate_ok(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--config", _write(tmp_path, CFG), "--out", str(out)]) == 0
    assert (out / "diagnostics.csv").exists() and (out / "step_0000002_tau.eulg").exists()
    assert "advisory dt" in capsys.readouterr().err


def test_simulate_config_error_exit_2(tmp_path):
    bad = dict(CFG, extra=1)
    assert main(["simulate", "--config", _write(tmp_path, bad), "--out", str(tmp_path / "o")]) == 2
    assert main(["simulate", "--config", str(tmp_path / "missing.json"), "--out", str(tmp_path / "o")]) == 2
    (tmp_path / "broken.json").write_text("{")
    assert main(["simulate", "--config", str(tmp_path / "broken.json"), "--out", str(tmp_path / "o")]) == 2


def test_simulate_runtime_error_exit_1(tmp_path, capsys):
    bad = {"grid": {"d": 2, "n": 8}, "t_end": 50.0, "dt": 2.0,
           "initial": {"pi": {"preset": "fourier_random", "max_mode": 1, "amplitude": 3.0}}}
    assert main(["simulate", "--config", _write(tmp_path, bad), "--out", str(tmp_path / "o")]) == 1
    assert "aborted" in capsys.readouterr().err


def test_simulate_output_error_exit_1(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["simulate", "--config", _write(tmp_path, CFG), "--out", str(blocker / "sub")]) == 1


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["verify", "--suite", "nope", "--grid", "8"],
    ["verify", "--suite", "generic", "--grid", "7"], ["verify", "--suite", "generic", "--grid", "a,b"],
    ["verify", "--suite", "generic", "--grid", "8", "--seed", "-1"], ["simulate", "--config", "x"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_verify_generic_with_report(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["verify", "--suite", "generic", "--grid", "16,32", "--seed", str(2 ** 64 - 1),
                 "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["passed"] and data["seed"] == 2 ** 64 - 1
    assert all(c["passed"] for c in data["checks"])
    assert "checks passed" in capsys.readouterr().out


def test_console_script_runs():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "eulgen.cli", "verify", "--suite", "nope", "--grid", "8"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 2
