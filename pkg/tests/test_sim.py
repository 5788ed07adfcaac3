import json

import numpy as np
import pytest

from eulgen.io import read_diagnostics_csv, read_state_snapshot
from eulgen.material import StateError
from eulgen.sim import ConfigError, SimConfig, SimulationError, _time_grid, initial_state, run, step
from eulgen.verify import DISSIPATIVE_MODEL, homogeneous_state, random_state, trajectory_config


def base_cfg(**over):
    cfg = {
        "grid": {"d": 2, "n": 8}, "t_end": 0.1, "dt": 0.05, "seed": 4,
        "initial": {
            "pi": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.2},
            "F": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.05, "offset": "identity"},
            "tau": {"preset": "constant", "c": 0.3},
        },
    }
    cfg.update(over)
    return cfg


def test_dt_zero_is_bitwise_identity(grid8):
    q = random_state(grid8, 1)
    assert step(q, 0.0) is q


def test_homogeneous_equilibrium_is_fixed(grid8):
    for role in ("entropy", "internal_energy"):
        q = homogeneous_state(grid8, role, DISSIPATIVE_MODEL)
        for scheme in ("euler", "rk4"):
            assert (step(q, 0.1, scheme, DISSIPATIVE_MODEL) - q).norm() == 0.0


def test_step_rejects_unknown_scheme(grid8):
    with pytest.raises(ValueError):
        step(random_state(grid8, 1), 0.1, "leapfrog")


def test_step_detects_inadmissible_state(grid8):
    q = random_state(grid8, 1, scale=20.0)
    with pytest.raises(StateError):
        step(q, 5.0, "euler")


@pytest.mark.parametrize("bad,msg", [
    ({"bogus": 1}, "unknown key"),
    ({"grid": {"d": 2, "n": 7}}, "invalid grid"),
    ({"grid": {"d": 2, "n": 8, "m": 1}}, "unknown key"),
    ({"dt": 0.0}, "dt"),
    ({"dt": "fast"}, "dt"),
    ({"t_end": -1.0}, "t_end"),
    ({"scheme": "ab2"}, "scheme"),
    ({"tau_role": "enthalpy"}, "tau_role"),
    ({"material": {"mu": -1.0}}, "invalid material"),
    ({"dissipation": {"nu_p": -1.0}}, "invalid material"),
    ({"seed": -3}, "seed"),
    ({"output": {"every": 2}}, "unknown key"),
    ({"initial": {"pi": {"c": 1.0}}}, "preset"),
])
def test_config_errors(bad, msg):
    with pytest.raises(ConfigError, match=msg):
        SimConfig.from_dict(base_cfg(**bad))


def test_missing_required_key():
    cfg = base_cfg()
    del cfg["dt"]
    with pytest.raises(ConfigError, match="missing"):
        SimConfig.from_dict(cfg)


def test_bad_initial_condition_reported_at_build():
    cfg = SimConfig.from_dict(base_cfg(initial={"pi": {"preset": "gaussian_bump"}}))
    with pytest.raises(ConfigError, match="initial.pi"):
        initial_state(cfg)
    cfg = SimConfig.from_dict(base_cfg(initial={"tau": {"preset": "constant", "c": 0.0, "quantity": "internal_energy"}}))
    with pytest.raises(ConfigError, match="admissible"):
        initial_state(cfg)


def test_initial_tau_quantity_is_converted():
    raw = base_cfg(tau_role="internal_energy")
    qe = initial_state(SimConfig.from_dict(raw))
    qs = initial_state(SimConfig.from_dict(base_cfg()))
    from eulgen.generic import to_entropy_state
    assert np.allclose(to_entropy_state(qe).tau.data, qs.tau.data, atol=1e-14)


def test_time_grid_ends_exactly():
    assert _time_grid(0.1, 0.03)[-1] == 0.1 and len(_time_grid(0.1, 0.03)) == 5
    assert _time_grid(0.0, 0.1) == [0.0]
    assert _time_grid(0.3, 0.1) == [0.0, 0.1, 0.2, 0.3]


def test_run_outputs_and_determinism(tmp_path):
    cfg = SimConfig.from_dict(base_cfg(output={"snapshot_every": 1}))
    r1 = run(cfg, tmp_path / "a")
    r2 = run(cfg, tmp_path / "b")
    a = (tmp_path / "a" / "diagnostics.csv").read_bytes()
    assert a == (tmp_path / "b" / "diagnostics.csv").read_bytes()
    rows = read_diagnostics_csv(tmp_path / "a" / "diagnostics.csv")
    assert len(rows) == 3 and rows[-1]["t"] == 0.1 and rows[0]["E_drift_rel"] == 0.0
    assert len(r1.snapshots) == 3
    meta, fields = read_state_snapshot(r1.snapshots[-1])
    assert meta["config_hash"] == cfg.hash and meta["step"] == 2
    assert np.array_equal(fields["F"].data, r2.final.F.data)


def test_run_failure_keeps_last_good_state(tmp_path):
    raw = base_cfg(dt=2.0, t_end=50.0)
    raw["initial"]["pi"]["amplitude"] = 3.0
    cfg = SimConfig.from_dict(raw)
    with pytest.raises(SimulationError) as info:
        run(cfg, tmp_path)
    assert info.value.t == 0.0 and info.value.step == 0
    assert "smaller dt" in str(info.value)
    assert len(read_diagnostics_csv(tmp_path / "diagnostics.csv")) == 1


def test_sample_configs_load():
    from pathlib import Path
    root = Path(__file__).resolve().parents[1] / "configs"
    for p in sorted(root.glob("*.json")):
        cfg = SimConfig.from_file(p)
        initial_state(cfg)


def test_short_trajectory_conserves_energy():
    res = run(trajectory_config(8, 0.02, 0.2))
    assert max(abs(r["E_drift_rel"]) for r in res.rows) < 1e-9
