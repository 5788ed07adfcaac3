"""Configuration, explicit time stepping and the simulation driver."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import io as eio
from . import pointwise as pw
from .field import Grid, Kind, make_grid, sample_field
from .generic import velocity_and_density
from .material import DissipationSpec, MaterialModel, StateError, energy_to_entropy, entropy_to_energy
from .state import ROLES, State, pair
from .thermo import differentials, rhs, total_energy, total_entropy, validate_state

SCHEMES = ("euler", "rk4")
FIELD_KINDS = {"pi": Kind.Momentum, "F": Kind.TwoPoint, "Fp": Kind.IntensiveMatrix, "tau": Kind.ExtensiveScalar}
_SEED_OFFSETS = {"pi": 0, "F": 1, "Fp": 2, "tau": 3}
_DEFAULT_IC = {
    "pi": {"preset": "constant", "c": 0.0},
    "F": {"preset": "constant", "c": 0.0, "offset": "identity"},
    "Fp": {"preset": "constant", "c": 0.0, "offset": "identity"},
    "tau": {"preset": "constant", "c": 0.0, "quantity": "entropy"},
}


class ConfigError(ValueError):
    pass


class SimulationError(RuntimeError):
    """Stepping produced an inadmissible state; carries the last good one."""

    def __init__(self, message, last_state, t, step):
        super().__init__(message)
        self.last_state = last_state
        self.t = t
        self.step = step


def _strict(section: dict, allowed, where: str) -> dict:
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")
    return section


@dataclass(frozen=True)
class SimConfig:
    grid: Grid
    model: MaterialModel
    role: str
    initial: dict
    t_end: float
    dt: float
    scheme: str = "rk4"
    snapshot_every: int = 0
    seed: int = 0
    raw: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ConfigError(f"tau_role must be one of {ROLES}, got {self.role!r}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not (isinstance(self.dt, (int, float)) and self.dt > 0 and math.isfinite(self.dt)):
            raise ConfigError(f"dt must be a positive number, got {self.dt!r}")
        if not (isinstance(self.t_end, (int, float)) and self.t_end >= 0 and math.isfinite(self.t_end)):
            raise ConfigError(f"t_end must be a non-negative number, got {self.t_end!r}")
        if self.snapshot_every < 0:
            raise ConfigError("output.snapshot_every must be >= 0")

    @property
    def hash(self) -> str:
        return eio.config_hash(self.raw)

    @classmethod
    def from_dict(cls, cfg: dict) -> "SimConfig":
        _strict(cfg, {"grid", "material", "dissipation", "tau_role", "initial", "t_end", "dt",
                      "scheme", "output", "seed"}, "config")
        for key in ("grid", "t_end", "dt"):
            if key not in cfg:
                raise ConfigError(f"missing required key {key!r}")
        g = _strict(cfg["grid"], {"d", "n", "L"}, "grid")
        try:
            grid = make_grid(int(g["d"]), int(g["n"]), float(g.get("L", 2.0 * math.pi)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid grid: {exc}") from exc
        mat_keys = {f.name for f in fields(MaterialModel)} - {"dissipation"}
        diss_keys = {f.name for f in fields(DissipationSpec)}
        mat = _strict(cfg.get("material", {}), mat_keys, "material")
        diss = _strict(cfg.get("dissipation", {}), diss_keys, "dissipation")
        try:
            model = MaterialModel(**{k: float(v) for k, v in mat.items()},
                                  dissipation=DissipationSpec(**{k: float(v) for k, v in diss.items()}))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid material: {exc}") from exc
        init = _strict(cfg.get("initial", {}), set(FIELD_KINDS), "initial")
        initial = {}
        for name in FIELD_KINDS:
            spec = init.get(name, _DEFAULT_IC[name])
            if not isinstance(spec, dict) or "preset" not in spec:
                raise ConfigError(f"initial.{name} must be an object with a 'preset' key")
            initial[name] = dict(spec)
        out = _strict(cfg.get("output", {}), {"snapshot_every"}, "output")
        seed = cfg.get("seed", 0)
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")
        return cls(grid=grid, model=model, role=cfg.get("tau_role", "entropy"), initial=initial,
                   t_end=cfg["t_end"], dt=cfg["dt"], scheme=cfg.get("scheme", "rk4"),
                   snapshot_every=int(out.get("snapshot_every", 0)), seed=seed, raw=cfg)

    @classmethod
    def from_file(cls, path) -> "SimConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
        try:
            cfg = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(cfg)


def _sample(grid: Grid, name: str, spec: dict, seed: int):
    params = dict(spec)
    preset = params.pop("preset")
    params.pop("quantity", None)
    if preset == "fourier_random" and "seed" not in params:
        params["seed"] = seed + _SEED_OFFSETS[name]
    offset = params.pop("offset", 0.0)
    try:
        return sample_field(grid, FIELD_KINDS[name], preset, offset=offset, **params)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"initial.{name}: {exc}") from exc


def initial_state(cfg: SimConfig) -> State:
    """Build ``q(0)``; ``tau`` may be given as entropy or internal energy and is converted."""
    g = cfg.grid
    parts = {name: _sample(g, name, cfg.initial[name], cfg.seed) for name in FIELD_KINDS}
    quantity = cfg.initial["tau"].get("quantity", "entropy")
    if quantity not in ROLES:
        raise ConfigError(f"initial.tau.quantity must be one of {ROLES}, got {quantity!r}")
    F, Fp, tau = parts["F"].data, parts["Fp"].data, parts["tau"].data
    try:
        if quantity != cfg.role:
            if cfg.role == "internal_energy":
                tau = entropy_to_energy(cfg.model, F, Fp, tau)
            else:
                tau = energy_to_entropy(cfg.model, F, Fp, tau)
        q = State(parts["pi"], parts["F"], parts["Fp"], parts["tau"], cfg.role).with_tau(tau, cfg.role)
        validate_state(q, cfg.model)
    except StateError as exc:
        raise ConfigError(f"initial state is not admissible: {exc}") from exc
    return q


# --- stepping -------------------------------------------------------------------

def _rhs_checked(q, model):
    try:
        return rhs(q, model)
    except ValueError as exc:  # non-finite values inside a field
        raise StateError(str(exc)) from exc


def step(q: State, dt: float, scheme: str = "rk4", model: MaterialModel | None = None) -> State:
    """One explicit Euler or classical RK4 step; the result is validated."""
    model = MaterialModel() if model is None else model
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if dt == 0.0:
        return q
    try:
        if scheme == "euler":
            out = q + dt * _rhs_checked(q, model)
        else:
            k1 = _rhs_checked(q, model)
            k2 = _rhs_checked(q + (0.5 * dt) * k1, model)
            k3 = _rhs_checked(q + (0.5 * dt) * k2, model)
            k4 = _rhs_checked(q + dt * k3, model)
            out = q + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        validate_state(out, model)
    except ValueError as exc:
        raise StateError(f"non-finite state: {exc}") from exc
    return out


def diagnostics_row(q: State, t: float, e0: float, model: MaterialModel) -> dict:
    pt = validate_state(q, model)
    r = rhs(q, model)
    DE, DS = differentials(q, model, pt)
    e_tot = total_energy(q, model, pt)
    v, _ = velocity_and_density(q, model)
    return {
        "t": t,
        "E_total": e_tot,
        "S_total": total_entropy(q, model, pt),
        "E_drift_rel": (e_tot - e0) / abs(e0) if e0 != 0.0 else e_tot - e0,
        "S_production_rate": pair(DS, r),
        "power_residual": pair(DE, r),
        "min_theta": float(np.min(pt.theta)),
        "min_detF": float(np.min(pw.det(q.F.data))),
        "max_speed": float(np.max(np.sqrt(pw.dot(v.data, v.data)))),
    }


def advisory_dt(q: State, model: MaterialModel) -> float:
    """Rough explicit stability bound from wave speed, viscosity and conduction."""
    g = q.grid
    v, rho = velocity_and_density(q, model)
    rho_min = float(np.min(rho.data))
    c = model.wave_speed(rho_min) + float(np.max(np.abs(v.data)))
    bounds = [g.h / c]
    diss = model.dissipation
    visc = 2.0 * diss.mu_v + diss.lam_v
    if visc > 0:
        bounds.append(g.h ** 2 * rho_min / (2.0 * g.d * visc))
    if diss.kappa_heat > 0:
        pt = validate_state(q, model)
        diffusivity = diss.kappa_heat * float(np.max(pt.theta)) / model.c_v
        bounds.append(g.h ** 2 / (2.0 * g.d * diffusivity))
    return min(bounds)


@dataclass
class RunResult:
    final: State
    rows: list
    snapshots: list
    steps: int


def _time_grid(t_end: float, dt: float) -> list:
    if t_end == 0.0:
        return [0.0]
    n = max(1, int(math.ceil(t_end / dt - 1e-9)))
    return [min(k * dt, t_end) for k in range(n)] + [t_end]


def run(cfg: SimConfig, out_dir=None, q0: State | None = None) -> RunResult:
    """Integrate to ``t_end``; writes CSV and snapshots when ``out_dir`` is given.

    On an inadmissible state the diagnostics gathered so far are still
    written and :class:`SimulationError` is raised.
    """
    model = cfg.model
    q = initial_state(cfg) if q0 is None else q0
    out = None
    if out_dir is not None:
        out = Path(out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise eio.OutputError(f"cannot create output directory {out}: {exc.strerror or exc}") from exc
    times = _time_grid(float(cfg.t_end), float(cfg.dt))
    e0 = total_energy(q, model)
    rows = [diagnostics_row(q, times[0], e0, model)]
    snaps = []

    def snapshot(k, t, state):
        if out is not None and cfg.snapshot_every > 0:
            flds = {"pi": state.pi, "F": state.F, "Fp": state.Fp, "tau": state.tau}
            snaps.append(eio.write_state_snapshot(out, k, t, flds, cfg.grid, cfg.hash, state.role))

    snapshot(0, times[0], q)
    k = 0
    try:
        for k in range(1, len(times)):
            h = times[k] - times[k - 1]
            try:
                q_next = step(q, h, cfg.scheme, model)
            except StateError as exc:
                raise SimulationError(
                    f"state became inadmissible in step {k} (t={times[k - 1]:.6g} -> {times[k]:.6g}): {exc}; "
                    f"last good state at t={times[k - 1]:.6g}; try a smaller dt "
                    f"(advisory bound {advisory_dt(q, model):.3g})", q, times[k - 1], k - 1) from exc
            q = q_next
            rows.append(diagnostics_row(q, times[k], e0, model))
            if cfg.snapshot_every > 0 and (k % cfg.snapshot_every == 0 or k == len(times) - 1):
                snapshot(k, times[k], q)
    finally:
        if out is not None:
            eio.write_diagnostics_csv(out / "diagnostics.csv", rows)
    return RunResult(q, rows, snaps, len(times) - 1)
