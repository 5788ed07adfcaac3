"""Verification suites: structural identities, convergence orders, trajectory laws.

Each check returns a :class:`CheckResult`; a suite passes iff all its checks
pass. Convergence checks compute observed orders between consecutive grid
sizes. When every error of a study is already at round-off (below
``ROUNDOFF_FLOOR``) the two discretizations coincide and the order is not
measured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import pointwise as pw
from .field import Kind, make_grid, sample_field, strain_rate
from .flow import lie_via_flow
from .generic import (DEFAULT_MODEL, b_operators, jacobi_residual, ms_apply, ne_apply, ne_star_apply,
                      noninteraction_residuals, skew_residual)
from .lie import (cartan_residual, commutator, lie_derivative, lie_general_rank2)
from .material import DissipationSpec, MaterialModel, energy_to_entropy, entropy_to_energy
from .state import ROLES, CotState, EtaForces, State, pair
from .tensor import SIGNATURES, as_multilinear, interior_product
from .thermo import (differentials, kinematic_residuals, continuity_residual, rhs, stresses,
                     total_energy, total_entropy, v_diss, v_diss_closed, v_ham, v_ham_closed,
                     velocity_and_density)
from . import sim

L_DEFAULT = 2.0 * math.pi
MIN_ORDER = 1.9
ROUNDOFF_FLOOR = 1e-12
SUITES = ("lie", "generic", "thermo", "full")

# mean values keep density-like samples away from zero
_KIND_OFFSET = {Kind.ExtensiveScalar: 2.0, Kind.RdExtensive: 2.0}

DISSIPATIVE_MODEL = MaterialModel(dissipation=DissipationSpec(mu_v=0.01, lam_v=0.005, nu_p=5.0, kappa_heat=0.005))


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: {self.value:.3e} {self.detail}".rstrip()


# --- sample generators -------------------------------------------------------------

def band_limited_field(grid, kind: Kind, seed: int, amplitude: float = 1.0, max_mode: int = 1):
    """Band-limited random field; density-like kinds get a positive mean."""
    return sample_field(grid, kind, "fourier_random", offset=_KIND_OFFSET.get(kind, 0.0),
                        seed=seed, max_mode=max_mode, amplitude=amplitude)


def random_state(grid, seed: int, role: str = "entropy", model: MaterialModel = DEFAULT_MODEL,
                 scale: float = 1.0, max_mode: int = 1) -> State:
    """Admissible random state near the stress-free reference."""
    def fr(kind, s, amp, off=0.0):
        return sample_field(grid, kind, "fourier_random", offset=off, seed=s, max_mode=max_mode,
                            amplitude=amp * scale)
    pi = fr(Kind.Momentum, seed, 0.3)
    F = fr(Kind.TwoPoint, seed + 1, 0.1, "identity")
    Fp = fr(Kind.IntensiveMatrix, seed + 2, 0.05, "identity")
    s = fr(Kind.ExtensiveScalar, seed + 3, 0.2, 0.5)
    q = State(pi, F, Fp, s, "entropy")
    if role == "internal_energy":
        q = q.with_tau(entropy_to_energy(model, F.data, Fp.data, s.data), role)
    return q


def random_cotstate(grid, seed: int, max_mode: int = 1, amplitude: float = 1.0) -> CotState:
    kinds = CotState._kinds
    return CotState(*(sample_field(grid, k, "fourier_random", seed=seed + i, max_mode=max_mode,
                                   amplitude=amplitude) for i, k in enumerate(kinds)))


def constant_cotstate(grid, values=(0.3, -0.2, 0.1, 0.7)) -> CotState:
    kinds = CotState._kinds
    return CotState(*(sample_field(grid, k, "constant", c=c) for k, c in zip(kinds, values)))


def homogeneous_state(grid, role: str = "entropy", model: MaterialModel = DEFAULT_MODEL,
                      s0: float = 0.5) -> State:
    F = sample_field(grid, Kind.TwoPoint, "constant", c=0.0, offset="identity")
    Fp = sample_field(grid, Kind.IntensiveMatrix, "constant", c=0.0, offset="identity")
    pi = sample_field(grid, Kind.Momentum, "constant", c=0.0)
    s = sample_field(grid, Kind.ExtensiveScalar, "constant", c=s0)
    q = State(pi, F, Fp, s, "entropy")
    if role == "internal_energy":
        q = q.with_tau(entropy_to_energy(model, F.data, Fp.data, s.data), role)
    return q


def entropy_view(q: State, model: MaterialModel) -> State:
    if q.role == "entropy":
        return q
    return q.with_tau(energy_to_entropy(model, q.F.data, q.Fp.data, q.tau.data), "entropy")


# --- convergence helpers -----------------------------------------------------------

def observed_orders(errors, sizes) -> list:
    out = []
    for (e0, n0), (e1, n1) in zip(zip(errors, sizes), zip(errors[1:], sizes[1:])):
        out.append(math.log(e0 / e1) / math.log(n1 / n0) if e0 > 0 and e1 > 0 else float("inf"))
    return out


def convergence_check(name, errors, sizes, min_order=MIN_ORDER, floor=ROUNDOFF_FLOOR) -> CheckResult:
    errs = [float(e) for e in errors]
    if max(errs) <= floor:
        return CheckResult(name, True, max(errs), f"(all errors at round-off; sizes {list(sizes)})")
    orders = observed_orders(errs, sizes)
    ok = len(orders) > 0 and min(orders) >= min_order
    detail = "errors " + ", ".join(f"{e:.2e}" for e in errs) + " orders " + ", ".join(f"{o:.2f}" for o in orders)
    if not orders:
        detail += " (need at least two sizes)"
    return CheckResult(name, ok, min(orders) if orders else float("nan"), detail)


def _rel(a, b) -> float:
    return (a - b).norm() / max(a.norm(), np.finfo(float).tiny)


# --- lie suite ------------------------------------------------------------------------

def lie_oracle_errors(kind: Kind, sizes, seed: int, d: int = 2):
    errs = []
    for n in sizes:
        g = make_grid(d, n, L_DEFAULT)
        v = band_limited_field(g, Kind.Vector, seed, 0.5)
        A = band_limited_field(g, kind, seed + 1)
        a = lie_derivative(v, A)
        errs.append(_rel(a, lie_via_flow(v, A)))
    return errs


def commutator_errors(kind: Kind, sizes, seed: int, d: int = 2):
    errs = []
    for n in sizes:
        g = make_grid(d, n, L_DEFAULT)
        v = band_limited_field(g, Kind.Vector, seed)
        w = band_limited_field(g, Kind.Vector, seed + 7)
        A = band_limited_field(g, kind, seed + 1)
        lvw = lie_derivative(v, lie_derivative(w, A))
        lwv = lie_derivative(w, lie_derivative(v, A))
        lc = lie_derivative(commutator(v, w), A)
        errs.append((lvw - lwv - lc).norm() / (lvw.norm() + lwv.norm() + lc.norm()))
    return errs


def vector_jacobi_errors(sizes, seed: int, d: int = 2):
    errs = []
    for n in sizes:
        g = make_grid(d, n, L_DEFAULT)
        u, v, w = (band_limited_field(g, Kind.Vector, seed + 3 * i) for i in range(3))
        cyc = (commutator(u, commutator(v, w)) + commutator(v, commutator(w, u))
               + commutator(w, commutator(u, v)))
        errs.append(cyc.norm() / (u.norm() * v.norm() * w.norm()))
    return errs


def product_rule_errors(kind: Kind, sizes, seed: int, d: int = 2):
    """``L_v(i_w A) - i_w(L_v A) - i_{L_v w} A`` for kinds with a vector slot."""
    errs = []
    for n in sizes:
        g = make_grid(d, n, L_DEFAULT)
        v = band_limited_field(g, Kind.Vector, seed)
        w = band_limited_field(g, Kind.Vector, seed + 5)
        A = as_multilinear(band_limited_field(g, kind, seed + 1))
        lhs = lie_general_rank2(v, interior_product(w, A))
        t1 = interior_product(w, lie_general_rank2(v, A))
        t2 = interior_product(lie_derivative(v, w), A)
        res = lhs.data - t1.data - t2.data
        scale = np.sqrt(np.sum(lhs.data ** 2)) + np.sqrt(np.sum(t1.data ** 2)) + np.sqrt(np.sum(t2.data ** 2))
        errs.append(float(np.sqrt(np.sum(res ** 2)) / scale))
    return errs


def cartan_errors(sizes, seed: int, d: int = 2):
    errs = []
    for n in sizes:
        g = make_grid(d, n, L_DEFAULT)
        v = band_limited_field(g, Kind.Vector, seed)
        beta = band_limited_field(g, Kind.Covector, seed + 1)
        errs.append(cartan_residual(v, beta).norm() / lie_derivative(v, beta).norm())
    return errs


def strain_rate_discrepancy(n: int, seed: int, d: int = 2) -> float:
    g = make_grid(d, n, L_DEFAULT)
    v = band_limited_field(g, Kind.Vector, seed)
    eye = sample_field(g, Kind.OpVC, "constant", c=0.0, offset="identity")
    return float(np.max(np.abs(lie_derivative(v, eye).data - 2.0 * strain_rate(v).data)))


def suite_lie(sizes, seed: int) -> list:
    sizes = sorted(sizes)
    out = []
    for kind in Kind:
        errs = lie_oracle_errors(kind, sizes, seed)
        res = convergence_check(f"lie oracle agreement {kind.value}", errs, sizes)
        if 64 in sizes and errs[sizes.index(64)] > 5e-3:
            res.passed = False
            res.detail += f" (n=64 error {errs[sizes.index(64)]:.2e} > 5e-3)"
        out.append(res)
    for kind in Kind:
        out.append(convergence_check(f"commutator rule {kind.value}", commutator_errors(kind, sizes, seed), sizes))
    out.append(convergence_check("vector-field Jacobi identity", vector_jacobi_errors(sizes, seed), sizes))
    for kind in (Kind.Covector, Kind.OpCC, Kind.OpVC):
        out.append(convergence_check(f"contraction product rule {kind.value}",
                                     product_rule_errors(kind, sizes, seed), sizes))
    out.append(convergence_check("Cartan formula residual", cartan_errors(sizes, seed), sizes))
    sr = max(strain_rate_discrepancy(n, seed) for n in sizes)
    out.append(CheckResult("identity OpVC Lie derivative = 2 strain rate", sr <= 1e-14, sr))
    g = make_grid(2, sizes[0], L_DEFAULT)
    v = band_limited_field(g, Kind.Vector, seed)
    same = all(np.array_equal(lie_derivative(v, band_limited_field(g, k, seed + 2)).data,
                              lie_general_rank2(v, band_limited_field(g, k, seed + 2)).data) for k in SIGNATURES)
    out.append(CheckResult("general multilinear rule = specialized rules (bitwise)", same, 0.0 if same else 1.0))
    w = band_limited_field(g, Kind.Vector, seed + 9)
    anti = np.array_equal(commutator(v, w).data, -commutator(w, v).data)
    out.append(CheckResult("commutator antisymmetry (bitwise)", anti, 0.0 if anti else 1.0))
    return out


# --- generic suite --------------------------------------------------------------------

def jacobi_errors(sizes, seed: int):
    errs = []
    for n in sizes:
        g = make_grid(2, n, L_DEFAULT)
        q = random_state(g, seed)
        zs = [random_cotstate(g, seed + 10 * i) for i in range(1, 4)]
        errs.append(jacobi_residual(q, *zs))
    return errs


def suite_generic(sizes, seed: int, trials: int = 10, model: MaterialModel = DISSIPATIVE_MODEL) -> list:
    sizes = sorted(sizes)
    out = []
    n0 = sizes[0]
    g = make_grid(2, n0, L_DEFAULT)
    mm = max(1, n0 // 8)
    for role in ROLES:
        worst = 0.0
        for t in range(trials):
            q = random_state(g, seed + 100 * t, role, model)
            worst = max(worst, skew_residual(q, random_cotstate(g, seed + 100 * t + 1, mm),
                                             random_cotstate(g, seed + 100 * t + 5, mm), model))
        out.append(CheckResult(f"skew-symmetry of J ({role}, {trials} trials)", worst <= 1e-10, worst))
    out.append(convergence_check("Jacobi identity of J", jacobi_errors(sizes, seed), sizes))
    q_h = homogeneous_state(g)
    c = constant_cotstate(g)
    jc = jacobi_residual(q_h, c, constant_cotstate(g, (0.1, 0.4, -0.3, 0.2)),
                         constant_cotstate(g, (-0.5, 0.2, 0.6, -0.1)))
    out.append(CheckResult("Jacobi residual for constant inputs", jc <= 1e-13, jc))
    for role in ROLES:
        q = random_state(g, seed + 7, role, model)
        first, second = noninteraction_residuals(q, model)
        out.append(CheckResult(f"non-interaction J DS = 0 ({role})", first <= 1e-10, first))
        out.append(CheckResult(f"non-interaction R*(lambda DE) = 0 ({role})", second <= 1e-12, second))
        DE, DS = differentials(q, model)
        eta = ne_star_apply(q, DE, model)
        dev = max(float(np.max(np.abs(eta.eta_m.data))), float(np.max(np.abs(eta.eta_p.data))),
                  float(np.max(np.abs(eta.eta_t.data - 1.0))))
        out.append(CheckResult(f"N_E* DE = e_tau ({role})", dev <= 1e-12, dev))
        out.append(driving_force_check(q, model))
        out.append(ne_adjoint_check(q, seed, model))
    out.append(b_adjoint_check(g, seed))
    return out


def driving_force_check(q: State, model: MaterialModel) -> CheckResult:
    _, DS = differentials(q, model)
    eta = ne_star_apply(q, DS, model)
    _, sigma_p, _ = stresses(q, model)
    from .generic import constitutive
    theta = constitutive(q, model).theta
    v, _ = velocity_and_density(q, model)
    ref = (-strain_rate(v).data / theta, -sigma_p.data / theta, 1.0 / theta)
    dev = max(float(np.max(np.abs(a - b))) for a, b in zip(eta.arrays(), ref))
    return CheckResult(f"driving forces N_E* DS ({q.role})", dev <= 1e-12, dev)


def ne_adjoint_check(q: State, seed: int, model: MaterialModel) -> CheckResult:
    g = q.grid
    z = random_cotstate(g, seed + 31)
    em = pw.sym(band_limited_field(g, Kind.OpCV, seed + 40).data)
    eta = EtaForces.from_arrays(g, (em, band_limited_field(g, Kind.IntensiveMatrix, seed + 41).data,
                                    band_limited_field(g, Kind.IntensiveScalar, seed + 42).data))
    a = pair(z, ne_apply(q, eta, model))
    b = pair(ne_star_apply(q, z, model), eta)
    rel = abs(a - b) / max(abs(a), abs(b), np.finfo(float).tiny)
    return CheckResult(f"N_E / N_E* adjointness ({q.role})", rel <= 1e-12, rel)


def b_adjoint_check(g, seed: int) -> CheckResult:
    from .lie import lie_array
    worst = 0.0
    X = {"ve": band_limited_field(g, Kind.TwoPoint, seed + 50), "in": band_limited_field(g, Kind.IntensiveMatrix, seed + 51),
         "ex": band_limited_field(g, Kind.ExtensiveScalar, seed + 52)}
    lie_kind = {"ve": Kind.TwoPoint, "in": Kind.IntensiveMatrix, "ex": Kind.ExtensiveScalar}
    xi = {"ve": band_limited_field(g, Kind.TwoPoint, seed + 53), "in": band_limited_field(g, Kind.IntensiveMatrix, seed + 54),
          "ex": band_limited_field(g, Kind.IntensiveScalar, seed + 55)}
    v = band_limited_field(g, Kind.Vector, seed + 56)
    for which in ("ve", "in", "ex"):
        b = b_operators(X[which], xi[which], which)
        lhs = g.cell_volume * float(np.sum(v.data * b.data))
        rhs_ = g.cell_volume * float(np.sum(xi[which].data * lie_array(lie_kind[which], v.data, X[which].data, g)))
        worst = max(worst, abs(lhs - rhs_) / max(abs(lhs), abs(rhs_)))
    return CheckResult("B operators are adjoint to Lie derivatives", worst <= 1e-12, worst)


# --- thermo suite ----------------------------------------------------------------------

def fd_differential_errors(q: State, model: MaterialModel, directions: int, seed: int,
                           eps_sweep=(1e-3, 1e-4, 1e-5, 1e-6)):
    """Worst relative mismatch of ``<DE, dq>`` / ``<DS, dq>`` against central differences.

    For each direction the best step of the sweep is used.
    """
    g = q.grid
    DE, DS = differentials(q, model)
    worst = {"E": 0.0, "S": 0.0}
    for k in range(directions):
        dq = random_state(g, seed + 17 * k, "entropy", model) - random_state(g, seed + 17 * k + 9, "entropy", model)
        dq = State(dq.pi, dq.F, dq.Fp, dq.tau, q.role)
        for key, fn, D in (("E", total_energy, DE), ("S", total_entropy, DS)):
            exact = pair(D, dq)
            best = math.inf
            for eps in eps_sweep:
                fd = (fn(q + eps * dq, model) - fn(q - eps * dq, model)) / (2.0 * eps)
                best = min(best, abs(fd - exact) / max(abs(exact), np.finfo(float).tiny))
            worst[key] = max(worst[key], best)
    return worst


def balance_residuals(q: State, model: MaterialModel):
    """``(|<DE, rhs>| normalized, <DS, rhs>)``."""
    r = rhs(q, model)
    DE, DS = differentials(q, model)
    power = abs(pair(DE, r)) / max(DE.norm() * r.norm(), np.finfo(float).tiny)
    return power, pair(DS, r)


def closed_form_errors(which: str, role: str, sizes, seed: int, model: MaterialModel):
    composed, closed = {"ham": (v_ham, v_ham_closed), "diss": (v_diss, v_diss_closed)}[which]
    errs = []
    for n in sizes:
        g = make_grid(2, n, L_DEFAULT)
        q = random_state(g, seed, role, model)
        errs.append(_rel(composed(q, model), closed(q, model)))
    return errs


def hamiltonian_trajectory(n: int, seed: int, steps: int = 5, dt: float = 0.01, role: str = "entropy"):
    """States along a short non-dissipative RK4 trajectory."""
    model = MaterialModel()
    g = make_grid(2, n, L_DEFAULT)
    q = random_state(g, seed, role, model)
    states = [q]
    for _ in range(steps):
        q = sim.step(q, dt, "rk4", model)
        states.append(q)
    return states, model


def kinematic_errors(sizes, seed: int):
    split, cont = [], []
    for n in sizes:
        states, model = hamiltonian_trajectory(n, seed)
        s_max = c_max = 0.0
        for q in states:
            qd = rhs(q, model)
            res, _ = kinematic_residuals(q, qd, model)
            s_max = max(s_max, res.norm())
            c_max = max(c_max, continuity_residual(q, qd, model).norm())
        split.append(s_max)
        cont.append(c_max)
    return split, cont


def role_rhs_discrepancy(n: int, seed: int, model: MaterialModel) -> float:
    """``rhs`` in energy coordinates vs the transformed entropy-coordinate ``rhs``."""
    g = make_grid(2, n, L_DEFAULT)
    qe = random_state(g, seed, "internal_energy", model)
    qs = entropy_view(qe, model)
    re = rhs(qe, model)
    return _rel(re, ms_apply(qe, rhs(qs, model), model))


def suite_thermo(sizes, seed: int, trials: int = 10, model: MaterialModel = DISSIPATIVE_MODEL) -> list:
    sizes = sorted(sizes)
    out = []
    g = make_grid(2, sizes[0], L_DEFAULT)
    for role in ROLES:
        q = random_state(g, seed, role, model)
        worst = fd_differential_errors(q, model, 5, seed)
        out.append(CheckResult(f"DE vs finite differences ({role})", worst["E"] <= 1e-6, worst["E"]))
        out.append(CheckResult(f"DS vs finite differences ({role})", worst["S"] <= 1e-6, worst["S"]))
        pw_max, s_min = 0.0, math.inf
        for t in range(trials):
            p, s = balance_residuals(random_state(g, seed + 13 * t, role, model), model)
            pw_max, s_min = max(pw_max, p), min(s_min, s)
        out.append(CheckResult(f"power balance <DE, rhs> ({role})", pw_max <= 1e-10, pw_max))
        out.append(CheckResult(f"entropy production <DS, rhs> ({role})", s_min >= -1e-12, s_min))
        for which in ("ham", "diss"):
            out.append(convergence_check(f"composed vs closed-form v_{which} ({role})",
                                         closed_form_errors(which, role, sizes, seed, model), sizes))
        _, frame = kinematic_residuals(q, rhs(q, model), model)
        out.append(CheckResult(f"frame indifference asymmetry ({role})", max(frame) <= 1e-12, max(frame)))
    split, cont = kinematic_errors(sizes, seed)
    out.append(convergence_check("elastic/plastic rate split residual", split, sizes))
    out.append(convergence_check("continuity equation residual", cont, sizes))
    out.append(convergence_check("role equivalence of rhs after change of variables",
                                 [role_rhs_discrepancy(n, seed, model) for n in sizes], sizes))
    return out


# --- trajectory checks (full suite) ------------------------------------------------------

def trajectory_config(n: int, dt: float, t_end: float, role: str = "entropy", dissipation=None,
                      seed: int = 3) -> "sim.SimConfig":
    cfg = {
        "grid": {"d": 2, "n": n}, "t_end": t_end, "dt": dt, "scheme": "rk4", "seed": seed, "tau_role": role,
        "initial": {
            "pi": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.3},
            "F": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.1, "offset": "identity"},
            "Fp": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.05, "offset": "identity"},
            "tau": {"preset": "fourier_random", "max_mode": 1, "amplitude": 0.2, "offset": 0.5,
                    "quantity": "entropy"},
        },
    }
    if dissipation is not None:
        cfg["dissipation"] = dissipation
    return sim.SimConfig.from_dict(cfg)


DISSIPATION_PARAMS = {"mu_v": 0.01, "lam_v": 0.005, "nu_p": 5.0, "kappa_heat": 0.005}


def energy_drift_study(n: int = 16, t_end: float = 3.0, steps: int = 200):
    drifts = []
    for k in (1, 2):
        res = sim.run(trajectory_config(n, t_end / (steps * k), t_end))
        drifts.append(max(abs(r["E_drift_rel"]) for r in res.rows))
    return drifts


def dissipative_run(n: int = 16, t_end: float = 3.0, steps: int = 200):
    res = sim.run(trajectory_config(n, t_end / steps, t_end, dissipation=DISSIPATION_PARAMS))
    S = [r["S_total"] for r in res.rows]
    return min(np.diff(S)), max(abs(r["E_drift_rel"]) for r in res.rows), res


def role_trajectory_discrepancy(n: int, dt: float, t_end: float = 0.5) -> float:
    a = sim.run(trajectory_config(n, dt, t_end, "entropy", DISSIPATION_PARAMS))
    b = sim.run(trajectory_config(n, dt, t_end, "internal_energy", DISSIPATION_PARAMS))
    model = trajectory_config(n, dt, t_end, dissipation=DISSIPATION_PARAMS).model
    return _rel(a.final, entropy_view(b.final, model))


def equilibrium_checks(n: int = 16):
    g = make_grid(2, n, L_DEFAULT)
    out = []
    for role in ROLES:
        q = homogeneous_state(g, role, DISSIPATIVE_MODEL)
        r = rhs(q, DISSIPATIVE_MODEL)
        nrm = r.norm()
        q1 = sim.step(q, 0.01, "rk4", DISSIPATIVE_MODEL)
        moved = (q1 - q).norm()
        out.append(CheckResult(f"homogeneous equilibrium |rhs| ({role})", nrm <= 1e-12, nrm))
        out.append(CheckResult(f"homogeneous equilibrium fixed under stepping ({role})", moved <= 1e-12, moved))
    return out


def suite_full(sizes, seed: int) -> list:
    out = suite_lie(sizes, seed) + suite_generic(sizes, seed) + suite_thermo(sizes, seed)
    drifts = energy_drift_study()
    order = math.log2(drifts[0] / drifts[1])
    out.append(CheckResult("non-dissipative energy drift (200 rk4 steps)", drifts[0] <= 1e-8, drifts[0]))
    out.append(CheckResult("energy drift order in dt", order >= 3.8, order,
                           f"drifts {drifts[0]:.2e}, {drifts[1]:.2e}"))
    ds_min, drift, _ = dissipative_run()
    out.append(CheckResult("dissipative run: entropy nondecreasing per step", ds_min >= -1e-12, ds_min))
    out.append(CheckResult("dissipative run: energy drift", drift <= 1e-8, drift))
    out.extend(equilibrium_checks())
    gaps = [role_trajectory_discrepancy(16, dt) for dt in (0.02, 0.01)]
    out.append(CheckResult("role-equivalent trajectories converge in dt", math.log2(gaps[0] / gaps[1]) >= 3.8,
                           math.log2(gaps[0] / gaps[1]), f"gaps {gaps[0]:.2e}, {gaps[1]:.2e}"))
    return out


def run_suite(name: str, sizes, seed: int) -> list:
    table = {"lie": suite_lie, "generic": suite_generic, "thermo": suite_thermo, "full": suite_full}
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
    sizes = sorted(set(int(n) for n in sizes))
    if not sizes:
        raise ValueError("need at least one grid size")
    for n in sizes:
        make_grid(2, n, L_DEFAULT)
    return table[name](sizes, seed)
