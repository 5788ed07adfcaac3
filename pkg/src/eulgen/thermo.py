"""Energy, entropy, stresses and the reversible/dissipative vector fields.

Canonical vector fields are the composed ones, ``J(q) DE(q)`` and
``N_E(q) dR*(q, N_E(q)* DS(q))``. The ``*_closed`` variants evaluate the
hand-simplified formulas and serve as independent cross-checks.
"""

from __future__ import annotations

import numpy as np

from . import pointwise as pw
from .field import (Kind, TensorField, advect, div_rows, divergence, gradient, integrate_array,
                    jacobian, sym_gradient)
from .generic import (DEFAULT_MODEL, constitutive, j_apply, ne_apply, ne_star_apply,
                      velocity_and_density)
from .lie import lie_array
from .material import MaterialModel, Pointwise, cauchy_stress
from .state import CotState, EtaForces, State

__all__ = [
    "velocity_and_density", "kinetic_density", "total_energy", "total_entropy", "differentials",
    "stresses", "v_ham", "v_ham_closed", "plastic_rate", "r_star", "r_star_simple", "r_star_derivative", "v_diss",
    "v_diss_closed", "rhs", "scalar_rates", "kinematic_residuals", "continuity_residual",
    "validate_state",
]


def kinetic_density(q: State, model: MaterialModel = DEFAULT_MODEL) -> np.ndarray:
    """``det F |pi|^2 / (2 rho_ref)``."""
    pi, F, _, _ = q.arrays()
    return pw.det(F) * pw.dot(pi, pi) / (2.0 * model.rho_ref)


def validate_state(q: State, model: MaterialModel = DEFAULT_MODEL) -> Pointwise:
    """Raise :class:`StateError` unless ``q`` is admissible; returns the constitutive data."""
    velocity_and_density(q, model)
    return constitutive(q, model)


def total_energy(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> float:
    pt = constitutive(q, model) if pt is None else pt
    return integrate_array(kinetic_density(q, model) + pt.E, q.grid)


def total_entropy(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> float:
    if q.role == "entropy":
        return integrate_array(q.tau.data, q.grid)
    pt = constitutive(q, model) if pt is None else pt
    return integrate_array(pt.S, q.grid)


def differentials(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None):
    """``(DE, DS)`` as cotangent vectors.

    The kinetic energy ``det F |pi|^2/(2 rho_ref)`` contributes ``v`` to the
    momentum slot and ``(rho |v|^2 / 2) F^{-T}`` to the F slot.
    """
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    _, F, _, _ = q.arrays()
    v, _ = velocity_and_density(q, model)
    kin_F = kinetic_density(q, model) * pw.transpose(pw.inv(F))
    DE = CotState.from_arrays(grid, (v.data, pt.dE_dF + kin_F, pt.dE_dFp, pt.dE_dtau))
    DS = CotState.from_arrays(grid, (np.zeros_like(v.data), pt.dS_dF, pt.dS_dFp, pt.dS_dtau))
    return DE, DS


def stresses(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None):
    """``(Sigma_e, Sigma_p, Sigma_Cauchy)``; the Cauchy stress is tagged ``"cauchy"``."""
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    F = q.F.data
    return (TensorField(grid, Kind.TwoPoint, pt.sigma_e),
            TensorField(grid, Kind.IntensiveMatrix, pt.sigma_p),
            TensorField(grid, Kind.OpCV, cauchy_stress(pt, F), "cauchy"))


# --- reversible part ----------------------------------------------------------------

def v_ham(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> State:
    """``J(q) DE(q)``."""
    pt = constitutive(q, model) if pt is None else pt
    DE, _ = differentials(q, model, pt)
    return j_apply(q, DE, model, pt)


def _tau_ham_closed(q, v, pt, grid):
    """``-v.grad tau - (S div v + dS/dF F^T : D(v)) / dS/dtau``."""
    tau = q.tau.data
    F = q.F.data
    coupling = pw.ddot(pw.mm(pt.dS_dF, pw.transpose(F)), sym_gradient(v, grid))
    return -advect(v, tau, grid) - (pt.S * divergence(v, grid) + coupling) / pt.dS_dtau


def v_ham_closed(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> State:
    """Reversible vector field from the simplified balance laws."""
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    pi, F, Fp, _ = q.arrays()
    v = velocity_and_density(q, model)[0].data
    flux = pi[:, None] * v[None, :]  # rho v (x) v
    cauchy = cauchy_stress(pt, F)
    mom = -div_rows(flux, grid) + div_rows(cauchy, grid)
    dF = -advect(v, F, grid) + pw.mm(jacobian(v, grid), F)
    dFp = -advect(v, Fp, grid)
    return State.from_arrays(grid, (mom, dF, dFp, _tau_ham_closed(q, v, pt, grid)), role=q.role)


# --- dissipative part -------------------------------------------------------------

def _viscous(eta_m, model):
    diss = model.dissipation
    d = eta_m.shape[0]
    return 2.0 * diss.mu_v * eta_m + diss.lam_v * pw.trace(eta_m) * pw.identity(d, eta_m.shape[2:])


def plastic_rate(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> TensorField:
    """``L = -(Theta / nu_p) Fp^T Sigma_p``; zero when ``nu_p == 0``."""
    pt = constitutive(q, model) if pt is None else pt
    nu = model.dissipation.nu_p
    Fp = q.Fp.data
    if nu == 0.0:
        return TensorField(q.grid, Kind.IntensiveMatrix, np.zeros_like(Fp))
    return TensorField(q.grid, Kind.IntensiveMatrix, -(pt.theta / nu) * pw.mm(pw.transpose(Fp), pt.sigma_p))


def _r_star_parts(q, eta, model, pt):
    grid = q.grid
    diss = model.dissipation
    em, ep, et = eta.arrays()
    theta = pt.theta
    visc = 0.5 * theta * pw.ddot(em, _viscous(em, model))
    if diss.nu_p > 0.0:
        xi = theta * pw.mm(pw.transpose(q.Fp.data), ep)
        plast = pw.ddot(xi, xi) / (2.0 * diss.nu_p)
    else:
        plast = np.zeros_like(theta)
    g = gradient(et, grid)
    heat = 0.5 * diss.kappa_heat * theta ** 2 * pw.dot(g, g)
    return visc, plast, heat


def r_star(q: State, xi: CotState, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> float:
    """``R*(q, xi) = R*_simple(q, N_E(q)* xi)``."""
    pt = constitutive(q, model) if pt is None else pt
    eta = ne_star_apply(q, xi, model, pt)
    return r_star_simple(q, eta, model, pt)


def r_star_simple(q: State, eta: EtaForces, model: MaterialModel = DEFAULT_MODEL,
                  pt: Pointwise | None = None) -> float:
    """Quadratic dissipation potential in the driving forces."""
    pt = constitutive(q, model) if pt is None else pt
    visc, plast, heat = _r_star_parts(q, eta, model, pt)
    return integrate_array(visc + plast + heat, q.grid)


def r_star_derivative(q: State, eta: EtaForces, model: MaterialModel = DEFAULT_MODEL,
                      pt: Pointwise | None = None) -> EtaForces:
    """Gradient of :func:`r_star_simple` with respect to ``eta`` (per unit cell volume)."""
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    diss = model.dissipation
    em, ep, et = eta.arrays()
    theta = pt.theta
    dm = theta * _viscous(em, model)
    if diss.nu_p > 0.0:
        Fp = q.Fp.data
        dp = (theta ** 2 / diss.nu_p) * pw.mm(Fp, pw.mm(pw.transpose(Fp), ep))
    else:
        dp = np.zeros_like(ep)
    flux = diss.kappa_heat * theta ** 2 * gradient(et, grid)
    dt = -divergence(flux, grid)
    return EtaForces.from_arrays(grid, (dm, dp, dt))


def v_diss(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> State:
    """``N_E dR*_simple(N_E* DS)``."""
    pt = constitutive(q, model) if pt is None else pt
    _, DS = differentials(q, model, pt)
    eta = ne_star_apply(q, DS, model, pt)
    return ne_apply(q, r_star_derivative(q, eta, model, pt), model, pt)


def _heat_flux_divergence(q, pt, model):
    grid = q.grid
    flux = model.dissipation.kappa_heat * pt.theta ** 2 * gradient(1.0 / pt.theta, grid)
    return divergence(flux, grid)


def v_diss_closed(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> State:
    """``(div(D_visc D), 0, Fp L, (D:D_visc D - (Fp L):dE/dFp - div(K grad(1/Theta))) / dE/dtau)``."""
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    v = velocity_and_density(q, model)[0].data
    D = sym_gradient(v, grid)
    visc = _viscous(D, model)
    fpl = pw.mm(q.Fp.data, plastic_rate(q, model, pt).data)
    tau_rate = (pw.ddot(D, visc) - pw.ddot(fpl, pt.dE_dFp) - _heat_flux_divergence(q, pt, model)) / pt.dE_dtau
    return State.from_arrays(grid, (div_rows(visc, grid), np.zeros_like(q.F.data), fpl, tau_rate), role=q.role)


def rhs(q: State, model: MaterialModel = DEFAULT_MODEL) -> State:
    """``V_Ham + V_diss``."""
    pt = constitutive(q, model)
    out = v_ham(q, model, pt)
    if model.dissipation.active:
        out = out + v_diss(q, model, pt)
    return out


def scalar_rates(q: State, model: MaterialModel = DEFAULT_MODEL, pt: Pointwise | None = None) -> dict:
    """Pieces of the ``tau`` equation: reversible rate, dissipative heating, heat conduction."""
    pt = constitutive(q, model) if pt is None else pt
    grid = q.grid
    v = velocity_and_density(q, model)[0].data
    D = sym_gradient(v, grid)
    fpl = pw.mm(q.Fp.data, plastic_rate(q, model, pt).data)
    heating = (pw.ddot(D, _viscous(D, model)) - pw.ddot(fpl, pt.dE_dFp)) / pt.dE_dtau
    conduction = -_heat_flux_divergence(q, pt, model) / pt.dE_dtau
    return {
        "j_ham_S": TensorField(grid, Kind.IntensiveScalar, _tau_ham_closed(q, v, pt, grid)),
        "j_diss_E": TensorField(grid, Kind.IntensiveScalar, heating),
        "heat": TensorField(grid, Kind.IntensiveScalar, conduction),
    }


# --- kinematic checks -------------------------------------------------------------

def kinematic_residuals(q: State, q_dot: State, model: MaterialModel = DEFAULT_MODEL):
    """Elastic/plastic rate split residual and frame-indifference asymmetries.

    Returns ``(residual field, (asym dE/dF F^T, asym dS/dF F^T))``.
    """
    grid = q.grid
    _, F, Fp, _ = q.arrays()
    _, dF, dFp, _ = q_dot.arrays()
    v = velocity_and_density(q, model)[0].data
    fp_inv = pw.inv(Fp)
    fe = pw.mm(F, fp_inv)
    dfe = pw.mm(dF, fp_inv) - pw.mm(fe, pw.mm(dFp, fp_inv))
    lie_fe = lie_array(Kind.TwoPoint, v, fe, grid)
    lie_fp = lie_array(Kind.IntensiveMatrix, v, Fp, grid)
    res = pw.mm(pw.inv(fe), dfe + lie_fe) + pw.mm(dFp + lie_fp, fp_inv)
    pt = constitutive(q, model)
    Ft = pw.transpose(F)
    frame = (pw.skew_max(pw.mm(pt.dE_dF, Ft)), pw.skew_max(pw.mm(pt.dS_dF, Ft)))
    return TensorField(grid, Kind.IntensiveMatrix, res), frame


def continuity_residual(q: State, q_dot: State, model: MaterialModel = DEFAULT_MODEL) -> TensorField:
    """``d rho/dt + div(rho v)`` with ``d rho/dt = -rho tr(F^{-1} dF/dt)``."""
    grid = q.grid
    v, rho = velocity_and_density(q, model)
    rho_dot = -rho.data * pw.trace(pw.mm(pw.inv(q.F.data), q_dot.F.data))
    return TensorField(grid, Kind.ExtensiveScalar, rho_dot + divergence(rho.data * v.data, grid))
