"""Default thermo-elasto-plastic constitutive model, pointwise.

Free energy per unit current volume, with ``Fe = F Fp^{-1}``::

    W(Fe) = mu/2 (|Fe|^2 - d) - mu ln det Fe + lam/2 (ln det Fe)^2
    H(Fp) = k_h/2 |Fp - I|^2
    e_th(s) = c_V theta_ref exp(s / c_V)

With ``tau = s`` (entropy role) ``E = W + H + e_th(s)`` and ``S = s``. With
``tau = e`` (internal-energy role) ``E = e`` and
``S = c_V ln((e - W - H) / (c_V theta_ref))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from . import pointwise as pw

# minimum admissible thermal part e - W - H, in units of c_V * theta_ref
THERMAL_FLOOR = 1e-10


class StateError(RuntimeError):
    """A state left the admissible set (det F <= 0, thermal floor, ...)."""


@dataclass(frozen=True)
class DissipationSpec:
    mu_v: float = 0.0
    lam_v: float = 0.0
    nu_p: float = 0.0  # 0 disables plastic flow
    kappa_heat: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            val = getattr(self, f.name)
            if not np.isfinite(val) or val < 0.0:
                raise ValueError(f"dissipation coefficient {f.name} must be finite and >= 0, got {val}")

    @property
    def active(self) -> bool:
        return any(getattr(self, f.name) > 0 for f in fields(self))


@dataclass(frozen=True)
class MaterialModel:
    rho_ref: float = 1.0
    mu: float = 1.0
    lam: float = 1.0
    k_h: float = 0.5
    c_v: float = 1.0
    theta_ref: float = 1.0
    dissipation: DissipationSpec = field(default_factory=DissipationSpec)

    def __post_init__(self):
        for name in ("rho_ref", "mu", "c_v", "theta_ref"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.lam >= 0 or not self.k_h >= 0:
            raise ValueError("lam and k_h must be non-negative")

    def wave_speed(self, rho: float) -> float:
        return float(np.sqrt((self.lam + 2.0 * self.mu) / rho))


@dataclass(frozen=True, eq=False)
class Pointwise:
    """Node arrays of the densities and their partial derivatives."""

    E: np.ndarray
    S: np.ndarray
    dE_dF: np.ndarray
    dE_dFp: np.ndarray
    dE_dtau: np.ndarray
    dS_dF: np.ndarray
    dS_dFp: np.ndarray
    dS_dtau: np.ndarray
    theta: np.ndarray
    W: np.ndarray
    H: np.ndarray
    dW_dF: np.ndarray
    dWH_dFp: np.ndarray

    @property
    def free_energy(self) -> np.ndarray:
        return self.E - self.theta * self.S

    @property
    def sigma_e(self) -> np.ndarray:
        return self.dE_dF - self.theta * self.dS_dF

    @property
    def sigma_p(self) -> np.ndarray:
        return self.dE_dFp - self.theta * self.dS_dFp


def mechanical(model: MaterialModel, F: np.ndarray, Fp: np.ndarray):
    """``W``, ``H`` and their derivatives ``dW/dF``, ``d(W+H)/dFp``."""
    d = F.shape[0]
    det_fp = pw.det(Fp)
    if np.any(det_fp <= 0.0):
        raise StateError(f"det Fp <= 0 (min {float(np.min(det_fp)):.3e})")
    fp_inv = pw.inv(Fp)
    fe = pw.mm(F, fp_inv)
    jac = pw.det(fe)
    if np.any(jac <= 0.0):
        raise StateError(f"det Fe <= 0 (min {float(np.min(jac)):.3e})")
    log_j = np.log(jac)
    fe_inv_t = pw.transpose(pw.inv(fe))
    W = 0.5 * model.mu * (pw.ddot(fe, fe) - d) - model.mu * log_j + 0.5 * model.lam * log_j ** 2
    P = model.mu * fe - model.mu * fe_inv_t + model.lam * log_j * fe_inv_t
    dW_dF = pw.mm(P, pw.transpose(fp_inv))
    dW_dFp = -pw.mm(pw.transpose(fe), dW_dF)
    diff = Fp - pw.identity(d, Fp.shape[2:])
    H = 0.5 * model.k_h * pw.ddot(diff, diff)
    return W, H, dW_dF, dW_dFp + model.k_h * diff


def evaluate(model: MaterialModel, F: np.ndarray, Fp: np.ndarray, tau: np.ndarray, role: str) -> Pointwise:
    W, H, dW_dF, dWH_dFp = mechanical(model, F, Fp)
    zero_m = np.zeros_like(F)
    cv, th0 = model.c_v, model.theta_ref
    if role == "entropy":
        theta = th0 * np.exp(tau / cv)
        E = W + H + cv * theta
        return Pointwise(E=E, S=tau.copy(), dE_dF=dW_dF, dE_dFp=dWH_dFp, dE_dtau=theta,
                         dS_dF=zero_m, dS_dFp=np.zeros_like(Fp), dS_dtau=np.ones_like(tau),
                         theta=theta, W=W, H=H, dW_dF=dW_dF, dWH_dFp=dWH_dFp)
    if role == "internal_energy":
        thermal = tau - W - H
        floor = THERMAL_FLOOR * cv * th0
        if np.any(thermal < floor):
            bad = float(np.min(thermal))
            raise StateError(f"internal energy below thermal floor: min(e - W - H) = {bad:.3e} < {floor:.3e}")
        theta = thermal / cv
        S = cv * np.log(thermal / (cv * th0))
        inv_theta = 1.0 / theta
        return Pointwise(E=tau.copy(), S=S, dE_dF=zero_m, dE_dFp=np.zeros_like(Fp), dE_dtau=np.ones_like(tau),
                         dS_dF=-dW_dF * inv_theta, dS_dFp=-dWH_dFp * inv_theta, dS_dtau=inv_theta,
                         theta=theta, W=W, H=H, dW_dF=dW_dF, dWH_dFp=dWH_dFp)
    raise ValueError(f"unknown tau role {role!r}")


def entropy_to_energy(model: MaterialModel, F, Fp, s):
    """Internal-energy density of the state with entropy density ``s``."""
    W, H, _, _ = mechanical(model, F, Fp)
    return W + H + model.c_v * model.theta_ref * np.exp(s / model.c_v)


def energy_to_entropy(model: MaterialModel, F, Fp, e):
    return evaluate(model, F, Fp, e, "internal_energy").S


def cauchy_stress(pt: Pointwise, F: np.ndarray) -> np.ndarray:
    """``Sigma_e F^T + (E - Theta S) I``."""
    d = F.shape[0]
    return pw.mm(pt.sigma_e, pw.transpose(F)) + pt.free_energy * pw.identity(d, F.shape[2:])
