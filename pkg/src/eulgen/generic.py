"""Poisson operator, coordinate changes and non-interaction checks.

The reversible operator is assembled as ``M_S J_simple M_S*``. ``J_simple``
acts in entropy coordinates; its first row consists of the exact discrete
adjoints ``B`` of the Lie derivatives in its first column, so skew-symmetry
holds to rounding on every grid.
"""

from __future__ import annotations

import numpy as np

from . import pointwise as pw
from .field import Kind, TensorField, div_rows, gradient, partial, sym_gradient
from .lie import lie_array
from .material import MaterialModel, Pointwise, StateError, evaluate
from .state import CotState, EtaForces, State, pair

DEFAULT_MODEL = MaterialModel()
_TINY = np.finfo(float).tiny


# --- B operators ----------------------------------------------------------------

def _b_ve(F, xi, grid):
    grad_dot = np.stack([pw.ddot(partial(F, i, grid), xi) for i in range(grid.d)])
    return grad_dot + div_rows(pw.mm(xi, pw.transpose(F)), grid)


def _b_in(Fp, xi, grid):
    return np.stack([pw.ddot(partial(Fp, i, grid), xi) for i in range(grid.d)])


def _b_ex(s, kappa, grid):
    return -s * gradient(kappa, grid)


_B = {"ve": _b_ve, "in": _b_in, "ex": _b_ex}


def b_operators(X: TensorField, xi: TensorField, which: str) -> TensorField:
    """Adjoint of ``w -> L_w X``: returns a covector density (Momentum kind).

    ``ve``: ``grad F : Xi + div(Xi F^T)``; ``in``: ``grad Fp : Xi``;
    ``ex``: ``-s grad xi``.
    """
    if which not in _B:
        raise ValueError(f"unknown B operator {which!r}; expected ve, in or ex")
    grid = X.grid
    if X.data.shape != xi.data.shape:
        raise ValueError(f"shape mismatch: {X.data.shape} vs {xi.data.shape}")
    return TensorField(grid, Kind.Momentum, _B[which](X.data, xi.data, grid))


# --- J_simple ---------------------------------------------------------------------

def _j_simple_arrays(grid, pi, F, Fp, s, w, xi_e, xi_p, kappa):
    mom = (-lie_array(Kind.Momentum, w, pi, grid) + _b_ve(F, xi_e, grid)
           + _b_in(Fp, xi_p, grid) + _b_ex(s, kappa, grid))
    return (mom,
            -lie_array(Kind.TwoPoint, w, F, grid),
            -lie_array(Kind.IntensiveMatrix, w, Fp, grid),
            -lie_array(Kind.ExtensiveScalar, w, s, grid))


def j_simple_apply(q: State, zeta: CotState) -> State:
    """Reversible operator in entropy coordinates applied to ``zeta``."""
    if q.role != "entropy":
        raise ValueError("j_simple_apply needs a state with tau role 'entropy'")
    out = _j_simple_arrays(q.grid, *q.arrays(), *zeta.arrays())
    return State.from_arrays(q.grid, out, role="entropy")


# --- coordinate change tau <-> s -----------------------------------------------

def constitutive(q: State, model: MaterialModel = DEFAULT_MODEL) -> Pointwise:
    _, F, Fp, tau = q.arrays()
    return evaluate(model, F, Fp, tau, q.role)


def _positive(arr, name):
    if np.any(~(arr > 0.0)):
        raise StateError(f"{name} must be positive everywhere (min {float(np.min(arr)):.3e})")


def to_entropy_state(q: State, model: MaterialModel = DEFAULT_MODEL) -> State:
    """Replace ``tau`` by ``s = S(w, tau)``."""
    if q.role == "entropy":
        return q
    return q.with_tau(constitutive(q, model).S, "entropy")


def ms_star_apply(q: State, zeta: CotState, model: MaterialModel = DEFAULT_MODEL,
                  pt: Pointwise | None = None) -> CotState:
    """``(w, Xi_e, Xi_p, kappa) -> (w, Xi_e - r dS/dF, Xi_p - r dS/dFp, r)``, ``r = kappa/dS/dtau``."""
    if q.role == "entropy":
        return zeta
    pt = constitutive(q, model) if pt is None else pt
    _positive(pt.dS_dtau, "dS/dtau")
    w, xe, xp, kappa = zeta.arrays()
    r = kappa / pt.dS_dtau
    return CotState.from_arrays(q.grid, (w, xe - r * pt.dS_dF, xp - r * pt.dS_dFp, r))


def ms_apply(q: State, dq: State, model: MaterialModel = DEFAULT_MODEL,
             pt: Pointwise | None = None) -> State:
    """Adjoint of :func:`ms_star_apply`: maps an entropy-coordinate tangent to ``q``'s coordinates."""
    if q.role == "entropy":
        return dq
    pt = constitutive(q, model) if pt is None else pt
    _positive(pt.dS_dtau, "dS/dtau")
    dpi, dF, dFp, ds = dq.arrays()
    dtau = (ds - pw.ddot(pt.dS_dF, dF) - pw.ddot(pt.dS_dFp, dFp)) / pt.dS_dtau
    return State.from_arrays(q.grid, (dpi, dF, dFp, dtau), role=q.role)


def j_apply(q: State, zeta: CotState, model: MaterialModel = DEFAULT_MODEL,
            pt: Pointwise | None = None) -> State:
    """``M_S J_simple(Phi(q)) M_S*`` applied to ``zeta``."""
    if q.role == "entropy":
        return j_simple_apply(q, zeta)
    pt = constitutive(q, model) if pt is None else pt
    q_s = q.with_tau(pt.S, "entropy")
    inner = j_simple_apply(q_s, ms_star_apply(q, zeta, model, pt))
    return ms_apply(q, inner, model, pt)


# --- residuals --------------------------------------------------------------------

def skew_residual(q: State, z1: CotState, z2: CotState, model: MaterialModel = DEFAULT_MODEL) -> float:
    """``(<z1, J z2> + <z2, J z1>) / (|q| |z1| |z2|)``."""
    pt = None if q.role == "entropy" else constitutive(q, model)
    raw = pair(z1, j_apply(q, z2, model, pt)) + pair(z2, j_apply(q, z1, model, pt))
    return abs(raw) / max(q.norm() * z1.norm() * z2.norm(), _TINY)


def jacobi_residual(q: State, z1: CotState, z2: CotState, z3: CotState) -> float:
    """Normalized cyclic sum ``sum_cyc <z_a, J(J(q) z_b) z_c>`` for ``J_simple``.

    ``J`` is linear in ``q``, so its derivative in direction ``dq`` is ``J(dq)``.
    """
    if q.role != "entropy":
        raise ValueError("jacobi_residual is defined for the entropy-role operator")
    zs = (z1, z2, z3)
    total = 0.0
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        dq = j_simple_apply(q, zs[b])
        total += pair(zs[a], j_simple_apply(dq, zs[c]))
    scale = q.norm() * z1.norm() * z2.norm() * z3.norm()
    return abs(total) / max(scale, _TINY)


# --- kinematics and N_E -----------------------------------------------------------

def velocity_and_density(q: State, model: MaterialModel = DEFAULT_MODEL):
    """``rho = rho_ref / det F`` and ``v = pi / rho``."""
    pi, F, _, _ = q.arrays()
    det_f = pw.det(F)
    if np.any(~(det_f > 0.0)):
        raise StateError(f"det F <= 0 (min {float(np.min(det_f)):.3e})")
    rho = model.rho_ref / det_f
    v = pi / rho
    return TensorField(q.grid, Kind.Vector, v), TensorField(q.grid, Kind.ExtensiveScalar, rho)


def ne_star_apply(q: State, zeta: CotState, model: MaterialModel = DEFAULT_MODEL,
                  pt: Pointwise | None = None) -> EtaForces:
    """``(w, Xi_e, Xi_p, kappa) -> (D(w) - r D(v), Xi_p - r dE/dFp, r)``, ``r = kappa/dE/dtau``."""
    grid = q.grid
    pt = constitutive(q, model) if pt is None else pt
    _positive(pt.dE_dtau, "dE/dtau")
    v, _ = velocity_and_density(q, model)
    w, _, xp, kappa = zeta.arrays()
    r = kappa / pt.dE_dtau
    eta_m = sym_gradient(w, grid) - r * sym_gradient(v.data, grid)
    return EtaForces.from_arrays(grid, (eta_m, xp - r * pt.dE_dFp, r))


def ne_apply(q: State, eta: EtaForces, model: MaterialModel = DEFAULT_MODEL,
             pt: Pointwise | None = None) -> State:
    """``(eta_m, eta_p, eta_t) -> (-div eta_m, 0, eta_p, (-D(v):eta_m - dE/dFp:eta_p + eta_t)/dE/dtau)``."""
    grid = q.grid
    pt = constitutive(q, model) if pt is None else pt
    _positive(pt.dE_dtau, "dE/dtau")
    v, _ = velocity_and_density(q, model)
    em, ep, et = eta.arrays()
    heat = (-pw.ddot(sym_gradient(v.data, grid), em) - pw.ddot(pt.dE_dFp, ep) + et) / pt.dE_dtau
    return State.from_arrays(grid, (-div_rows(em, grid), np.zeros_like(em), ep, heat), role=q.role)


def noninteraction_residuals(q: State, model: MaterialModel = DEFAULT_MODEL,
                             lambdas=(-1.0, 0.5, 2.0)) -> tuple:
    """``(|J DS| / (|q| |DS|), max_lambda |R*(q, lambda DE)| / |E_total|)``."""
    from .thermo import differentials, r_star, total_energy

    pt = constitutive(q, model)
    DE, DS = differentials(q, model, pt)
    jds = j_apply(q, DS, model, pt)
    first = jds.norm() / max(q.norm() * DS.norm(), _TINY)
    e_scale = max(abs(total_energy(q, model)), _TINY)
    second = max(abs(r_star(q, lam * DE, model, pt)) for lam in lambdas) / e_scale
    return first, second
