"""Flow maps, pull-backs and the flow-based Lie-derivative oracle.

This path shares no stencil code with :mod:`eulgen.lie`: off-grid values come
from trigonometric interpolation, the flow and its derivative from RK4 on
``dX/ds = v(X)``, ``dJ/ds = grad v(X) J``, and the Lie derivative from a
central difference in the flow parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from . import pointwise as pw
from .field import Grid, Kind, TensorField, same_grid

# spectral coefficients below this fraction of the peak are dropped
COEF_CUTOFF = 1e-13


class FlowError(RuntimeError):
    pass


class TrigInterpolant:
    """Band-limited trigonometric interpolant of a component-leading grid array.

    Only modes with ``|c_k| > COEF_CUTOFF * max|c|`` are kept, so evaluation is
    exact for band-limited fields and cheap when few modes are active.
    """

    def __init__(self, data: np.ndarray, grid: Grid):
        self.grid = grid
        d = grid.d
        self.comp_shape = data.shape[: data.ndim - d]
        flat = np.asarray(data, dtype=np.float64).reshape((-1,) + grid.shape)
        spec = np.fft.fftn(flat, axes=tuple(range(1, d + 1))) / grid.num_nodes
        k1 = np.fft.fftfreq(grid.n, 1.0 / grid.n).astype(np.int64)
        kgrid = np.stack(np.meshgrid(*([k1] * d), indexing="ij")).reshape(d, -1).T
        spec = spec.reshape(spec.shape[0], -1)
        peak = np.max(np.abs(spec)) if spec.size else 0.0
        keep = np.any(np.abs(spec) > COEF_CUTOFF * peak, axis=0) if peak > 0 else np.zeros(spec.shape[1], bool)
        self.kvec = kgrid[keep]
        self.coef = spec[:, keep]
        self.omega = 2.0 * np.pi / grid.L

    def gradient(self) -> "TrigInterpolant":
        """Interpolant of the spectral gradient; new trailing axis indexes d/dx_j."""
        out = object.__new__(TrigInterpolant)
        out.grid, out.omega, out.kvec = self.grid, self.omega, self.kvec
        out.comp_shape = self.comp_shape + (self.grid.d,)
        kk = self.kvec.astype(np.float64)
        kk[np.abs(self.kvec) == self.grid.n // 2] = 0.0  # no Nyquist derivative
        ik = 1j * self.omega * kk  # (M, d)
        out.coef = (self.coef[:, None, :] * ik.T[None, :, :]).reshape(-1, self.coef.shape[1])
        return out

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Values at ``points`` (P, d); returns ``(*comp_shape, P)``."""
        if self.coef.shape[1] == 0:
            vals = np.zeros((self.coef.shape[0], points.shape[0]))
        else:
            vals = kernels.trig_eval(self.coef, self.kvec, points, self.omega)
        return vals.reshape(self.comp_shape + (points.shape[0],))


@dataclass(frozen=True, eq=False)
class Diffeo:
    """Node-wise samples of a torus diffeomorphism.

    ``points[p]`` is the unwrapped image of node ``p`` (row-major order) and
    ``jac[:, :, p]`` its Jacobian ``D Phi``.
    """

    grid: Grid
    points: np.ndarray  # (N, d)
    jac: np.ndarray  # (d, d, N)

    @property
    def wrapped(self) -> np.ndarray:
        return np.mod(self.points, self.grid.L)

    @property
    def winding(self) -> np.ndarray:
        return np.floor_divide(self.points, self.grid.L).astype(np.int64)

    def det(self) -> np.ndarray:
        return pw.det(self.jac)

    @classmethod
    def identity(cls, grid: Grid) -> "Diffeo":
        return cls(grid, grid.points(), pw.identity(grid.d, (grid.num_nodes,)))


def _velocity_rhs(vi: TrigInterpolant, gi: TrigInterpolant, x, jac):
    vel = vi(x).T  # (P, d)
    grad = gi(x)  # (d, d, P)
    return vel, pw.mm(grad, jac)


def flow_map(v: TensorField, s: float, n_steps: int = 16) -> Diffeo:
    """Integrate the flow of ``v`` and its variational equation up to time ``s``."""
    if v.kind is not Kind.Vector:
        raise ValueError(f"flow_map needs a Vector field, got {v.kind.value}")
    grid = v.grid
    vi = TrigInterpolant(v.data, grid)
    gi = vi.gradient()
    x = grid.points()
    jac = pw.identity(grid.d, (grid.num_nodes,))
    if s == 0.0:
        return Diffeo(grid, x, jac)
    dt = s / n_steps
    for step in range(n_steps):
        k1x, k1j = _velocity_rhs(vi, gi, x, jac)
        k2x, k2j = _velocity_rhs(vi, gi, x + 0.5 * dt * k1x, jac + 0.5 * dt * k1j)
        k3x, k3j = _velocity_rhs(vi, gi, x + 0.5 * dt * k2x, jac + 0.5 * dt * k2j)
        k4x, k4j = _velocity_rhs(vi, gi, x + dt * k3x, jac + dt * k3j)
        x = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        jac = jac + dt / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j)
        det = pw.det(jac)
        if np.any(det <= 0.0):
            bad = int(np.argmin(det))
            raise FlowError(f"det D Psi <= 0 at node {bad} after step {step + 1}/{n_steps} "
                            f"(det={det[bad]:.3e}); reduce |s|")
    return Diffeo(grid, x, jac)


def _transform(kind: Kind, vals: np.ndarray, jac: np.ndarray) -> np.ndarray:
    if kind in (Kind.IntensiveScalar, Kind.IntensiveMatrix):
        return vals
    det = pw.det(jac)
    if np.any(det <= 0.0):
        raise FlowError("diffeomorphism has a non-positive Jacobian determinant")
    if kind in (Kind.ExtensiveScalar, Kind.RdExtensive):
        return det * vals
    jt = pw.transpose(jac)
    if kind is Kind.Covector:
        return pw.mv(jt, vals)
    if kind is Kind.Momentum:
        return det * pw.mv(jt, vals)
    if kind is Kind.OpVC:
        return pw.mm(jt, pw.mm(vals, jac))
    ji = pw.inv(jac)
    if kind is Kind.Vector:
        return pw.mv(ji, vals)
    if kind is Kind.TwoPoint:
        return pw.mm(ji, vals)
    if kind is Kind.OpVV:
        return pw.mm(ji, pw.mm(vals, jac))
    if kind is Kind.OpCC:
        return pw.mm(jt, pw.mm(vals, pw.transpose(ji)))
    if kind is Kind.OpCV:
        return pw.mm(ji, pw.mm(vals, pw.transpose(ji)))
    raise ValueError(f"no pull-back rule for {kind!r}")


def pullback(phi: Diffeo, A: TensorField, kind: Kind | None = None) -> TensorField:
    """Pull ``A`` back by ``phi`` using the slot rule of its kind.

    Extensive kinds carry the volume weight ``det D phi``; momentum is a
    covector density.
    """
    grid = same_grid(phi, A)
    kind = A.kind if kind is None else kind
    vals = TrigInterpolant(A.data, grid)(phi.points)
    out = _transform(kind, vals, phi.jac)
    return TensorField(grid, kind, out.reshape(kind.component_shape(grid.d) + grid.shape))


def inverse(phi: Diffeo, tol: float = 1e-13, max_iter: int = 50) -> Diffeo:
    """Node samples of ``phi^{-1}`` by Newton iteration on the interpolated map."""
    grid = phi.grid
    y = grid.points()
    disp = TrigInterpolant((phi.points - y).T.reshape((grid.d,) + grid.shape), grid)
    jac_i = TrigInterpolant(phi.jac.reshape((grid.d, grid.d) + grid.shape), grid)
    x = y - disp(y).T
    for _ in range(max_iter):
        resid = x + disp(x).T - y
        step = pw.mv(pw.inv(jac_i(x)), resid.T).T
        x = x - step
        if np.max(np.abs(step)) < tol * grid.L:
            break
    else:
        raise FlowError("Newton iteration for the inverse map did not converge")
    return Diffeo(grid, x, pw.inv(jac_i(x)))


def pushforward(phi: Diffeo, A: TensorField, kind: Kind | None = None) -> TensorField:
    return pullback(inverse(phi), A, kind)


def lie_via_flow(v: TensorField, A: TensorField, kind: Kind | None = None,
                 ds: float = 1e-3, n_steps: int = 16) -> TensorField:
    """``(pullback(Psi_ds) A - pullback(Psi_-ds) A) / (2 ds)``."""
    if not ds > 0:
        raise ValueError("ds must be positive")
    kind = A.kind if kind is None else kind
    plus = pullback(flow_map(v, ds, n_steps), A, kind)
    minus = pullback(flow_map(v, -ds, n_steps), A, kind)
    return TensorField(A.grid, kind, (plus.data - minus.data) / (2.0 * ds))
