"""Lie derivatives of tensor fields along a velocity field.

All rules share one transport stencil and the pointwise products of
:mod:`eulgen.pointwise`; the kind-specific formulas add their correction
terms in slot order so that they agree bitwise with the generic multilinear
rule :func:`lie_general_rank2`.
"""

from __future__ import annotations

import numpy as np

from . import pointwise as pw
from .field import (Kind, TensorField, advect, divergence, jacobian, gradient, same_grid)
from .tensor import Multilinear, as_multilinear, from_multilinear


def _lie_array(kind: Kind, v: np.ndarray, a: np.ndarray, grid) -> np.ndarray:
    if kind is Kind.IntensiveScalar:
        return advect(v, a, grid)
    if kind is Kind.IntensiveMatrix:
        return advect(v, a, grid)
    if kind is Kind.ExtensiveScalar:
        return divergence(v * a, grid)
    if kind is Kind.RdExtensive:
        return np.stack([divergence(v * a[i], grid) for i in range(grid.d)])
    g = jacobian(v, grid)
    if kind is Kind.Vector:
        return advect(v, a, grid) - pw.mv(g, a)
    if kind is Kind.Covector:
        return advect(v, a, grid) + pw.tmv(g, a)
    if kind is Kind.Momentum:
        flux = np.stack([divergence(v * a[i], grid) for i in range(grid.d)])
        return flux + pw.tmv(g, a)
    if kind is Kind.TwoPoint:
        return advect(v, a, grid) - pw.mm(g, a)
    gt = pw.transpose(g)
    if kind is Kind.OpVV:
        return advect(v, a, grid) + pw.mm(a, g) - pw.mm(g, a)
    if kind is Kind.OpVC:
        return advect(v, a, grid) + pw.mm(a, g) + pw.mm(gt, a)
    if kind is Kind.OpCC:
        return advect(v, a, grid) + pw.mm(gt, a) - pw.mm(a, gt)
    if kind is Kind.OpCV:
        return advect(v, a, grid) - pw.mm(g, a) - pw.mm(a, gt)
    raise ValueError(f"no Lie-derivative rule for {kind!r}")


def lie_array(kind: Kind, v: np.ndarray, a: np.ndarray, grid) -> np.ndarray:
    """Array-level entry point used by the GENERIC operators."""
    return _lie_array(kind, v, a, grid)


def lie_derivative(v: TensorField, A, kind: Kind | None = None):
    """Lie derivative of ``A`` along the vector field ``v``.

    ``kind`` overrides ``A.kind`` (the result carries the override).
    Multilinear inputs are routed to :func:`lie_general_rank2`.
    """
    if v.kind is not Kind.Vector:
        raise ValueError(f"velocity must be a Vector field, got {v.kind.value}")
    if isinstance(A, Multilinear):
        return lie_general_rank2(v, A)
    grid = same_grid(v, A)
    kind = A.kind if kind is None else kind
    if kind.component_shape(grid.d) != A.kind.component_shape(grid.d):
        raise ValueError(f"cannot read {A.kind.value} data as {kind.value}")
    return TensorField(grid, kind, _lie_array(kind, v.data, A.data, grid))


def stress_rate(v: TensorField, T: TensorField, which: str) -> TensorField:
    """Truesdell rate of an extensive (Cauchy) stress or Oldroyd rate of an intensive one.

    Truesdell needs ``T.tag == "cauchy"``; Oldroyd needs an OpCV field not
    tagged as Cauchy.
    """
    grid = same_grid(v, T)
    if T.kind.rank != 2:
        raise ValueError("stress rates act on matrix fields")
    g = jacobian(v.data, grid)
    gt = pw.transpose(g)
    a = T.data
    if which == "truesdell":
        if T.tag != "cauchy":
            raise ValueError("Truesdell rate needs a field tagged 'cauchy'")
        out = advect(v.data, a, grid) + divergence(v.data, grid) * a - pw.mm(a, gt) - pw.mm(g, a)
    elif which == "oldroyd":
        if T.kind is not Kind.OpCV or T.tag == "cauchy":
            raise ValueError("Oldroyd rate needs an intensive OpCV (Kirchhoff) field")
        out = advect(v.data, a, grid) - pw.mm(a, gt) - pw.mm(g, a)
    else:
        raise ValueError(f"unknown stress rate {which!r}")
    return TensorField(grid, T.kind, out, T.tag)


def commutator(v: TensorField, w: TensorField) -> TensorField:
    """``[[v, w]] = (grad w) v - (grad v) w``."""
    if v.kind is not Kind.Vector or w.kind is not Kind.Vector:
        raise ValueError("commutator needs two Vector fields")
    grid = same_grid(v, w)
    gw = jacobian(w.data, grid)
    gv = jacobian(v.data, grid)
    return TensorField(grid, Kind.Vector, pw.mv(gw, v.data) - pw.mv(gv, w.data))


def _slot_correction(g: np.ndarray, a: np.ndarray, slot: int, covariant_arg: bool) -> np.ndarray:
    b = np.moveaxis(a, slot, 0)
    d = g.shape[0]
    parts = []
    for j in range(d):
        if covariant_arg:
            # vector argument slot: sum_m G[m, j] b[m]
            acc = g[0, j] * b[0]
            for m in range(1, d):
                acc = acc + g[m, j] * b[m]
        else:
            # covector argument slot: sum_m G[j, m] b[m]
            acc = g[j, 0] * b[0]
            for m in range(1, d):
                acc = acc + g[j, m] * b[m]
        parts.append(acc)
    return np.moveaxis(np.stack(parts), 0, slot)


def lie_general_rank2(v: TensorField, A, signature: tuple | None = None):
    """Generic multilinear Lie derivative for tensors with ``i0 + j0 <= 2``.

    Transport plus ``+ A[.., (grad v) v_k, ..]`` per vector argument and
    ``- A[.., (grad v)^T alpha_l, ..]`` per covector argument.
    Accepts a :class:`Multilinear`, a tensor-type :class:`TensorField` (result
    converted back to its kind), or a raw array with ``signature``.
    """
    if isinstance(A, TensorField):
        return from_multilinear(lie_general_rank2(v, as_multilinear(A)), A.kind)
    if not isinstance(A, Multilinear):
        A = Multilinear(v.grid, tuple(signature), np.asarray(A, dtype=np.float64))
    grid = same_grid(v, A)
    i0, j0 = A.signature
    if i0 + j0 > 2:
        raise ValueError("only tensors of rank <= 2 are supported")
    g = jacobian(v.data, grid)
    out = advect(v.data, A.data, grid)
    for slot in range(i0):
        out = out + _slot_correction(g, A.data, slot, covariant_arg=True)
    for slot in range(i0, i0 + j0):
        out = out - _slot_correction(g, A.data, slot, covariant_arg=False)
    return Multilinear(grid, A.signature, out)


def cartan_residual(v: TensorField, beta: TensorField) -> TensorField:
    """``L_v beta - (i_v d beta + d(i_v beta))`` for a covector field."""
    if beta.kind is not Kind.Covector:
        raise ValueError(f"cartan_residual needs a Covector field, got {beta.kind.value}")
    grid = same_grid(v, beta)
    b = beta.data
    db = jacobian(b, grid)  # db[j, i] = d_i beta_j
    dbeta = pw.transpose(db) - db  # (d beta)_{ij} = d_i beta_j - d_j beta_i
    iv_dbeta = pw.tmv(dbeta, v.data)  # sum_i v_i (d beta)_{ij}
    d_ivb = gradient(pw.dot(v.data, b), grid)
    lie = _lie_array(Kind.Covector, v.data, b, grid)
    return TensorField(grid, Kind.Covector, lie - (iv_dbeta + d_ivb))
