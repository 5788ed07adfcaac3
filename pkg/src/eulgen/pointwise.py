"""Node-wise small-matrix algebra on component-leading arrays.

Vectors have shape ``(d, *grid)`` and matrices ``(d, d, *grid)``. Sums over
the contracted index always run ``m = 0 .. d-1`` in order, so two routines
computing the same sum of products agree bitwise.
"""

import numpy as np


def mm(a, b):
    """Pointwise matrix product ``(a b)_ij = sum_m a_im b_mj``."""
    acc = a[:, 0, None] * b[None, 0, :]
    for m in range(1, a.shape[1]):
        acc = acc + a[:, m, None] * b[None, m, :]
    return acc


def mv(a, w):
    """Pointwise matrix-vector product ``(a w)_i = sum_m a_im w_m``."""
    acc = a[:, 0] * w[0]
    for m in range(1, a.shape[1]):
        acc = acc + a[:, m] * w[m]
    return acc


def tmv(a, w):
    """Pointwise ``(a^T w)_j = sum_m a_mj w_m``."""
    acc = a[0, :] * w[0]
    for m in range(1, a.shape[0]):
        acc = acc + a[m, :] * w[m]
    return acc


def dot(u, w):
    acc = u[0] * w[0]
    for m in range(1, u.shape[0]):
        acc = acc + u[m] * w[m]
    return acc


def ddot(a, b):
    """Frobenius product ``a : b`` over the two leading axes."""
    d = a.shape[0]
    acc = a[0, 0] * b[0, 0]
    for i in range(d):
        for j in range(d):
            if i or j:
                acc = acc + a[i, j] * b[i, j]
    return acc


def transpose(a):
    return np.swapaxes(a, 0, 1)


def trace(a):
    acc = a[0, 0]
    for i in range(1, a.shape[0]):
        acc = acc + a[i, i]
    return acc


def identity(d, grid_shape):
    eye = np.zeros((d, d) + tuple(grid_shape))
    for i in range(d):
        eye[i, i] = 1.0
    return eye


def det(a):
    d = a.shape[0]
    if d == 1:
        return a[0, 0].copy()
    if d == 2:
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if d == 3:
        return (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
                - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
                + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    raise ValueError(f"unsupported dimension {d}")


def inv(a):
    """Pointwise inverse via cofactors; caller guarantees det != 0."""
    d = a.shape[0]
    dt = det(a)
    out = np.empty_like(a)
    if d == 1:
        out[0, 0] = 1.0 / a[0, 0]
    elif d == 2:
        out[0, 0] = a[1, 1] / dt
        out[0, 1] = -a[0, 1] / dt
        out[1, 0] = -a[1, 0] / dt
        out[1, 1] = a[0, 0] / dt
    elif d == 3:
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                c = [k for k in range(3) if k != i]
                minor = a[r[0], c[0]] * a[r[1], c[1]] - a[r[0], c[1]] * a[r[1], c[0]]
                out[i, j] = (-1.0) ** (i + j) * minor / dt
    else:
        raise ValueError(f"unsupported dimension {d}")
    return out


def sym(a):
    return 0.5 * (a + transpose(a))


def skew_max(a):
    """Largest entry of ``|a - a^T|`` over all nodes."""
    return float(np.max(np.abs(a - transpose(a)))) if a.size else 0.0
