"""Pointwise multilinear algebra: tensor products, contractions, insertions.

A :class:`Multilinear` field of signature ``(i0, j0)`` stores the array
``a[s_1, ..., s_{i0+j0}, *grid]`` with the ``i0`` vector-argument slots first
and the ``j0`` covector-argument slots after, so that
``A[v_1..; alpha_1..] = sum a[k..; l..] v_1[k] .. alpha_1[l] ..`` in the
Cartesian basis.

Identification of the tensor-type kinds with multilinear arrays:

========== ========= ==================================
kind        signature array
========== ========= ==================================
scalar      (0, 0)    f
Vector w    (0, 1)    w             (``A_w[alpha] = <alpha, w>``)
Covector    (1, 0)    beta          (``B_beta[v] = <beta, v>``)
OpVV  B     (1, 1)    B^T           (``<alpha, B v>``)
OpCC  D     (1, 1)    D             (``<D alpha, v>``)
OpVC  C     (2, 0)    C^T           (``<C v1, v2>``)
OpCV  E     (0, 2)    E             (``<alpha1, E alpha2>``)
========== ========= ==================================
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pointwise as pw
from .field import Grid, Kind, TensorField, same_grid


@dataclass(frozen=True, eq=False)
class Multilinear:
    grid: Grid
    signature: tuple
    data: np.ndarray

    def __post_init__(self):
        i0, j0 = self.signature
        expected = (self.grid.d,) * (i0 + j0) + self.grid.shape
        if self.data.shape != expected:
            raise ValueError(f"signature {self.signature} needs shape {expected}, got {self.data.shape}")

    @property
    def rank(self) -> int:
        return sum(self.signature)


SIGNATURES = {
    Kind.IntensiveScalar: (0, 0),
    Kind.Vector: (0, 1),
    Kind.Covector: (1, 0),
    Kind.OpVV: (1, 1),
    Kind.OpCC: (1, 1),
    Kind.OpVC: (2, 0),
    Kind.OpCV: (0, 2),
}

_TRANSPOSED_STORAGE = {Kind.OpVV, Kind.OpVC}


def as_multilinear(A) -> Multilinear:
    if isinstance(A, Multilinear):
        return A
    if A.kind not in SIGNATURES:
        raise ValueError(f"{A.kind.value} has no multilinear identification")
    data = pw.transpose(A.data) if A.kind in _TRANSPOSED_STORAGE else A.data
    return Multilinear(A.grid, SIGNATURES[A.kind], np.asarray(data))


def from_multilinear(ml: Multilinear, kind: Kind) -> TensorField:
    if SIGNATURES.get(kind) != tuple(ml.signature):
        raise ValueError(f"signature {ml.signature} cannot be read as {kind.value}")
    data = pw.transpose(ml.data) if kind in _TRANSPOSED_STORAGE else ml.data
    return TensorField(ml.grid, kind, data)


def tensor_product(A, B) -> Multilinear:
    a, b = as_multilinear(A), as_multilinear(B)
    grid = same_grid(a, b)
    (ia, ja), (ib, jb) = a.signature, b.signature
    ra, rb = ia + ja, ib + jb
    outer = a.data.reshape(a.data.shape[:ra] + (1,) * rb + grid.shape) \
        * b.data.reshape((1,) * ra + b.data.shape)
    # reorder slots to (vec_A, vec_B, cov_A, cov_B)
    order = (list(range(ia)) + list(range(ra, ra + ib))
             + list(range(ia, ra)) + list(range(ra + ib, ra + rb)))
    order += list(range(ra + rb, ra + rb + grid.d))
    return Multilinear(grid, (ia + ib, ja + jb), np.transpose(outer, order))


def contract(A, n: int, m: int) -> Multilinear:
    """Contract the n-th vector slot with the m-th covector slot (1-based)."""
    a = as_multilinear(A)
    i0, j0 = a.signature
    if not (1 <= n <= i0):
        raise ValueError(f"vector slot {n} out of range for signature {a.signature}")
    if not (1 <= m <= j0):
        raise ValueError(f"covector slot {m} out of range for signature {a.signature}")
    data = np.trace(a.data, axis1=n - 1, axis2=i0 + m - 1)
    # np.trace moves the summed axes away; grid axes stay trailing
    return Multilinear(a.grid, (i0 - 1, j0 - 1), data)


def interior_product(w: TensorField, A) -> Multilinear:
    """Insert the vector field ``w`` into the first vector slot of ``A``."""
    if w.kind is not Kind.Vector:
        raise ValueError(f"interior product needs a Vector field, got {w.kind.value}")
    a = as_multilinear(A)
    same_grid(w, a)
    i0, j0 = a.signature
    if i0 < 1:
        raise ValueError(f"signature {a.signature} has no vector slot")
    acc = w.data[0] * a.data[0]
    for k in range(1, a.grid.d):
        acc = acc + w.data[k] * a.data[k]
    return Multilinear(a.grid, (i0 - 1, j0), acc)


_ADJOINT_KIND = {
    Kind.OpVV: Kind.OpCC,
    Kind.OpCC: Kind.OpVV,
    Kind.OpVC: Kind.OpVC,
    Kind.OpCV: Kind.OpCV,
    Kind.TwoPoint: Kind.TwoPoint,
    Kind.IntensiveMatrix: Kind.IntensiveMatrix,
}

# (domain, codomain); "U" is the referential space of two-point/internal tensors
_SPACES = {
    Kind.OpVV: ("V", "V"),
    Kind.OpVC: ("V", "C"),
    Kind.OpCC: ("C", "C"),
    Kind.OpCV: ("C", "V"),
    Kind.TwoPoint: ("U", "V"),
    Kind.IntensiveMatrix: ("U", "U"),
}
_KIND_OF_SPACES = {v: k for k, v in _SPACES.items()}
_VECTOR_SPACE = {Kind.Vector: "V", Kind.Covector: "C"}
_VECTOR_KIND = {"V": Kind.Vector, "C": Kind.Covector}


def transpose(T: TensorField) -> TensorField:
    """Pointwise adjoint; an OpVV field becomes OpCC and vice versa."""
    if T.kind not in _ADJOINT_KIND:
        raise ValueError(f"transpose undefined for {T.kind.value}")
    return TensorField(T.grid, _ADJOINT_KIND[T.kind], pw.transpose(T.data))


def matmul_pointwise(A: TensorField, B: TensorField, kind: Kind | None = None) -> TensorField:
    """Composition ``A B`` with the result kind inferred from domains/codomains."""
    grid = same_grid(A, B)
    if kind is None:
        if A.kind not in _SPACES or B.kind not in _SPACES:
            raise ValueError("cannot infer composite kind; pass kind=")
        (a_in, a_out), (b_in, b_out) = _SPACES[A.kind], _SPACES[B.kind]
        if a_in != b_out:
            raise ValueError(f"variance mismatch composing {A.kind.value} after {B.kind.value}")
        kind = _KIND_OF_SPACES.get((b_in, a_out))
        if kind is None:
            raise ValueError("composite has no kind; pass kind=")
    return TensorField(grid, kind, pw.mm(A.data, B.data))


def apply_matrix_to_vector(A: TensorField, w: TensorField, kind: Kind | None = None) -> TensorField:
    grid = same_grid(A, w)
    if kind is None:
        if A.kind not in _SPACES or w.kind not in _VECTOR_SPACE:
            raise ValueError("cannot infer result kind; pass kind=")
        a_in, a_out = _SPACES[A.kind]
        if a_in != _VECTOR_SPACE[w.kind]:
            raise ValueError(f"variance mismatch applying {A.kind.value} to {w.kind.value}")
        kind = _VECTOR_KIND[a_out]
    return TensorField(grid, kind, pw.mv(A.data, w.data))


MODES = ("tensor_product", "contract", "interior_product", "transpose",
         "matmul_pointwise", "apply_matrix_to_vector")


def tensor_algebra(mode: str, *inputs, **options):
    """Dispatch to the pointwise algebra routine named ``mode``."""
    table = {
        "tensor_product": tensor_product,
        "contract": contract,
        "interior_product": interior_product,
        "transpose": transpose,
        "matmul_pointwise": matmul_pointwise,
        "apply_matrix_to_vector": apply_matrix_to_vector,
    }
    if mode not in table:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    return table[mode](*inputs, **options)
