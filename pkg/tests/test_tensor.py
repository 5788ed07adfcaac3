import numpy as np
import pytest

from eulgen.field import Kind, sample_field
from eulgen.tensor import (Multilinear, as_multilinear, contract, from_multilinear, interior_product,
                           tensor_algebra, tensor_product)


def fr(g, kind, seed):
    return sample_field(g, kind, "fourier_random", seed=seed, max_mode=1, amplitude=1.0)


def test_multilinear_roundtrip(grid8):
    for kind in (Kind.OpVV, Kind.OpVC, Kind.OpCC, Kind.OpCV, Kind.Vector, Kind.Covector):
        A = fr(grid8, kind, 3)
        assert np.array_equal(from_multilinear(as_multilinear(A), kind).data, A.data)
    with pytest.raises(ValueError):
        as_multilinear(fr(grid8, Kind.TwoPoint, 1))


def test_tensor_product_then_contract_is_pairing(grid8):
    w = fr(grid8, Kind.Vector, 1)
    a = fr(grid8, Kind.Covector, 2)
    T = tensor_product(w, a)
    assert T.signature == (1, 1)
    c = contract(T, 1, 1)
    assert c.signature == (0, 0)
    assert np.allclose(c.data, np.sum(w.data * a.data, axis=0), atol=1e-15)
    with pytest.raises(ValueError):
        contract(T, 2, 1)


def test_interior_product_of_bilinear_form(grid8):
    w = fr(grid8, Kind.Vector, 4)
    B = fr(grid8, Kind.OpVC, 5)  # bilinear form on vectors
    iw = interior_product(w, B)
    assert iw.signature == (1, 0)
    ml = as_multilinear(B).data
    expected = np.einsum("i...,ij...->j...", w.data, ml)
    assert np.allclose(iw.data, expected, atol=1e-14)
    with pytest.raises(ValueError):
        interior_product(fr(grid8, Kind.Covector, 1), B)


def test_kind_inference(grid8):
    A = fr(grid8, Kind.OpVV, 1)
    assert tensor_algebra("transpose", A).kind is Kind.OpCC
    assert tensor_algebra("matmul_pointwise", A, A).kind is Kind.OpVV
    assert tensor_algebra("apply_matrix_to_vector", A, fr(grid8, Kind.Vector, 2)).kind is Kind.Vector
    F = fr(grid8, Kind.TwoPoint, 3)
    Fp = fr(grid8, Kind.IntensiveMatrix, 4)
    assert tensor_algebra("matmul_pointwise", F, Fp).kind is Kind.TwoPoint
    with pytest.raises(ValueError):
        tensor_algebra("matmul_pointwise", Fp, F)
    with pytest.raises(ValueError):
        tensor_algebra("apply_matrix_to_vector", A, fr(grid8, Kind.Covector, 2))
    with pytest.raises(ValueError):
        tensor_algebra("wedge", A)


def test_multilinear_shape_checked(grid8):
    with pytest.raises(ValueError):
        Multilinear(grid8, (1, 1), np.zeros((2, 8, 8)))
