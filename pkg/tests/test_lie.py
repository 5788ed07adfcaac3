import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eulgen.field import Kind, TensorField, diff_op, make_grid, sample_field, strain_rate
from eulgen.lie import commutator, lie_derivative, lie_general_rank2, stress_rate
from eulgen.tensor import SIGNATURES
from eulgen.verify import band_limited_field

TWO_PI = 2.0 * math.pi


def test_constant_velocity_is_pure_transport(grid16):
    x = grid16.coords()
    v = sample_field(grid16, Kind.Vector, "constant", c=[1.0, 0.0])
    f = TensorField(grid16, Kind.IntensiveScalar, np.sin(x[0]))
    expected = np.cos(x[0]) * math.sin(grid16.h) / grid16.h
    assert np.max(np.abs(lie_derivative(v, f).data - expected)) < 1e-14
    # a constant flow does not stretch anything
    A = band_limited_field(grid16, Kind.OpVV, 3)
    assert np.allclose(lie_derivative(v, A).data,
                       lie_derivative(v, TensorField(grid16, Kind.IntensiveMatrix, A.data)).data, atol=0)


def test_extensive_scalar_is_conservative(grid16):
    v = band_limited_field(grid16, Kind.Vector, 1)
    rho = band_limited_field(grid16, Kind.ExtensiveScalar, 2)
    assert abs(np.sum(lie_derivative(v, rho).data)) < 1e-12


def test_lie_of_vector_along_itself_vanishes(grid16):
    v = band_limited_field(grid16, Kind.Vector, 5)
    assert np.max(np.abs(lie_derivative(v, v).data)) < 1e-14


def test_kind_override_and_mismatch(grid16):
    v = band_limited_field(grid16, Kind.Vector, 1)
    A = band_limited_field(grid16, Kind.OpCV, 2)
    out = lie_derivative(v, A, kind=Kind.OpVV)
    assert out.kind is Kind.OpVV
    with pytest.raises(ValueError):
        lie_derivative(v, A, kind=Kind.Vector)
    with pytest.raises(ValueError):
        lie_derivative(band_limited_field(grid16, Kind.Covector, 1), A)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_general_rule_matches_specialized_bitwise(seed):
    g = make_grid(2, 8, TWO_PI)
    v = band_limited_field(g, Kind.Vector, seed)
    for kind in SIGNATURES:
        A = band_limited_field(g, kind, seed + 1)
        assert np.array_equal(lie_derivative(v, A).data, lie_general_rank2(v, A).data)


def test_identity_strain_rate(grid16):
    v = band_limited_field(grid16, Kind.Vector, 8)
    eye = sample_field(grid16, Kind.OpVC, "constant", c=0.0, offset="identity")
    assert np.max(np.abs(lie_derivative(v, eye).data - 2.0 * strain_rate(v).data)) <= 1e-14


def test_commutator_antisymmetric(grid16):
    v = band_limited_field(grid16, Kind.Vector, 1)
    w = band_limited_field(grid16, Kind.Vector, 2)
    assert np.array_equal(commutator(v, w).data, -commutator(w, v).data)


def test_stress_rates(grid16):
    v = band_limited_field(grid16, Kind.Vector, 3)
    T = band_limited_field(grid16, Kind.OpCV, 4)
    old = stress_rate(v, T, "oldroyd")
    assert np.allclose(old.data, lie_derivative(v, T).data, rtol=0, atol=1e-13)
    cauchy = TensorField(grid16, Kind.OpCV, T.data, "cauchy")
    tru = stress_rate(v, cauchy, "truesdell")
    assert tru.tag == "cauchy"
    divv = diff_op(v, "div_vector").data
    assert np.allclose(tru.data, old.data + divv * T.data, rtol=0, atol=1e-13)
    with pytest.raises(ValueError):
        stress_rate(v, T, "truesdell")
    with pytest.raises(ValueError):
        stress_rate(v, cauchy, "oldroyd")
    with pytest.raises(ValueError):
        stress_rate(v, T, "jaumann")
