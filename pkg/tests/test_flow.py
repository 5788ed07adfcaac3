import math

import numpy as np
import pytest

from eulgen.field import Kind, TensorField, make_grid, sample_field
from eulgen.flow import (Diffeo, FlowError, TrigInterpolant, flow_map, inverse, lie_via_flow, pullback,
                         pushforward)
from eulgen.lie import lie_derivative
from eulgen.verify import band_limited_field

TWO_PI = 2.0 * math.pi


def test_interpolant_reproduces_nodes_and_band_limited_values(grid16):
    f = band_limited_field(grid16, Kind.OpCV, 3, max_mode=2)
    ti = TrigInterpolant(f.data, grid16)
    vals = ti(grid16.points())
    assert np.max(np.abs(vals.reshape(f.data.shape) - f.data)) < 1e-13
    xg = grid16.coords()
    wave = TensorField(grid16, Kind.IntensiveScalar, np.sin(xg[0] + 2.0 * xg[1]) + 0.5 * np.cos(3.0 * xg[1]))
    x = np.array([[0.3, 1.7], [5.9, 2.2], [1.234, 6.0]])
    exact = np.sin(x[:, 0] + 2.0 * x[:, 1]) + 0.5 * np.cos(3.0 * x[:, 1])
    assert np.max(np.abs(TrigInterpolant(wave.data, grid16)(x) - exact)) < 1e-13


def test_constant_flow_is_translation(grid16):
    v = sample_field(grid16, Kind.Vector, "constant", c=[0.5, -0.25])
    phi = flow_map(v, 2.0)
    assert np.allclose(phi.points - grid16.points(), [1.0, -0.5], atol=1e-14)
    assert np.allclose(phi.jac, np.eye(2)[:, :, None], atol=1e-14)


def test_flow_group_property(grid16):
    v = band_limited_field(grid16, Kind.Vector, 2, amplitude=0.3)
    fwd = flow_map(v, 0.4, 32)
    back = flow_map(v, -0.4, 32)
    inv = inverse(fwd)
    assert np.max(np.abs(inv.points - back.points)) < 1e-8
    assert np.max(np.abs(inv.jac - back.jac)) < 1e-7


def test_pullback_pushforward_roundtrip(grid16):
    v = band_limited_field(grid16, Kind.Vector, 4, amplitude=0.2)
    phi = flow_map(v, 0.2, 16)
    for kind in (Kind.IntensiveScalar, Kind.Covector, Kind.OpVC, Kind.Momentum):
        A = band_limited_field(grid16, kind, 5)
        back = pushforward(phi, pullback(phi, A))
        # the pulled-back field is no longer band limited, so this is an interpolation error bound
        assert (back - A).norm() / A.norm() < 5e-2


def test_pullback_pairing_duality(grid16):
    """<phi* alpha, phi* w> = phi*(<alpha, w>) pointwise."""
    v = band_limited_field(grid16, Kind.Vector, 6, amplitude=0.3)
    phi = flow_map(v, 0.3)
    w = band_limited_field(grid16, Kind.Vector, 7)
    a = band_limited_field(grid16, Kind.Covector, 8)
    lhs = np.sum(pullback(phi, a).data * pullback(phi, w).data, axis=0)
    pair = TensorField(grid16, Kind.IntensiveScalar, np.sum(a.data * w.data, axis=0))
    rhs = pullback(phi, pair).data
    # the product has twice the bandwidth, still resolved on 16 nodes
    assert np.max(np.abs(lhs - rhs)) < 1e-11


def test_extensive_pullback_conserves_total(grid16):
    v = band_limited_field(grid16, Kind.Vector, 1, amplitude=0.3)
    rho = band_limited_field(grid16, Kind.ExtensiveScalar, 2)
    phi = flow_map(v, 0.1)
    assert abs(np.sum(pullback(phi, rho).data) - np.sum(rho.data)) / np.sum(rho.data) < 1e-4


def test_oracle_richardson():
    """Halving ds in the oracle changes it by O(ds^2)."""
    g = make_grid(2, 16, TWO_PI)
    v = band_limited_field(g, Kind.Vector, 3, 0.5)
    A = band_limited_field(g, Kind.OpCV, 4)
    a = lie_via_flow(v, A, ds=4e-2)
    b = lie_via_flow(v, A, ds=2e-2)
    c = lie_via_flow(v, A, ds=1e-2)
    ratio = (a - b).norm() / (b - c).norm()
    assert 3.5 < ratio < 4.5
    assert (c - lie_derivative(v, A)).norm() / c.norm() < 0.05


def test_flow_rejects_bad_input(grid16):
    with pytest.raises(ValueError):
        flow_map(band_limited_field(grid16, Kind.Covector, 1), 0.1)
    with pytest.raises(ValueError):
        lie_via_flow(band_limited_field(grid16, Kind.Vector, 1), band_limited_field(grid16, Kind.Vector, 2), ds=0.0)
    v = band_limited_field(grid16, Kind.Vector, 1, amplitude=20.0)
    with pytest.raises(FlowError):
        flow_map(v, 5.0, 2)
    assert np.array_equal(Diffeo.identity(grid16).points, grid16.points())
