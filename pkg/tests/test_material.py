import numpy as np
import pytest

from eulgen import pointwise as pw
from eulgen.material import (DissipationSpec, MaterialModel, StateError, cauchy_stress, energy_to_entropy,
                             entropy_to_energy, evaluate, mechanical)

MODEL = MaterialModel()


def _rand_matrices(seed, n=10, scale=0.15):
    rng = np.random.default_rng(seed)
    return np.eye(2)[:, :, None] + scale * rng.standard_normal((2, 2, n))


def test_reference_state_is_stress_free():
    eye = np.eye(2)[:, :, None] * np.ones(3)
    W, H, dW, dWH = mechanical(MODEL, eye, eye)
    assert np.all(W == 0.0) and np.all(H == 0.0)
    assert np.max(np.abs(dW)) < 1e-15 and np.max(np.abs(dWH)) < 1e-15


def test_mechanical_derivatives_match_finite_differences():
    F, Fp = _rand_matrices(1), _rand_matrices(2, scale=0.05)
    _, _, dW, dWH = mechanical(MODEL, F, Fp)
    eps = 1e-6
    for i in range(2):
        for j in range(2):
            E = np.zeros_like(F)
            E[i, j] = eps
            Wp, Hp, _, _ = mechanical(MODEL, F + E, Fp)
            Wm, Hm, _, _ = mechanical(MODEL, F - E, Fp)
            assert np.allclose((Wp - Wm) / (2 * eps), dW[i, j], atol=1e-8)
            Wp, Hp, _, _ = mechanical(MODEL, F, Fp + E)
            Wm, Hm, _, _ = mechanical(MODEL, F, Fp - E)
            assert np.allclose((Wp + Hp - Wm - Hm) / (2 * eps), dWH[i, j], atol=1e-8)


def test_frame_indifference():
    F, Fp = _rand_matrices(3), _rand_matrices(4, scale=0.05)
    c, s = np.cos(0.7), np.sin(0.7)
    Q = np.array([[c, -s], [s, c]])[:, :, None] * np.ones(F.shape[2])
    W1 = mechanical(MODEL, F, Fp)[0]
    W2 = mechanical(MODEL, pw.mm(Q, F), Fp)[0]
    assert np.allclose(W1, W2, atol=1e-14)


def test_roles_agree_on_temperature_and_stresses():
    F, Fp = _rand_matrices(5), _rand_matrices(6, scale=0.05)
    s = np.linspace(-0.3, 0.8, F.shape[2])
    e = entropy_to_energy(MODEL, F, Fp, s)
    assert np.allclose(energy_to_entropy(MODEL, F, Fp, e), s, atol=1e-13)
    a = evaluate(MODEL, F, Fp, s, "entropy")
    b = evaluate(MODEL, F, Fp, e, "internal_energy")
    assert np.allclose(a.theta, b.theta, rtol=1e-13)
    assert np.allclose(a.sigma_e, b.sigma_e, atol=1e-13)
    assert np.allclose(a.sigma_p, b.sigma_p, atol=1e-13)
    assert np.allclose(a.free_energy, b.free_energy, atol=1e-13)
    # Cauchy stress from a frame-indifferent energy is symmetric
    sig = cauchy_stress(a, F)
    assert np.max(np.abs(sig - pw.transpose(sig))) < 1e-14


def test_thermal_floor_and_inadmissible_states():
    F = Fp = np.eye(2)[:, :, None] * np.ones(2)
    with pytest.raises(StateError, match="thermal floor"):
        evaluate(MODEL, F, Fp, np.zeros(2), "internal_energy")
    flip = np.diag([-1.0, 1.0])[:, :, None] * np.ones(2)  # det = -1 (note det(-I) = +1 in 2D)
    with pytest.raises(StateError, match="det Fe"):
        mechanical(MODEL, flip, Fp)
    with pytest.raises(StateError, match="det Fp"):
        mechanical(MODEL, F, flip)
    with pytest.raises(ValueError):
        evaluate(MODEL, F, Fp, np.zeros(2), "enthalpy")


def test_parameter_validation():
    with pytest.raises(ValueError):
        MaterialModel(mu=0.0)
    with pytest.raises(ValueError):
        MaterialModel(k_h=-1.0)
    with pytest.raises(ValueError):
        DissipationSpec(mu_v=-0.1)
    assert not DissipationSpec().active and DissipationSpec(kappa_heat=1e-3).active
    assert MODEL.wave_speed(1.0) == pytest.approx(np.sqrt(3.0))
