import numpy as np
import pytest

from eulgen.field import Kind, sample_field
from eulgen.state import CotState, EtaForces, State, pair
from eulgen.verify import random_cotstate, random_state


def test_arithmetic_keeps_role_and_kinds(grid8):
    a = random_state(grid8, 1, "internal_energy")
    b = random_state(grid8, 5, "internal_energy")
    c = 2.0 * a - b
    assert c.role == "internal_energy"
    assert np.array_equal(c.F.data, 2.0 * a.F.data - b.F.data)
    assert [blk.kind for blk in c.blocks()] == list(State._kinds)
    with pytest.raises(TypeError):
        a + random_cotstate(grid8, 1)


def test_vector_roundtrip(grid8):
    z = random_cotstate(grid8, 3)
    back = CotState.from_vector(grid8, z.to_vector())
    assert all(np.array_equal(x, y) for x, y in zip(z.arrays(), back.arrays()))
    with pytest.raises(ValueError):
        CotState.from_vector(grid8, z.to_vector()[:-1])


def test_block_kinds_and_role_validated(grid8):
    q = random_state(grid8, 1)
    with pytest.raises(ValueError):
        State(q.pi, q.F, q.Fp, q.tau, "enthalpy")
    with pytest.raises(ValueError):
        State(q.pi, q.Fp.with_data(q.F.data), q.Fp, q.tau)
    with pytest.raises(ValueError):
        EtaForces(q.F, q.Fp, q.tau)


def test_pair_is_bilinear_rectangle_rule(grid8):
    z = random_cotstate(grid8, 2)
    q1 = random_state(grid8, 3)
    q2 = random_state(grid8, 9)
    lhs = pair(z, 0.5 * q1 + 2.0 * q2)
    rhs = 0.5 * pair(z, q1) + 2.0 * pair(z, q2)
    assert abs(lhs - rhs) < 1e-12 * abs(lhs)
    e = CotState.e_tau(grid8)
    assert pair(e, q1) == pytest.approx(grid8.cell_volume * np.sum(q1.tau.data), rel=1e-14)
    assert pair(CotState.zeros(grid8), q1) == 0.0
    with pytest.raises(TypeError):
        pair(z, EtaForces(*(sample_field(grid8, k, "constant", c=0.0) for k in EtaForces._kinds)))


def test_norm_matches_vector(grid8):
    q = random_state(grid8, 4)
    assert q.norm() == pytest.approx(np.sqrt(grid8.cell_volume) * np.linalg.norm(q.to_vector()), rel=1e-14)
