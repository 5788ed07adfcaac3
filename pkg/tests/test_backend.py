import os
import subprocess
import sys

import numpy as np
import pytest

from eulgen import kernels
from eulgen._backend import HAVE_NUMBA

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not importable")


@needs_numba
@pytest.mark.parametrize("shape,axis", [((16, 16), 0), ((16, 16), 1), ((2, 2, 8, 8, 8), 3), ((3, 10), -1)])
def test_central_diff_backends_bitwise(shape, axis):
    a = np.random.default_rng(0).standard_normal(shape)
    assert np.array_equal(kernels.central_diff_numba(a, axis, 0.1), kernels.central_diff_numpy(a, axis, 0.1))


@needs_numba
def test_trig_eval_backends_agree():
    rng = np.random.default_rng(1)
    kvec = rng.integers(-4, 5, size=(20, 2))
    coef = rng.standard_normal((3, 20)) + 1j * rng.standard_normal((3, 20))
    pts = rng.uniform(0, 6.3, size=(500, 2))
    a = kernels.trig_eval_numba(coef, kvec, pts, 1.0)
    b = kernels.trig_eval_numpy(coef, kvec, pts, 1.0)
    assert np.max(np.abs(a - b)) < 1e-12 * np.max(np.abs(b))


SNIPPET = """
import numpy as np
from eulgen import _backend
from eulgen.verify import random_state
from eulgen.field import make_grid
from eulgen.thermo import rhs
q = random_state(make_grid(2, 16, 2 * np.pi), 3)
np.save({path!r}, rhs(q).to_vector())
print(_backend.BACKEND)
"""


def _run(backend, path):
    env = dict(os.environ, EULGEN_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", SNIPPET.format(path=str(path))], env=env,
                          capture_output=True, text=True, check=True)
    return proc.stdout.strip()


@needs_numba
def test_backend_flag_switches_and_results_match(tmp_path):
    assert _run("numpy", tmp_path / "a.npy") == "numpy"
    assert _run("numba", tmp_path / "b.npy") == "numba"
    # the grid stencils are bitwise identical across backends
    assert np.array_equal(np.load(tmp_path / "a.npy"), np.load(tmp_path / "b.npy"))


def test_bad_backend_flag():
    env = dict(os.environ, EULGEN_BACKEND="cuda")
    proc = subprocess.run([sys.executable, "-c", "import eulgen.kernels"], env=env, capture_output=True, text=True)
    assert proc.returncode != 0 and "EULGEN_BACKEND" in proc.stderr
