"""Kernel backend selection.

``EULGEN_BACKEND=numpy`` forces the pure-numpy kernels; the default is
``numba`` whenever numba imports. ``EULGEN_THREADS`` caps numba's thread pool.
"""

import os
import warnings

# old system TBB: numba falls back to another threading layer on its own
warnings.filterwarnings("ignore", message="The TBB threading layer requires")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _requested_backend() -> str:
    name = os.environ.get("EULGEN_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"EULGEN_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


BACKEND = _requested_backend()
USE_NUMBA = BACKEND == "numba"


def _apply_thread_cap() -> None:
    cap = os.environ.get("EULGEN_THREADS")
    if not cap or not HAVE_NUMBA:
        return
    n = int(cap)
    if n < 1:
        raise ValueError("EULGEN_THREADS must be a positive integer")
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


_apply_thread_cap()
