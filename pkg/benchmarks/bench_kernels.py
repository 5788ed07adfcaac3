"""Time the numba and numpy kernels side by side and check that they agree.

    python3 benchmarks/bench_kernels.py [--n 64] [--repeat 5]

Both implementations are imported directly, so the ``EULGEN_BACKEND`` flag
does not matter here; it only picks which one the library dispatches to.
"""

import argparse
import time

import numpy as np

from eulgen import kernels
from eulgen._backend import HAVE_NUMBA


def best_time(fn, repeat):
    fn()  # warm-up (and JIT compile)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=64, help="grid points per axis (2D)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    n, h = args.n, 2.0 * np.pi / args.n
    a = rng.standard_normal((2, 2, n, n))

    modes = [(kx, ky) for kx in range(-n // 2 + 1, n // 2) for ky in range(-n // 2 + 1, n // 2)]
    kvec = np.array(modes[: min(len(modes), 256)], dtype=np.int64)
    coef = rng.standard_normal((4, len(kvec))) + 1j * rng.standard_normal((4, len(kvec)))
    pts = rng.uniform(0.0, 2.0 * np.pi, size=(n * n, 2))

    rows = []
    for axis in (2, 3):
        ref = kernels.central_diff_numpy(a, axis, h)
        got = kernels.central_diff_numba(a, axis, h)
        rows.append((f"central_diff axis={axis}",
                     best_time(lambda: kernels.central_diff_numpy(a, axis, h), args.repeat),
                     best_time(lambda: kernels.central_diff_numba(a, axis, h), args.repeat),
                     float(np.max(np.abs(ref - got)))))
    ref = kernels.trig_eval_numpy(coef, kvec, pts, 1.0)
    got = kernels.trig_eval_numba(coef, kvec, pts, 1.0)
    rows.append((f"trig_eval {len(kvec)} modes x {len(pts)} pts",
                 best_time(lambda: kernels.trig_eval_numpy(coef, kvec, pts, 1.0), args.repeat),
                 best_time(lambda: kernels.trig_eval_numba(coef, kvec, pts, 1.0), args.repeat),
                 float(np.max(np.abs(ref - got)) / np.max(np.abs(ref)))))

    print(f"{'kernel':40s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, t_np, t_nb, diff in rows:
        print(f"{name:40s} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:8.2f} {diff:10.2e}")


if __name__ == "__main__":
    main()
