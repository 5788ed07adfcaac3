"""Hot inner loops, each with a numba and a numpy implementation.

The public names dispatch on :data:`eulgen._backend.USE_NUMBA`. Both paths
perform the same IEEE operations for the stencil kernel, so results agree
bitwise; the interpolation kernel sums in a different order per backend.
"""

import numpy as np

from ._backend import USE_NUMBA, HAVE_NUMBA

# points per chunk for the numpy interpolation path (bounds the P x M temporaries)
_CHUNK = 8192


def central_diff_numpy(a, axis, h):
    """Periodic centered difference ``(a[i+1] - a[i-1]) / (2h)`` along ``axis``."""
    return (np.roll(a, -1, axis=axis) - np.roll(a, 1, axis=axis)) / (2.0 * h)


def trig_eval_numpy(coef, kvec, points, omega):
    """Evaluate ``Re sum_m coef[c, m] exp(i omega k_m . x_p)``.

    coef: complex (C, M); kvec: int (M, d); points: (P, d). Returns (C, P).
    """
    coef = np.ascontiguousarray(coef)
    ncomp = coef.shape[0]
    npts = points.shape[0]
    out = np.empty((ncomp, npts))
    kf = kvec.astype(np.float64).T
    cre = coef.real.T
    cim = coef.imag.T
    for start in range(0, npts, _CHUNK):
        stop = min(start + _CHUNK, npts)
        phase = omega * (points[start:stop] @ kf)
        out[:, start:stop] = (np.cos(phase) @ cre - np.sin(phase) @ cim).T
    return out


if HAVE_NUMBA:
    import numba

    @numba.njit(cache=True)
    def _cdiff3(a, two_h, out):
        pre, n, post = a.shape
        for p in range(pre):
            for i in range(n):
                ip = i + 1 if i + 1 < n else 0
                im = i - 1 if i > 0 else n - 1
                for q in range(post):
                    out[p, i, q] = (a[p, ip, q] - a[p, im, q]) / two_h

    @numba.njit(cache=True, parallel=True)
    def _trig_eval(cre, cim, kvec, points, omega, out):
        ncomp, nmode = cre.shape
        npts, d = points.shape
        for p in numba.prange(npts):
            for m in range(nmode):
                ph = 0.0
                for a in range(d):
                    ph += kvec[m, a] * points[p, a]
                ph *= omega
                c = np.cos(ph)
                s = np.sin(ph)
                for k in range(ncomp):
                    out[k, p] += cre[k, m] * c - cim[k, m] * s

    def central_diff_numba(a, axis, h):
        a = np.asarray(a, dtype=np.float64)
        axis = axis % a.ndim
        shape = a.shape
        pre = int(np.prod(shape[:axis], dtype=np.int64))
        post = int(np.prod(shape[axis + 1:], dtype=np.int64))
        a3 = np.ascontiguousarray(a).reshape(pre, shape[axis], post)
        out = np.empty_like(a3)
        _cdiff3(a3, 2.0 * h, out)
        return out.reshape(shape)

    def trig_eval_numba(coef, kvec, points, omega):
        cre = np.ascontiguousarray(coef.real)
        cim = np.ascontiguousarray(coef.imag)
        out = np.zeros((coef.shape[0], points.shape[0]))
        _trig_eval(cre, cim, np.ascontiguousarray(kvec, dtype=np.float64),
                   np.ascontiguousarray(points, dtype=np.float64), float(omega), out)
        return out

else:  # pragma: no cover
    central_diff_numba = central_diff_numpy
    trig_eval_numba = trig_eval_numpy


if USE_NUMBA:
    central_diff = central_diff_numba
    trig_eval = trig_eval_numba
else:
    central_diff = central_diff_numpy
    trig_eval = trig_eval_numpy
