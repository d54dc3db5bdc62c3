"""Hot numeric kernels: polynomial evaluation and power-basis design rows.

Both kernels have a numba ``@njit`` implementation and a pure-numpy
fallback. The fallback is selected when numba is unavailable or when the
environment variable ``LOCKPLAN_DISABLE_NUMBA`` is set to a non-empty
value; ``benchmarks/bench_kernels.py`` compares the two paths.
"""

import os

import numpy as np

_DISABLED = bool(os.environ.get("LOCKPLAN_DISABLE_NUMBA"))

try:
    from numba import njit

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAS_NUMBA = False

USE_NUMBA = _HAS_NUMBA and not _DISABLED


def _horner_numpy(coeffs, ts):
    out = np.zeros_like(ts)
    for c in coeffs:
        out = out * ts + c
    return out


def _design_numpy(ts, degree):
    # columns t^degree .. t^1, 1 (highest power first)
    return np.vander(ts, degree + 1)


if USE_NUMBA:

    @njit(cache=True)
    def _horner_njit(coeffs, ts):
        out = np.zeros(ts.shape[0])
        for i in range(ts.shape[0]):
            acc = 0.0
            for j in range(coeffs.shape[0]):
                acc = acc * ts[i] + coeffs[j]
            out[i] = acc
        return out

    @njit(cache=True)
    def _design_njit(ts, degree):
        n = ts.shape[0]
        out = np.empty((n, degree + 1))
        for i in range(n):
            p = 1.0
            for j in range(degree, -1, -1):
                out[i, j] = p
                p *= ts[i]
        return out


def horner_eval(coeffs, ts):
    """Evaluate a polynomial (highest power first) at every t in ``ts``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    if USE_NUMBA:
        return _horner_njit(coeffs, ts)
    return _horner_numpy(coeffs, ts)


def design_powers(ts, degree):
    """Power-basis design matrix: row t -> [t^degree, ..., t, 1]."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    if USE_NUMBA:
        return _design_njit(ts, int(degree))
    return _design_numpy(ts, int(degree))
