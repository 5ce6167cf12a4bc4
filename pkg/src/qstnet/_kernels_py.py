"""Pure numpy implementations of the spectral-sum kernels.

These are the reference versions; ``_kernels.pyx`` mirrors them one to one.
Both evaluate ``f(t) = |sum_k w_k exp(-i lam_k t)|**2`` for real weights.
"""

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 1 << 16


def fidelity_at(weights, eigvals, t):
    re = 0.0
    im = 0.0
    for w, lam in zip(weights, eigvals):
        phase = lam * t
        re += w * math.cos(phase)
        im -= w * math.sin(phase)
    return re * re + im * im


def fidelity_grid(weights, eigvals, times):
    weights = np.asarray(weights, dtype=float)
    eigvals = np.asarray(eigvals, dtype=float)
    times = np.asarray(times, dtype=float)
    out = np.empty(times.shape[0])
    for start in range(0, times.shape[0], _CHUNK):
        t = times[start:start + _CHUNK]
        phase = np.outer(t, eigvals)
        re = np.cos(phase) @ weights
        im = np.sin(phase) @ weights
        out[start:start + _CHUNK] = re * re + im * im
    return out


def local_maxima(values):
    """Indices that are >= both neighbours; endpoints compare to one side."""
    v = np.asarray(values, dtype=float)
    m = v.shape[0]
    if m == 1:
        return np.zeros(1, dtype=np.intp)
    keep = np.ones(m, dtype=bool)
    keep[:-1] &= v[:-1] >= v[1:]
    keep[1:] &= v[1:] >= v[:-1]
    return np.flatnonzero(keep)


def golden_max(weights, eigvals, a, b, tol):
    """Golden-section search for a maximum of ``f`` on ``[a, b]``.

    Returns the best ``(t, f)`` seen; the bracket shrinks until ``b - a <= tol``.
    """
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc = fidelity_at(weights, eigvals, c)
    fd = fidelity_at(weights, eigvals, d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fidelity_at(weights, eigvals, c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fidelity_at(weights, eigvals, d)
    if fc >= fd:
        return c, fc
    return d, fd
