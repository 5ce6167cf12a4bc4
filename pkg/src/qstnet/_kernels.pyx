# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectral-sum kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

cdef double GOLDEN = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _fid(const double[::1] w, const double[::1] lam, double t) noexcept nogil:
    cdef Py_ssize_t k
    cdef double re = 0.0, im = 0.0, phase
    for k in range(w.shape[0]):
        phase = lam[k] * t
        re += w[k] * cos(phase)
        im -= w[k] * sin(phase)
    return re * re + im * im


def fidelity_at(weights, eigvals, double t):
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] lam = np.ascontiguousarray(eigvals, dtype=np.float64)
    return _fid(w, lam, t)


def fidelity_grid(weights, eigvals, times):
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] lam = np.ascontiguousarray(eigvals, dtype=np.float64)
    cdef const double[::1] ts = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t m = ts.shape[0], p
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for p in range(m):
            o[p] = _fid(w, lam, ts[p])
    return out


def local_maxima(values):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t m = v.shape[0], k, count = 0
    idx = np.empty(m, dtype=np.intp)
    cdef Py_ssize_t[::1] out = idx
    if m == 1:
        return np.zeros(1, dtype=np.intp)
    with nogil:
        for k in range(m):
            if k > 0 and v[k] < v[k - 1]:
                continue
            if k < m - 1 and v[k] < v[k + 1]:
                continue
            out[count] = k
            count += 1
    return idx[:count].copy()


def golden_max(weights, eigvals, double a, double b, double tol):
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] lam = np.ascontiguousarray(eigvals, dtype=np.float64)
    cdef double c, d, fc, fd
    with nogil:
        c = b - GOLDEN * (b - a)
        d = a + GOLDEN * (b - a)
        fc = _fid(w, lam, c)
        fd = _fid(w, lam, d)
        while b - a > tol:
            if fc >= fd:
                b = d
                d = c
                fd = fc
                c = b - GOLDEN * (b - a)
                fc = _fid(w, lam, c)
            else:
                a = c
                c = d
                fc = fd
                d = a + GOLDEN * (b - a)
                fd = _fid(w, lam, d)
    if fc >= fd:
        return c, fc
    return d, fd
