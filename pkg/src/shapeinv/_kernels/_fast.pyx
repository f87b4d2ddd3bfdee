# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as the pure-Python _slow module."""

import numpy as np

cimport cython
from libc.math cimport fabs

IMPLEMENTATION = "compiled"

cdef double _TINY = 1e-300
cdef double _RENORM = 1e200


def sturm_count(double[::1] d, double[::1] e_sq, double x):
    """Number of eigenvalues of the symmetric tridiagonal matrix below x.

    d: diagonal (n,); e_sq: squared off-diagonals (n-1,).
    """
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i
    cdef int count = 0
    cdef double q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _TINY
        q = d[i] - x - e_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_solve(d, double e, b):
    """Solve (tridiagonal with constant symmetric off-diagonal e) x = b.

    Gaussian elimination with partial pivoting (bandwidth grows to 2).
    """
    cdef Py_ssize_t n = len(d)
    c0_arr = np.array(d, dtype=np.float64)
    c1_arr = np.full(n, e, dtype=np.float64)
    c2_arr = np.zeros(n, dtype=np.float64)
    x_arr = np.array(b, dtype=np.float64)
    cdef double[::1] c0 = c0_arr
    cdef double[::1] c1 = c1_arr
    cdef double[::1] c2 = c2_arr
    cdef double[::1] x = x_arr
    cdef double low, m, tmp
    cdef Py_ssize_t i
    c1[n - 1] = 0.0
    for i in range(n - 1):
        low = e
        if fabs(low) > fabs(c0[i]):
            tmp = c0[i]; c0[i] = low; low = tmp
            tmp = c1[i]; c1[i] = c0[i + 1]; c0[i + 1] = tmp
            if i + 2 < n:
                tmp = c2[i]; c2[i] = c1[i + 1]; c1[i + 1] = tmp
            tmp = x[i]; x[i] = x[i + 1]; x[i + 1] = tmp
        if c0[i] == 0.0:
            c0[i] = _TINY
        m = low / c0[i]
        c0[i + 1] -= m * c1[i]
        if i + 2 < n:
            c1[i + 1] -= m * c2[i]
        x[i + 1] -= m * x[i]
    if c0[n - 1] == 0.0:
        c0[n - 1] = _TINY
    x[n - 1] /= c0[n - 1]
    if n >= 2:
        x[n - 2] = (x[n - 2] - c1[n - 2] * x[n - 1]) / c0[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - c1[i] * x[i + 1] - c2[i] * x[i + 2]) / c0[i]
    return x_arr


def numerov(double[::1] f, double h, double y0, double y1):
    """Integrate y'' = f(x) y with the Numerov recurrence, left to right.

    The running solution is rescaled when it exceeds 1e200 (log-derivatives
    are unaffected); integrate right-to-left by passing f reversed.
    """
    cdef Py_ssize_t n = f.shape[0]
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef double c = h * h / 12.0
    cdef double scale
    cdef Py_ssize_t i, j
    y[0] = y0
    y[1] = y1
    for i in range(1, n - 1):
        y[i + 1] = (
            2.0 * y[i] * (1.0 + 5.0 * c * f[i]) - y[i - 1] * (1.0 - c * f[i - 1])
        ) / (1.0 - c * f[i + 1])
        if fabs(y[i + 1]) > _RENORM:
            scale = 1.0 / fabs(y[i + 1])
            for j in range(i + 2):
                y[j] *= scale
    return y_arr
