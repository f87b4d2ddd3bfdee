"""Pure-Python kernels; same contracts as the compiled _fast module."""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "python"

_TINY = 1e-300
_RENORM = 1e200


def sturm_count(d, e_sq, x):
    """Number of eigenvalues of the symmetric tridiagonal matrix below x.

    d: diagonal (n,); e_sq: squared off-diagonals (n-1,).
    """
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    n = len(d)
    for i in range(1, n):
        if q == 0.0:
            q = _TINY
        q = d[i] - x - e_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_solve(d, e, b):
    """Solve (tridiagonal with constant symmetric off-diagonal e) x = b.

    Gaussian elimination with partial pivoting (bandwidth grows to 2).
    d is the diagonal (n,), e the scalar off-diagonal, b the rhs (n,).
    """
    n = len(d)
    c0 = np.array(d, dtype=float)  # main diagonal
    c1 = np.full(n, e, dtype=float)  # superdiagonal
    c1[n - 1] = 0.0
    c2 = np.zeros(n)  # second superdiagonal (fill-in under pivoting)
    x = np.array(b, dtype=float)
    low = np.full(n - 1, e, dtype=float)  # subdiagonal
    for i in range(n - 1):
        if abs(low[i]) > abs(c0[i]):
            # swap rows i and i+1
            c0[i], low[i] = low[i], c0[i]
            c1[i], c0[i + 1] = c0[i + 1], c1[i]
            if i + 2 < n:
                c2[i], c1[i + 1] = c1[i + 1], c2[i]
            x[i], x[i + 1] = x[i + 1], x[i]
        if c0[i] == 0.0:
            c0[i] = _TINY
        m = low[i] / c0[i]
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
    return x


def numerov(f, h, y0, y1):
    """Integrate y'' = f(x) y with the Numerov recurrence, left to right.

    f is sampled on the uniform grid; y0, y1 seed the first two points.
    The running solution is rescaled when it exceeds 1e200 (log-derivatives
    are unaffected); integrate right-to-left by passing f reversed.
    """
    n = len(f)
    y = np.empty(n)
    y[0], y[1] = y0, y1
    c = h * h / 12.0
    for i in range(1, n - 1):
        y[i + 1] = (
            2.0 * y[i] * (1.0 + 5.0 * c * f[i]) - y[i - 1] * (1.0 - c * f[i - 1])
        ) / (1.0 - c * f[i + 1])
        if abs(y[i + 1]) > _RENORM:
            scale = 1.0 / abs(y[i + 1])
            y[: i + 2] *= scale
    return y
