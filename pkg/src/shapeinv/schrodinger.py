"""Direct numerical solution of -hbar^2 psi'' + V psi = E psi.

Two stages: a finite-difference tridiagonal eigensolve (Sturm-sequence
bisection, second-order accurate) brackets each level, then Numerov shooting
with derivative matching refines it to grid accuracy (fourth order).
"""

from __future__ import annotations

import numpy as np

from ._kernels import numerov, sturm_count, tridiag_solve
from .catalog import SuperpotentialSpec, partner_potentials
from .errors import (
    GridTooSmall,
    MaxIterations,
    NoSignChange,
    SingularPotential,
)
from .grid import Grid, WaveFunction

_SEED = 1e-8
# Near a finite endpoint the potential varies by orders of magnitude per grid
# cell; integration starts this many cells inside, where the relative change
# of V over one step is small, with starting values supplied by a local
# series solution instead of the integrator.
_SKIP_CELLS = 48
_SERIES_TERMS = 20


def potential_on_grid(spec: SuperpotentialSpec, grid: Grid, which: str = "minus"):
    """Sample V_minus or V_plus on the grid; endpoints may be infinite but
    interior nodes must be finite."""
    v_minus, v_plus = partner_potentials(spec, grid.x)
    v = v_minus if which == "minus" else v_plus
    if not np.all(np.isfinite(v[1:-1])):
        raise SingularPotential(
            f"{spec.name}: potential not finite at an interior grid node"
        )
    return v


def fd_eigenvalues(spec, grid, k, which="minus", tol=1e-9):
    """Lowest k eigenvalues of the Dirichlet finite-difference Hamiltonian.

    Bisection on the Sturm eigenvalue count; deterministic and free of
    external linear-algebra dependencies.
    """
    v = potential_on_grid(spec, grid, which)
    h = grid.h
    t = spec.hbar * spec.hbar / (h * h)
    d = np.ascontiguousarray(v[1:-1] + 2.0 * t)
    m = len(d)
    e_sq = np.full(m - 1, t * t)
    lo0 = float(np.min(d)) - 2.0 * t
    hi0 = float(np.max(d)) + 2.0 * t
    out = []
    for j in range(k):
        lo, hi = lo0, hi0
        while hi - lo > tol * max(1.0, abs(lo), abs(hi)) and hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if sturm_count(d, e_sq, mid) >= j + 1:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return out


def fd_eigenvector(spec, grid, energy, which="minus", sweeps=50):
    """Inverse iteration for the eigenvector at an isolated FD eigenvalue."""
    v = potential_on_grid(spec, grid, which)
    h = grid.h
    t = spec.hbar * spec.hbar / (h * h)
    d = v[1:-1] + 2.0 * t - energy
    m = len(d)
    idx = np.arange(m)
    y = 1.0 + 0.3 * np.sin(2.7 * idx + 0.4)  # deterministic asymmetric start
    for _ in range(sweeps):
        y_new = tridiag_solve(d, -t, y)
        y_new = y_new / np.max(np.abs(y_new))
        if np.max(np.abs(np.abs(y_new) - np.abs(y))) < 1e-12:
            y = y_new
            break
        y = y_new
    else:
        raise MaxIterations("inverse iteration did not settle")
    full = np.zeros(grid.n_points)
    full[1:-1] = y
    return WaveFunction(grid, full, energy).normalize()


def _matching_index(v, n, energy=None, lo=3, hi=None):
    # match in the middle of the classically allowed region: both shooting
    # directions then integrate from the forbidden tails into the well, the
    # stable direction.  Falling back to argmin V would sit at a diverging
    # box edge for potentials with an attractive boundary singularity.
    if hi is None:
        hi = n - 4
    if energy is not None:
        allowed = np.nonzero(v[lo:hi] < energy)[0]
        if len(allowed):
            return lo + int(allowed[len(allowed) // 2])
    return min(max(int(np.argmin(v[1:-1])) + 1, lo), hi)


def _edge_seeds(spec, grid, which):
    """Energy-dependent starting values for the two shooting directions.

    At a finite domain endpoint the potential generally diverges like
    C/u^2 + D/u + V0 in the distance u to the endpoint.  The regular
    solution there is the series u^s sum_k c_k u^k with s(s-1) = C/hbar^2
    and c_k = (D c_{k-1} + (V0 - E) c_{k-2}) / (hbar^2 k (2s + k - 1)).
    A hard zero seed at the first grid point -- or even a two-term series
    seed there -- leaves the integrator to take its first steps across a
    region where V changes by orders of magnitude per cell, which shifts
    the computed eigenvalue.  Instead the series supplies the solution on
    the first _SKIP_CELLS cells and integration starts where V is resolved
    by the grid.  Infinite endpoints keep the (0, tiny) seed at the edge:
    the solution there is many decay lengths under the barrier and the
    seed error is damped away.

    Returns (left, right); each is (j0, fn) with fn(E) giving the solution
    samples at grid offsets 0 .. j0+1 counted inward from that edge.
    """
    dom = spec.domain
    x = grid.x
    h = grid.h
    hb2 = spec.hbar * spec.hbar

    def make(edge, x_near):
        u_first = abs(x_near - edge) if np.isfinite(edge) else np.inf
        if u_first > 5.0 * h:
            # edge at infinity, or the grid stops well short of it: the
            # potential is smooth on the grid scale and a tiny hard seed
            # in the forbidden tail is accurate
            hard = np.array([0.0, _SEED])
            return 0, lambda E: hard
        sgn = 1.0 if edge <= x_near else -1.0
        j0 = min(_SKIP_CELLS, max(2, (grid.n_points - 9) // 3))

        def sample(u):
            vm, vp = partner_potentials(spec, edge + sgn * u)
            return vm if which == "minus" else vp

        # singular coefficients from a tiny-u fit of u^2 V = C + D u + O(u^2)
        us_fit = np.array([1e-5, 2e-5, 3e-5])
        c_coef, d_coef, _ = np.polynomial.polynomial.polyfit(
            us_fit, us_fit * us_fit * sample(us_fit), 2
        )
        u_max = u_first + (j0 + 1) * h
        # regular remainder of V fitted over the whole series range
        uu = np.linspace(u_max / 40.0, u_max, 40)
        v_reg = np.polynomial.polynomial.polyfit(
            uu, sample(uu) - c_coef / (uu * uu) - d_coef / uu, 6
        )
        disc = 1.0 + 4.0 * c_coef / hb2
        if abs(disc) < 1e-7 * max(1.0, abs(4.0 * c_coef / hb2)):
            disc = 0.0  # limit-circle critical case: double indicial root
        s = 0.5 * (1.0 + np.sqrt(max(disc, 0.0)))
        us = u_first + h * np.arange(j0 + 2)

        def seeds(E):
            coefs = np.zeros(_SERIES_TERMS)
            coefs[0] = 1.0
            for k in range(1, _SERIES_TERMS):
                acc = d_coef * coefs[k - 1]
                for j in range(min(len(v_reg), k - 1)):
                    term = v_reg[j] - (E if j == 0 else 0.0)
                    acc += term * coefs[k - 2 - j]
                coefs[k] = acc / (hb2 * k * (2.0 * s + k - 1.0))
            ys = us**s * np.polynomial.polynomial.polyval(us, coefs)
            return ys * (_SEED / max(float(np.max(np.abs(ys))), 1e-300))

        return j0, seeds

    return make(dom.x_min, x[0]), make(dom.x_max, x[-1])


def _mismatch(f, h, m, left_seed, right_seed):
    """Scaled Wronskian of the left/right solutions at the match point.

    Vanishes exactly at an eigenvalue and is bounded elsewhere; unlike a
    log-derivative difference it has no poles when a node of either solution
    crosses the match point.  left_seed/right_seed are (j0, ys) pairs:
    solution samples at offsets 0 .. j0+1 from the respective edge, with
    integration starting at offset j0.
    """
    n = len(f)
    j0l, yls = left_seed
    j0r, yrs = right_seed
    # left solution: yl[k] samples x_{j0l + k}; the match point x_m is yl[il]
    yl = numerov(np.ascontiguousarray(f[j0l : m + 2]), h, yls[-2], yls[-1])
    il = m - j0l
    # right solution integrated inward: yr[k] samples x_{n-1-j0r-k}
    yr = numerov(np.ascontiguousarray(f[::-1][j0r : n - m + 1]), h, yrs[-2], yrs[-1])
    ir = n - 1 - m - j0r
    dl = (yl[il + 1] - yl[il - 1]) / (2.0 * h)
    dr = (yr[ir - 1] - yr[ir + 1]) / (2.0 * h)
    norm = np.hypot(yl[il], h * dl) * np.hypot(yr[ir], h * dr)
    if norm == 0.0 or not np.isfinite(norm):
        return np.inf
    return (dl * yr[ir] - dr * yl[il]) * h / norm


def numerov_refine(spec, grid, bracket, which="minus", tol=1e-12, max_iter=200):
    """Refine an energy bracket to a Numerov eigenvalue by bisection on the
    matching-derivative mismatch."""
    v = potential_on_grid(spec, grid, which)
    h = grid.h
    hb2 = spec.hbar * spec.hbar
    n = grid.n_points
    (j0l, left_fn), (j0r, right_fn) = _edge_seeds(spec, grid, which)
    m = _matching_index(
        v, n, 0.5 * (bracket[0] + bracket[1]), lo=j0l + 3, hi=n - 4 - j0r
    )

    def mis(E):
        return _mismatch((v - E) / hb2, h, m, (j0l, left_fn(E)), (j0r, right_fn(E)))

    def bisect(lo, hi, f_lo, f_hi):
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            if hi - lo <= tol * max(1.0, abs(mid)):
                return mid
            f_mid = mis(mid)
            if f_mid == 0.0:
                return mid
            if f_lo * f_mid <= 0.0:
                hi, f_hi = mid, f_mid
            else:
                lo, f_lo = mid, f_mid
        raise MaxIterations("energy bisection did not converge")

    def try_interval(lo, hi, f_lo, f_hi):
        # the mismatch also flips sign at its poles (solution node crossing
        # the match point); accept only a crossing where it actually vanishes
        e = bisect(lo, hi, f_lo, f_hi)
        if abs(mis(e)) <= 1e-3 * (1.0 + abs(f_lo) + abs(f_hi)):
            return e
        return None

    lo, hi = bracket
    center = 0.5 * (lo + hi)
    # bound states lie strictly below any plateau the potential approaches
    # at an infinite domain end; capping the search there excludes the
    # spurious box-quantized continuum levels the truncated grid supports
    cap = np.inf
    if not np.isfinite(spec.domain.x_min):
        cap = min(cap, float(v[0]))
    if not np.isfinite(spec.domain.x_max):
        cap = min(cap, float(v[-1]))
    f_lo, f_hi = mis(lo), mis(hi)
    if np.isfinite(f_lo) and np.isfinite(f_hi) and f_lo * f_hi <= 0.0:
        e = try_interval(lo, hi, f_lo, f_hi)
        if e is not None:
            return e
    for _ in range(14):
        # scan for sign-change subintervals, nearest the initial estimate
        # first: the estimate may carry a sizable discretization bias but
        # still lies far closer to its own level than to a neighboring one
        hi = min(hi, cap)
        if hi <= lo:
            lo = hi - 1.0
        es = np.linspace(lo, hi, 33)
        fs = np.array([mis(e) for e in es])
        ok = np.isfinite(fs[:-1]) & np.isfinite(fs[1:]) & (fs[:-1] * fs[1:] <= 0.0)
        order = sorted(
            np.nonzero(ok)[0], key=lambda i: abs(0.5 * (es[i] + es[i + 1]) - center)
        )
        for i in order:
            e = try_interval(es[i], es[i + 1], fs[i], fs[i + 1])
            if e is not None:
                return e
        span = hi - lo
        lo, hi = lo - span, hi + span
    raise NoSignChange(
        f"{spec.name}: no matching-condition root in [{lo:.6g}, {hi:.6g}]"
    )


def numerov_wavefunction(spec, grid, energy, which="minus") -> WaveFunction:
    """Two-sided Numerov solution at a converged energy, glued at the match
    point and normalized."""
    v = potential_on_grid(spec, grid, which)
    h = grid.h
    f = (v - energy) / (spec.hbar * spec.hbar)
    n = grid.n_points
    (j0l, left_fn), (j0r, right_fn) = _edge_seeds(spec, grid, which)
    m0 = _matching_index(v, n, energy, lo=j0l + 3, hi=n - 4 - j0r)
    yls, yrs = left_fn(energy), right_fn(energy)
    # glue where the solution is healthy: a node of psi may sit exactly at
    # the potential minimum (odd states of symmetric wells), so search a
    # window around it for the largest left-solution amplitude
    window = 20
    lo_m = max(j0l + 3, m0 - window)
    hi_m = min(n - 4 - j0r, m0 + window)
    yl_full = np.empty(hi_m + 2)
    yl_full[: j0l + 2] = yls
    yl_full[j0l:] = numerov(
        np.ascontiguousarray(f[j0l : hi_m + 2]), h, yls[-2], yls[-1]
    )
    m = lo_m + int(np.argmax(np.abs(yl_full[lo_m : hi_m + 1])))
    # right solution ascending over x_{m-1} .. x_{n-1}, series tail included
    yr_run = numerov(
        np.ascontiguousarray(f[::-1][j0r : n - m + 1]), h, yrs[-2], yrs[-1]
    )
    right = np.empty(n - m + 1)
    right[: n - m - j0r + 1] = yr_run[::-1]
    if j0r:
        right[-j0r:] = yrs[:j0r][::-1]
    psi = np.empty(n)
    psi[: m + 1] = yl_full[: m + 1] / yl_full[m]
    psi[m:] = right[1:] / right[1]
    return WaveFunction(grid, psi, energy).normalize()


def numeric_energy(spec, grid, n, which="minus", check_domain=False):
    """Numeric eigenvalue of level n: FD bracket plus Numerov refinement."""
    fd = fd_eigenvalues(spec, grid, n + 1, which)
    e0 = fd[n]
    pad = max(20.0 * grid.h * grid.h * max(1.0, abs(e0)), 1e-7)
    if n > 0:
        pad = min(pad, 0.4 * (e0 - fd[n - 1]))
    energy = numerov_refine(spec, grid, (e0 - pad, e0 + pad), which)
    if check_domain:
        wide = grid.widened(0.2)
        fd_w = fd_eigenvalues(spec, wide, n + 1, which)
        e_w = numerov_refine(
            spec, wide, (fd_w[n] - pad, fd_w[n] + pad), which
        )
        if abs(e_w - energy) > 1e-7 * max(1.0, abs(energy)):
            raise GridTooSmall(
                f"{spec.name}: level {n} moves by {abs(e_w - energy):.3g} "
                "when the domain is widened 20%"
            )
    return energy
