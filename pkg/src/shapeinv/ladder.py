"""Ground states from the superpotential and excited states by ladder chains.

With A = hbar d/dx + W and Adag = -hbar d/dx + W the partner Hamiltonians
factor as H_minus = Adag A and H_plus = A Adag, the ground state of H_minus
is exp(-(1/hbar) int W), and level n is built by applying the raising
operators of the parameter chain a, a+hbar, ..., a+(n-1)hbar to the ground
state at a+n*hbar.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import (
    SuperpotentialSpec,
    closed_form_energy,
    evaluate_W,
)
from .errors import GridTooCoarse, NonNormalizable
from .grid import Grid, WaveFunction, derivative
from .schrodinger import numeric_energy

_EXP_FLOOR = -745.0  # below this exp() underflows to zero anyway
# a non-normalizable candidate grows monotonically toward the boundary, so
# its boundary value equals its peak; slowly decaying true bound states can
# still carry a few percent there on a finite grid
_DECAY_TOLERANCE = 0.5


def _log_groundstate(spec, grid):
    """Cumulative -(1/hbar) int W dx, per-cell Simpson with analytic
    midpoint samples, shifted so the maximum is zero."""
    x = grid.x
    xm = 0.5 * (x[:-1] + x[1:])
    w = evaluate_W(spec, x)
    wm = evaluate_W(spec, xm)
    cell = grid.h / 6.0 * (w[:-1] + 4.0 * wm + w[1:])
    # two-panel Simpson flags cells where W varies too fast (near a domain
    # endpoint where W diverges); those few cells get adaptive quadrature
    xq1 = 0.75 * x[:-1] + 0.25 * x[1:]
    xq2 = 0.25 * x[:-1] + 0.75 * x[1:]
    wq1 = evaluate_W(spec, xq1)
    wq2 = evaluate_W(spec, xq2)
    half = grid.h / 12.0 * (w[:-1] + 4.0 * wq1 + 2.0 * wm + 4.0 * wq2 + w[1:])
    bad = np.nonzero(np.abs(half - cell) > 1e-13 * (1.0 + np.abs(half)))[0]
    cell = half
    if len(bad):
        from scipy.integrate import quad

        for i in bad:
            val, _ = quad(
                lambda t: evaluate_W(spec, t),
                x[i],
                x[i + 1],
                epsabs=1e-13,
                epsrel=1e-13,
                limit=200,
            )
            cell[i] = val
    phi = np.concatenate(([0.0], np.cumsum(cell))) * (-1.0 / spec.hbar)
    return phi - np.max(phi)


def groundstate(spec: SuperpotentialSpec, grid: Grid) -> WaveFunction:
    """Normalized zero-energy ground state of V_minus."""
    phi = _log_groundstate(spec, grid)
    psi = np.exp(np.maximum(phi, _EXP_FLOOR))
    dom = spec.domain
    peak = np.max(psi)
    for edge, idx in ((dom.x_min, 0), (dom.x_max, -1)):
        if not np.isfinite(edge) and psi[idx] > _DECAY_TOLERANCE * peak:
            raise NonNormalizable(
                f"{spec.name}: ground-state candidate does not decay "
                "at the domain boundary"
            )
    return WaveFunction(grid, psi, 0.0).normalize()


def _checked_derivative(values, h, tol=1e-6):
    d4 = derivative(values, h)
    v = np.asarray(values, dtype=float)
    d2 = np.empty_like(d4)
    d2[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    d2[0], d2[-1] = d4[0], d4[-1]
    scale = max(np.max(np.abs(d4)), 1.0)
    if h * h * np.max(np.abs(d4 - d2)[2:-2]) > tol * scale:
        raise GridTooCoarse("derivative stencils disagree beyond tolerance")
    return d4


# cells to exclude next to a singular finite endpoint: the state behaves
# like u^s there (u = distance to the endpoint) and for s < 2 no polynomial
# difference stencil can differentiate it, so the operator residual in that
# thin layer is a discretization artifact, not a property of the state
_EDGE_TRIM = 48


def _zero_singular_boundary_layer(spec, grid, values):
    k = min(_EDGE_TRIM, grid.n_points // 8)
    if np.isfinite(spec.domain.x_min) and abs(grid.x_min - spec.domain.x_min) <= 5 * grid.h:
        values[:k] = 0.0
    if np.isfinite(spec.domain.x_max) and abs(grid.x_max - spec.domain.x_max) <= 5 * grid.h:
        values[len(values) - k :] = 0.0
    return values


def apply_lowering(spec, wf: WaveFunction) -> np.ndarray:
    """(hbar d/dx + W) applied to the samples; annihilates the ground state.

    The layer of cells adjoining a singular finite endpoint is zeroed: the
    residual there reflects only the failure of difference stencils on the
    u^s edge behavior.
    """
    out = spec.hbar * _checked_derivative(wf.values, wf.grid.h) + evaluate_W(
        spec, wf.grid.x
    ) * wf.values
    return _zero_singular_boundary_layer(spec, wf.grid, out)


def apply_raising(spec, wf: WaveFunction) -> np.ndarray:
    """(-hbar d/dx + W) applied to the samples."""
    return -spec.hbar * _checked_derivative(wf.values, wf.grid.h) + evaluate_W(
        spec, wf.grid.x
    ) * wf.values


@dataclass(frozen=True)
class LadderChainResult:
    n: int
    wavefunction: WaveFunction
    energies_used: list
    parameter_sequence: list


def excited_state_via_ladder(spec, grid, n) -> LadderChainResult:
    """Level-n eigenfunction of V_minus from the raising-operator chain."""
    energy = closed_form_energy(spec, n)
    wf = groundstate(spec.shifted(n), grid)
    energies = []
    for k in range(n - 1, -1, -1):
        step = spec.shifted(k)
        energies.append(closed_form_energy(spec, n) - closed_form_energy(spec, k))
        raised = apply_raising(step, wf)
        wf = WaveFunction(grid, raised, 0.0).normalize()
    wf = WaveFunction(grid, wf.values, energy, normalized=True)
    return LadderChainResult(
        n=n,
        wavefunction=wf,
        energies_used=energies,
        parameter_sequence=[spec.a + k * spec.hbar for k in range(n + 1)],
    )


def isospectrality_check(spec, grid, n_levels):
    """Pairs (E_n of V_plus, E_{n+1} of V_minus) that SUSY forces to agree."""
    pairs = []
    for n in range(n_levels):
        e_plus = numeric_energy(spec, grid, n, which="plus")
        e_minus = numeric_energy(spec, grid, n + 1, which="minus")
        pairs.append((e_plus, e_minus))
    return pairs
