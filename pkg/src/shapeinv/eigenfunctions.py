"""Closed-form eigenfunctions for the hyperbolic Rosen-Morse class.

Writing the momentum function as chi = p~/F - (1/2) F'/F in S = tanh x
turns the quantum Hamilton-Jacobi equation into the Jacobi differential
equation; the bound states are psi_n ∝ (1+S)^{beta/2} (1-S)^{alpha/2}
P_n^{(alpha,beta)}(S), with alpha, beta fixed by the chi pole residues at
S = ±1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import ClassId, SuperpotentialSpec, bound_state_count
from .errors import GridMismatch, NotBound, UnsupportedClass
from .grid import Grid, WaveFunction
from .qhj import solve_energy_qhj


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float
    n: int


@dataclass(frozen=True)
class ChiDecomposition:
    residue_minus: float  # b_minus at S = -1, equals -(beta+1)/2
    residue_plus: float  # b_plus at S = +1, equals -(alpha+1)/2
    polynomial_degree: int
    analytic_part: float  # constant term; vanishes for bound states


def jacobi_poly(n, alpha, beta, S):
    """P_n^{(alpha,beta)}(S) by the standard three-term recurrence."""
    S = np.asarray(S, dtype=float)
    p_prev = np.ones_like(S)
    if n == 0:
        return p_prev
    p = (alpha + 1.0) + (alpha + beta + 2.0) * (S - 1.0) / 2.0
    for k in range(2, n + 1):
        c = 2.0 * k + alpha + beta
        a1 = 2.0 * k * (k + alpha + beta) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 1.0) * c * (c - 2.0)
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c
        p, p_prev = ((a2 + a3 * S) * p - a4 * p_prev) / a1, p
    return p


def chi_params(spec: SuperpotentialSpec, n: int):
    """Jacobi exponents and chi residues for level n of class IIB2."""
    if spec.class_id is not ClassId.IIB2:
        raise UnsupportedClass(
            "closed-form eigenfunctions implemented for the hyperbolic "
            "Rosen-Morse class only"
        )
    if n < 0 or n > bound_state_count(spec):
        raise NotBound(f"{spec.name}: level {n} not bound")
    a_n = spec.a + n * spec.hbar
    alpha = (spec.B / a_n - a_n) / spec.hbar
    beta = (-spec.B / a_n - a_n) / spec.hbar
    params = JacobiParams(alpha=alpha, beta=beta, n=n)
    chi = ChiDecomposition(
        residue_minus=-(beta + 1.0) / 2.0,
        residue_plus=-(alpha + 1.0) / 2.0,
        polynomial_degree=n,
        analytic_part=0.0,
    )
    return params, chi


def closed_form_eigenfunction(spec, n, grid: Grid) -> WaveFunction:
    """Normalized level-n eigenfunction via the Jacobi closed form."""
    params, _ = chi_params(spec, n)
    energy = solve_energy_qhj(spec, n, "closed_form").energy
    S = np.tanh(grid.x)
    # exp/log form keeps the half-integer powers stable; log1p(-|S|) -> -inf
    # at the clamped tails simply underflows to psi = 0
    with np.errstate(divide="ignore"):
        log_env = 0.5 * params.beta * np.log1p(S) + 0.5 * params.alpha * np.log1p(-S)
    psi = np.exp(np.maximum(log_env, -745.0)) * jacobi_poly(
        n, params.alpha, params.beta, S
    )
    return WaveFunction(grid, psi, energy).normalize()


def compare_eigenfunctions(wf1: WaveFunction, wf2: WaveFunction) -> float:
    """Sign-aligned L2 distance of two normalized states on the same grid."""
    if wf1.grid != wf2.grid:
        raise GridMismatch("wavefunctions live on different grids")
    h = wf1.grid.h
    return min(
        float(np.sqrt(np.trapezoid((wf1.values - s * wf2.values) ** 2, dx=h)))
        for s in (1.0, -1.0)
    )
