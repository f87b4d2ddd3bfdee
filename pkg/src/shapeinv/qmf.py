"""Pole audit of the quantum momentum function p = -hbar psi'/psi.

A level-n eigenfunction gives p exactly n simple poles on the physical
domain (at the wavefunction nodes), each of residue -hbar, and the
ground-state p collapses to the superpotential W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import SuperpotentialSpec, bound_state_count, evaluate_W, partner_potentials
from .errors import NodesTooClose, NotBound
from .grid import WaveFunction, derivative
from .ladder import groundstate
from .schrodinger import numeric_energy, numerov_wavefunction

_MASK_CELLS = 3
_MIN_NODE_SEPARATION = 10
_SUPPORT_THRESHOLD = 1e-4  # relative |psi| below which p is unreliable
_EDGE_CELLS = 48  # widest boundary layer a u^s edge can pollute


@dataclass(frozen=True)
class PoleAudit:
    n: int
    node_locations: list
    residue_estimates: list
    max_residue_error: float
    qmf_vs_W_tail_error: float


def detect_nodes(wf: WaveFunction):
    """Interior sign-change locations of psi, refined by linear interpolation."""
    v = wf.values
    x = wf.grid.x
    peak = np.max(np.abs(v))
    live = np.abs(v) > 1e-8 * peak
    idx = np.nonzero(live)[0]
    nodes = []
    for j in range(len(idx) - 1):
        i, k = idx[j], idx[j + 1]
        if np.signbit(v[i]) != np.signbit(v[k]):
            # interpolate between the bracketing live samples
            nodes.append(x[i] - v[i] * (x[k] - x[i]) / (v[k] - v[i]))
    return nodes


def _node_indices(wf, nodes):
    return [int(round((nx - wf.grid.x_min) / wf.grid.h)) for nx in nodes]


def _check_isolation(wf, nodes):
    ids = _node_indices(wf, nodes)
    bounds = [0] + ids + [wf.grid.n_points - 1]
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a < _MIN_NODE_SEPARATION:
            raise NodesTooClose(
                f"nodes {a} and {b} closer than {_MIN_NODE_SEPARATION} cells"
            )


def compute_qmf(wf: WaveFunction, spec: SuperpotentialSpec):
    """Masked samples of p = -hbar psi'/psi.

    Masks points within 3 cells of a node, near the grid edges, and where
    |psi| is below the support threshold.
    """
    nodes = detect_nodes(wf)
    _check_isolation(wf, nodes)
    v = wf.values
    h = wf.grid.h
    p = -spec.hbar * derivative(v, h) / np.where(v == 0.0, np.nan, v)
    mask = np.zeros(len(v), dtype=bool)
    edge = min(_EDGE_CELLS, max(5, len(v) // 16))
    mask[:edge] = mask[-edge:] = True
    mask |= np.abs(v) < _SUPPORT_THRESHOLD * np.max(np.abs(v))
    for i in _node_indices(wf, nodes):
        mask[max(0, i - _MASK_CELLS) : i + _MASK_CELLS + 1] = True
    mask |= ~np.isfinite(p)
    return np.ma.MaskedArray(p, mask=mask)


def estimate_residue(wf: WaveFunction, node_x: float, hbar: float = 1.0):
    """Residue of p at a node from samples of (x - node_x) * p(x).

    Samples at offsets of +/-{2,4,8} cells and removes the regular part by a
    least-squares cubic fit in the offset; the intercept is the residue.
    """
    g = wf.grid
    i0 = int(round((node_x - g.x_min) / g.h))
    offsets = [-8, -4, -2, 2, 4, 8]
    if i0 - 10 < 2 or i0 + 10 > g.n_points - 3:
        raise NodesTooClose("node too close to the grid boundary")
    v = wf.values
    d = derivative(v, g.h)
    us, rs = [], []
    for k in offsets:
        i = i0 + k
        if v[i] == 0.0:
            continue
        u = g.x[i] - node_x
        us.append(u)
        rs.append(u * (-hbar * d[i] / v[i]))
    coef = np.polynomial.polynomial.polyfit(np.array(us), np.array(rs), 3)
    return float(coef[0])


def _tail_error(spec, wf0):
    """sup |p - W| for the ground state, outside the turning points."""
    p = compute_qmf(wf0, spec)
    w = evaluate_W(spec, wf0.grid.x)
    v_minus, _ = partner_potentials(spec, wf0.grid.x)
    outside = v_minus > 0.0  # classically forbidden at E_0 = 0
    err = np.abs(p - w)
    err.mask = err.mask | ~outside
    if err.count() == 0:
        return 0.0
    return float(err.max())


def audit(spec: SuperpotentialSpec, n: int, grid) -> PoleAudit:
    """Moving-pole audit of level n on the given grid."""
    if n > bound_state_count(spec):
        raise NotBound(f"{spec.name}: level {n} not bound")
    if n == 0:
        wf = groundstate(spec, grid)
    else:
        wf = numerov_wavefunction(spec, grid, numeric_energy(spec, grid, n))
    nodes = detect_nodes(wf)
    _check_isolation(wf, nodes)
    residues = [estimate_residue(wf, nx, spec.hbar) for nx in nodes]
    max_err = max((abs(r + spec.hbar) for r in residues), default=0.0)
    return PoleAudit(
        n=n,
        node_locations=nodes,
        residue_estimates=residues,
        max_residue_error=max_err,
        qmf_vs_W_tail_error=_tail_error(spec, groundstate(spec, grid)),
    )
