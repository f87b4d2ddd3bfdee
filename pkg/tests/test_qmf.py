"""Audit of the quantum momentum function: moving poles, residues, W limit."""

import numpy as np
import pytest

from shapeinv.catalog import ClassId, bound_state_count, make_spec
from shapeinv.errors import NodesTooClose, NotBound
from shapeinv.grid import Grid, WaveFunction
from shapeinv.presets import preset_grid, preset_spec
from shapeinv.qmf import audit, compute_qmf, detect_nodes, estimate_residue


def test_detect_nodes_sine():
    g = Grid(0.05, np.pi - 0.05, 4001)
    wf = WaveFunction(g, np.sin(3.0 * g.x), energy=0.0)
    nodes = detect_nodes(wf)
    assert len(nodes) == 2
    assert nodes[0] == pytest.approx(np.pi / 3.0, abs=1e-6)
    assert nodes[1] == pytest.approx(2.0 * np.pi / 3.0, abs=1e-6)


def test_estimate_residue_synthetic():
    # psi = (x - 0.3) exp(-x^2): p = -hbar psi'/psi has residue -hbar at 0.3
    g = Grid(-6.0, 6.0, 4001)
    wf = WaveFunction(g, (g.x - 0.3) * np.exp(-(g.x**2)), energy=0.0)
    for hbar in (1.0, 0.5, 2.0):
        r = estimate_residue(wf, 0.3, hbar)
        assert r == pytest.approx(-hbar, rel=1e-5)


def test_compute_qmf_masks_nodes_and_edges():
    g = Grid(-8.0, 8.0, 2001)
    wf = WaveFunction(g, g.x * np.exp(-(g.x**2) / 2.0), energy=0.0)
    p = compute_qmf(wf, preset_spec("IA"))
    assert p.mask[:5].all() and p.mask[-5:].all()
    mid = g.n_points // 2  # the node at x = 0
    assert p.mask[mid - 3 : mid + 4].all()
    # far from nodes and tails, p tracks W + correction; it is at least finite
    assert np.isfinite(p.compressed()).all()


def test_nodes_too_close_raises():
    g = Grid(0.0, 1.0, 101)  # 25 cells between sin(4 pi x) nodes > 10: use denser sine
    wf = WaveFunction(g, np.sin(40.0 * np.pi * g.x + 0.2), energy=0.0)
    with pytest.raises(NodesTooClose):
        compute_qmf(wf, preset_spec("IA"))


@pytest.mark.parametrize("cid", ["IA", "IB", "IIA", "IIB2", "IIIA"])
def test_audit_counts_and_residues(cid):
    spec = preset_spec(cid)
    g = preset_grid(cid)
    top = int(min(3, bound_state_count(spec)))
    for n in range(top + 1):
        rep = audit(spec, n, g)
        assert rep.n == n
        assert len(rep.node_locations) == n
        assert len(rep.residue_estimates) == n
        assert rep.max_residue_error <= 0.05 * spec.hbar
        assert rep.qmf_vs_W_tail_error <= 1e-4


def test_audit_residues_scale_with_hbar():
    spec = make_spec("IA", omega=2.0, hbar=2.0)
    rep = audit(spec, 2, Grid(-12.0, 12.0, 8001))
    assert len(rep.residue_estimates) == 2
    for r in rep.residue_estimates:
        assert r == pytest.approx(-2.0, rel=0.05)


def test_audit_rejects_unbound_level():
    with pytest.raises(NotBound):
        audit(preset_spec("IB"), 3, preset_grid("IB"))


def test_residue_error_shrinks_under_refinement():
    spec = preset_spec("IA")
    errs = []
    for n_points in (1001, 2001, 4001):
        rep = audit(spec, 1, Grid(-10.0, 10.0, n_points))
        errs.append(rep.max_residue_error)
    assert errs[2] < errs[0]
