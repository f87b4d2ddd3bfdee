"""Acceptance suite: every shipped guarantee at its stated tolerance.

Each test covers one numbered criterion and prints a single summary line
(run with `pytest -s` to see them on success).
"""

import math
import time

import numpy as np
import pytest

from shapeinv.catalog import ClassId, bound_state_count, closed_form_energy, make_spec
from shapeinv.eigenfunctions import closed_form_eigenfunction, compare_eigenfunctions
from shapeinv.grid import second_derivative
from shapeinv.invariance import pde1_residual, si_residual
from shapeinv.ladder import (
    apply_lowering,
    excited_state_via_ladder,
    groundstate,
    isospectrality_check,
)
from shapeinv.presets import ALT_PARAMS, PRESETS, preset_grid, preset_spec
from shapeinv.qhj import branch_rule_error, fixed_pole_set, solve_energy_qhj
from shapeinv.qmf import audit
from shapeinv.schrodinger import numeric_energy, numerov_wavefunction, potential_on_grid

ALL_CLASSES = [c.value for c in ClassId]


def _report(criterion, ok, detail):
    line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def _spectrum_errors(hbar):
    """Worst relative route disagreements over all presets, n <= min(5, count)."""
    worst_qhj = worst_num = 0.0
    for cid in ClassId:
        spec = preset_spec(cid, hbar=hbar)
        grid = preset_grid(cid, hbar=hbar)
        top = int(min(5, bound_state_count(spec)))
        for n in range(top + 1):
            e_closed = closed_form_energy(spec, n)
            e_qhj = solve_energy_qhj(spec, n, "closed_form").energy
            e_num = numeric_energy(spec, grid, n)
            scale = max(1.0, abs(e_closed))
            worst_qhj = max(worst_qhj, abs(e_qhj - e_closed) / scale)
            worst_num = max(worst_num, abs(e_num - e_closed) / scale)
    return worst_qhj, worst_num


def test_criterion_1_triple_route_spectrum_agreement():
    t0 = time.time()
    worst_qhj, worst_num = _spectrum_errors(hbar=1.0)
    elapsed = time.time() - t0
    ok = worst_qhj <= 1e-12 and worst_num <= 1e-6 and elapsed < 60.0
    _report(
        1, ok,
        f"max |E_qhj-E_closed|={worst_qhj:.2e} (tol 1e-12), "
        f"max |E_num-E_closed|={worst_num:.2e} (tol 1e-6), {elapsed:.1f}s",
    )


def test_criterion_2_shape_invariance_residuals():
    worst = 0.0
    for cid in ClassId:
        g = PRESETS[cid].grid
        x = np.linspace(g.x_min, g.x_max, 2001)
        for params in (PRESETS[cid].params, ALT_PARAMS[cid]):
            spec = make_spec(cid, **params)
            worst = max(worst, si_residual(spec, x), pde1_residual(spec, x))
    _report(2, worst <= 1e-10, f"max residual={worst:.2e} over 20 parameter sets (tol 1e-10)")


def _susy_errors(hbar):
    worst_ann = worst_e0 = 0.0
    for cid in ClassId:
        spec = preset_spec(cid, hbar=hbar)
        grid = preset_grid(cid, hbar=hbar)
        psi0 = groundstate(spec, grid)
        resid = apply_lowering(spec, psi0)
        worst_ann = max(worst_ann, float(np.sqrt(np.trapezoid(resid**2, dx=grid.h))))
        worst_e0 = max(worst_e0, abs(numeric_energy(spec, grid, 0)))
    return worst_ann, worst_e0


def test_criterion_3_unbroken_susy():
    worst_ann, worst_e0 = _susy_errors(hbar=1.0)
    ok = worst_ann <= 1e-6 and worst_e0 <= 1e-6
    _report(3, ok, f"max |A psi0|={worst_ann:.2e}, max |E0|={worst_e0:.2e} (tol 1e-6)")


def test_criterion_4_isospectrality():
    # one class from each of the three catalog families
    worst = 0.0
    for cid in ("IA", "IB", "IIA", "IIIA"):
        spec = preset_spec(cid)
        levels = int(min(2, bound_state_count(spec)))
        for e_plus, e_minus_next in isospectrality_check(spec, preset_grid(cid), levels):
            worst = max(worst, abs(e_plus - e_minus_next))
    _report(4, worst <= 1e-6, f"max |E_n^+ - E_n+1^-|={worst:.2e} on IA,IB,IIA,IIIA (tol 1e-6)")


def _audit_errors(hbar):
    worst_res = worst_tail = 0.0
    nodes_ok = True
    for cid in ClassId:
        spec = preset_spec(cid, hbar=hbar)
        grid = preset_grid(cid, hbar=hbar)
        top = int(min(3, bound_state_count(spec)))
        for n in range(top + 1):
            rep = audit(spec, n, grid)
            nodes_ok &= len(rep.node_locations) == n
            worst_res = max(worst_res, rep.max_residue_error / hbar)
            worst_tail = max(worst_tail, rep.qmf_vs_W_tail_error)
    return nodes_ok, worst_res, worst_tail


def test_criterion_5_qmf_pole_audit():
    nodes_ok, worst_res, worst_tail = _audit_errors(hbar=1.0)
    ok = nodes_ok and worst_res <= 0.05 and worst_tail <= 1e-4
    _report(
        5, ok,
        f"node counts exact={nodes_ok}, max residue err={worst_res:.1%} of hbar "
        f"(tol 5%), max ground |p-W|={worst_tail:.2e} (tol 1e-4)",
    )


def test_criterion_6_branch_rule():
    worst = 0.0
    n_poles = 0
    for cid in ClassId:
        worst = max(worst, branch_rule_error(preset_spec(cid)))
        n_poles += len(fixed_pole_set(cid))
    _report(6, worst <= 1e-8, f"max Laurent mismatch={worst:.2e} over {n_poles} poles (tol 1e-8)")


def test_criterion_7_eigenfunction_triple_agreement():
    spec = make_spec("IIB2", a=-4.0, B=-4.0)
    grid = preset_grid("IIB2")
    worst_l2 = worst_res = 0.0
    nodes_ok = True
    for n in (0, 1):
        closed = closed_form_eigenfunction(spec, n, grid)
        ladder = (
            groundstate(spec, grid)
            if n == 0
            else excited_state_via_ladder(spec, grid, n).wavefunction
        )
        numeric = numerov_wavefunction(spec, grid, numeric_energy(spec, grid, n))
        worst_l2 = max(
            worst_l2,
            compare_eigenfunctions(closed, ladder),
            compare_eigenfunctions(closed, numeric),
            compare_eigenfunctions(ladder, numeric),
        )
        nodes_ok &= closed.node_count == n
        v = potential_on_grid(spec, grid)
        resid = (
            -spec.hbar**2 * second_derivative(closed.values, grid.h)
            + (v - closed.energy) * closed.values
        )
        inner = slice(10, -10)
        norm = float(np.sqrt(np.trapezoid(closed.values[inner] ** 2, dx=grid.h)))
        worst_res = max(
            worst_res, float(np.sqrt(np.trapezoid(resid[inner] ** 2, dx=grid.h))) / norm
        )
    ok = worst_l2 <= 1e-4 and nodes_ok and worst_res <= 1e-4
    _report(
        7, ok,
        f"max pairwise L2={worst_l2:.2e}, nodes exact={nodes_ok}, "
        f"max Schrodinger residual={worst_res:.2e} (tol 1e-4)",
    )


def test_criterion_8_hbar_scaling():
    details = []
    ok = True
    for hbar in (0.5, 2.0):
        worst_qhj, worst_num = _spectrum_errors(hbar)
        worst_ann, worst_e0 = _susy_errors(hbar)
        nodes_ok, worst_res, worst_tail = _audit_errors(hbar)
        ok &= (
            worst_qhj <= 1e-12
            and worst_num <= 1e-6
            and worst_ann <= 1e-6
            and worst_e0 <= 1e-6
            and nodes_ok
            and worst_res <= 0.05
            and worst_tail <= 1e-4
        )
        details.append(
            f"hbar={hbar}: spectra ({worst_qhj:.1e}, {worst_num:.1e}), "
            f"susy ({worst_ann:.1e}, {worst_e0:.1e}), "
            f"audit (nodes={nodes_ok}, res={worst_res:.1%}, tail={worst_tail:.1e})"
        )
    # exact-substitution check of the energy formulas at shifted hbar
    for hbar in (0.5, 2.0):
        spec = make_spec("IB", a=-3.0, hbar=hbar)
        for n in range(int(bound_state_count(spec)) + 1):
            expected = 9.0 - (-3.0 + n * hbar) ** 2
            ok &= closed_form_energy(spec, n) == pytest.approx(expected, rel=1e-14)
        spec = make_spec("IA", omega=2.0, hbar=hbar)
        ok &= closed_form_energy(spec, 4) == pytest.approx(8.0 * hbar, rel=1e-14)
    _report(8, ok, "; ".join(details))
