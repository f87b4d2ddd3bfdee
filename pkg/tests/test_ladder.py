"""Ground states, ladder operators, and isospectrality of partner Hamiltonians."""

import dataclasses

import numpy as np
import pytest

from shapeinv.catalog import ClassId, bound_state_count, closed_form_energy
from shapeinv.errors import GridTooCoarse, NonNormalizable
from shapeinv.grid import Grid
from shapeinv.ladder import (
    apply_lowering,
    apply_raising,
    excited_state_via_ladder,
    groundstate,
    isospectrality_check,
)
from shapeinv.presets import preset_grid, preset_spec
from shapeinv.schrodinger import numeric_energy, numerov_wavefunction


def _l2(values, h):
    return float(np.sqrt(np.trapezoid(values**2, dx=h)))


@pytest.mark.parametrize("cid", [c.value for c in ClassId])
def test_groundstate_annihilated(cid):
    spec = preset_spec(cid)
    g = preset_grid(cid)
    wf = groundstate(spec, g)
    assert wf.energy == 0.0
    assert wf.node_count == 0
    assert wf.normalized
    assert _l2(apply_lowering(spec, wf), g.h) <= 1e-6


def test_oscillator_groundstate_is_gaussian():
    spec = preset_spec("IA")  # omega=2, hbar=1
    g = preset_grid("IA")
    wf = groundstate(spec, g)
    exact = np.exp(-g.x**2 / 2.0) / np.pi**0.25
    assert np.max(np.abs(wf.values - exact)) < 1e-6


def test_raising_then_lowering_recovers_state():
    spec = preset_spec("IA")
    g = preset_grid("IA")
    wf = groundstate(spec, g)
    up = apply_raising(spec, wf)
    down = apply_lowering(spec, dataclasses.replace(wf, values=up))
    # A- A+ psi0 = (E_1 of the shifted problem) psi0 up to discretization
    ratio = down[g.n_points // 4] / wf.values[g.n_points // 4]
    assert ratio == pytest.approx(2.0, rel=1e-6)


@pytest.mark.parametrize("cid,n", [("IA", 2), ("IB", 2), ("IIA", 1), ("IIB2", 1)])
def test_ladder_matches_numerov(cid, n):
    spec = preset_spec(cid)
    g = preset_grid(cid)
    chain = excited_state_via_ladder(spec, g, n)
    assert chain.n == n
    assert len(chain.parameter_sequence) == n + 1
    assert chain.wavefunction.node_count == n
    assert chain.wavefunction.energy == pytest.approx(
        closed_form_energy(spec, n), rel=1e-12, abs=1e-12
    )
    ref = numerov_wavefunction(spec, g, numeric_energy(spec, g, n))
    sign = np.sign(np.dot(chain.wavefunction.values, ref.values))
    assert _l2(chain.wavefunction.values - sign * ref.values, g.h) <= 1e-6


def test_ladder_energies_used():
    spec = preset_spec("IA")
    chain = excited_state_via_ladder(spec, preset_grid("IA"), 3)
    assert chain.energies_used == pytest.approx([2.0, 4.0, 6.0], abs=1e-12)


@pytest.mark.parametrize("cid,levels", [("IA", 2), ("IB", 1), ("IIA", 2), ("IIIA", 2)])
def test_isospectrality(cid, levels):
    spec = preset_spec(cid)
    pairs = isospectrality_check(spec, preset_grid(cid), levels)
    assert len(pairs) == levels
    for e_plus, e_minus_next in pairs:
        assert abs(e_plus - e_minus_next) <= 1e-6


def test_non_normalizable_groundstate_rejected():
    # sign-flipped Morse parameter: exp(-phi/hbar) grows at +infinity
    bad = dataclasses.replace(preset_spec("IB"), a=3.0)
    with pytest.raises(NonNormalizable):
        groundstate(bad, preset_grid("IB"))


def test_coarse_grid_rejected_for_derivative():
    spec = preset_spec("IA")
    wf = groundstate(spec, Grid(-10.0, 10.0, 41))
    with pytest.raises(GridTooCoarse):
        apply_lowering(spec, wf)
