"""Residue algebra of the quantum momentum function and the QHJ energy route."""

import math

import numpy as np
import pytest

from shapeinv.catalog import ClassId, bound_state_count, closed_form_energy, make_spec
from shapeinv.errors import BranchPointCrossed, NotBound
from shapeinv.presets import preset_spec
from shapeinv.qhj import (
    branch_rule_error,
    energy_supremum,
    fixed_pole_set,
    laurent_fit,
    quantization_equation,
    residue_solutions,
    solve_energy_qhj,
    spurious_multiplier,
)

EXPECTED_POLE_COUNTS = {
    "IA": 1, "IB": 2, "IIA": 2, "IIB1": 3, "IIB2": 3, "IIB3": 3,
    "IIIA": 2, "IIIB1": 4, "IIIB2": 4, "IIIB3": 4,
}


@pytest.mark.parametrize("cid", [c.value for c in ClassId])
def test_fixed_pole_counts(cid):
    assert len(fixed_pole_set(cid)) == EXPECTED_POLE_COUNTS[cid]


def test_spurious_multiplier():
    for cid in ClassId:
        expected = 2.0 if cid.value.startswith("IIIB") else 1.0
        assert spurious_multiplier(cid) == expected


def test_radial_oscillator_half_weights():
    assert all(p.weight == 0.5 for p in fixed_pole_set("IIIA"))
    assert all(p.weight == 1.0 for p in fixed_pole_set("IIB2"))


@pytest.mark.parametrize("cid", [c.value for c in ClassId])
def test_routes_agree_with_catalog(cid):
    spec = preset_spec(cid)
    top = int(min(3, bound_state_count(spec)))
    for n in range(top + 1):
        e_cat = closed_form_energy(spec, n)
        closed = solve_energy_qhj(spec, n, "closed_form")
        numeric = solve_energy_qhj(spec, n, "numeric_root")
        assert closed.residual <= 1e-10
        assert numeric.residual <= 1e-10
        assert abs(closed.energy - e_cat) <= 1e-12 * max(1.0, abs(e_cat))
        assert abs(numeric.energy - closed.energy) <= 1e-12 * max(
            1.0, abs(closed.energy)
        )


def test_quantization_equation_vanishes_only_at_level():
    spec = preset_spec("IB")  # E_1 = 5, E_2 = 8
    q1 = quantization_equation(spec, 1)
    assert abs(q1(5.0)) <= 1e-12
    assert abs(q1(8.0)) > 0.1
    q2 = quantization_equation(spec, 2)
    assert abs(q2(8.0)) <= 1e-12


def test_numeric_root_ground_state_is_zero():
    res = solve_energy_qhj(preset_spec("IIB2"), 0, "numeric_root")
    assert res.energy == 0.0
    assert res.route == "numeric_root"


def test_unknown_route_rejected():
    with pytest.raises(ValueError):
        solve_energy_qhj(preset_spec("IA"), 1, "magic")


@pytest.mark.parametrize(
    "cid,expected",
    [("IB", 9.0), ("IIA", 4.0), ("IIB2", 9.0), ("IIIB2", 9.0), ("IA", math.inf)],
)
def test_energy_supremum(cid, expected):
    assert energy_supremum(preset_spec(cid)) == expected


def test_branch_point_crossed():
    with pytest.raises(BranchPointCrossed):
        residue_solutions(preset_spec("IB"), 10.0)


@pytest.mark.parametrize("cid,n", [("IB", 3), ("IIB3", 1), ("IIB2", 2)])
def test_unbound_level_rejected(cid, n):
    with pytest.raises(NotBound):
        solve_energy_qhj(preset_spec(cid), n)


def test_residues_reduce_to_superpotential_limit_morse():
    # at E = E_2 = 8 the residue at the zero of the exponential variable is
    # sqrt(a^2 - E) = 1
    spec = preset_spec("IB")
    sols = residue_solutions(spec, 8.0)
    by_id = {s.pole.id: s for s in sols}
    assert by_id["AtZeroOfVariable"].a0 == pytest.approx(1.0, abs=1e-12)


def test_coulomb_residue_at_zero_energy():
    # E -> 0 recovers the superpotential data: contribution sum vanishes
    spec = preset_spec("IIA")
    total = sum(s.contribution for s in residue_solutions(spec, 0.0))
    assert total == pytest.approx(0.0, abs=1e-12)


def test_scarf_exponential_pole_coefficients():
    # hyperbolic Scarf: poles of W at y = +/-i carry b1 = B -/+ i a; the
    # stored real part is B for both
    spec = make_spec("IIIB2", a=-4.0, B=-4.0)
    by_id = {s.pole.id: s for s in residue_solutions(spec, 0.0)}
    assert by_id["AtPlusOne"].b1 == pytest.approx(spec.B, abs=1e-12)
    assert by_id["AtMinusOne"].b1 == pytest.approx(spec.B, abs=1e-12)
    # trigonometric Scarf: real coefficients a+B and B-a at the paired poles
    spec = preset_spec("IIIB1")
    by_id = {s.pole.id: s for s in residue_solutions(spec, 0.0)}
    assert by_id["AtPlusOne"].b1 == pytest.approx(spec.a + spec.B, abs=1e-12)
    assert by_id["AtMinusOne"].b1 == pytest.approx(spec.B - spec.a, abs=1e-12)


def test_contribution_sum_equals_level_index():
    for cid in ClassId:
        spec = preset_spec(cid)
        top = int(min(3, bound_state_count(spec)))
        mult = spurious_multiplier(cid)
        for n in range(top + 1):
            e = closed_form_energy(spec, n)
            total = sum(s.contribution for s in residue_solutions(spec, e))
            assert total == pytest.approx(n * spec.hbar * mult, abs=1e-10)


@pytest.mark.parametrize("cid", [c.value for c in ClassId])
def test_branch_rule_against_laurent_fit(cid):
    assert branch_rule_error(preset_spec(cid)) <= 1e-8


def test_laurent_fit_recovers_known_coefficients():
    fit = laurent_fit(lambda u: 2.0 / u + 1.0 + 0.5 * u)
    assert fit[-1] == pytest.approx(2.0, abs=1e-10)
    assert fit[0] == pytest.approx(1.0, abs=1e-10)
    assert fit[1] == pytest.approx(0.5, abs=1e-9)
    assert abs(fit[2]) < 1e-8


def test_branch_tags_recorded():
    for s in residue_solutions(preset_spec("IB"), 5.0):
        assert isinstance(s.branch, str) and s.branch
