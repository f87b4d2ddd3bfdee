"""Shipped per-class default parameters and solver grids."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import ClassId, SuperpotentialSpec, make_spec, partner_potentials
from .grid import Grid

_EDGE = math.pi / 2.0 - 1e-6  # finite inset for the trigonometric box


@dataclass(frozen=True)
class Preset:
    class_id: ClassId
    params: dict
    grid: Grid


PRESETS = {
    ClassId.IA: Preset(ClassId.IA, {"omega": 2.0}, Grid(-10.0, 10.0, 8001)),
    ClassId.IB: Preset(ClassId.IB, {"a": -3.0}, Grid(-6.0, 16.0, 8801)),
    ClassId.IIA: Preset(ClassId.IIA, {"a": 1.0, "B": 2.0}, Grid(1e-4, 90.0, 36001)),
    ClassId.IIB1: Preset(ClassId.IIB1, {"a": 1.0, "B": 1.0}, Grid(-_EDGE, _EDGE, 8001)),
    ClassId.IIB2: Preset(ClassId.IIB2, {"a": -4.0, "B": -4.0}, Grid(-15.0, 15.0, 12001)),
    ClassId.IIB3: Preset(ClassId.IIB3, {"a": 1.0, "B": 4.0}, Grid(1e-4, 30.0, 12001)),
    ClassId.IIIA: Preset(ClassId.IIIA, {"a": 2.0, "omega": 2.0}, Grid(1e-4, 12.0, 8001)),
    ClassId.IIIB1: Preset(ClassId.IIIB1, {"a": 2.0, "B": 1.0}, Grid(-_EDGE, _EDGE, 8001)),
    ClassId.IIIB2: Preset(ClassId.IIIB2, {"a": -3.0, "B": 1.0}, Grid(-12.0, 12.0, 8001)),
    ClassId.IIIB3: Preset(ClassId.IIIB3, {"a": -3.0, "B": -4.0}, Grid(1e-4, 16.0, 8001)),
}

# a second admissible parameter set per class, used by the invariance checks
ALT_PARAMS = {
    ClassId.IA: {"omega": 1.0},
    ClassId.IB: {"a": -2.5},
    ClassId.IIA: {"a": 2.0, "B": 3.0},
    ClassId.IIB1: {"a": 1.5, "B": 0.5},
    ClassId.IIB2: {"a": -3.0, "B": -2.0},
    ClassId.IIB3: {"a": 1.5, "B": 4.0},
    ClassId.IIIA: {"a": 1.0, "omega": 1.0},
    ClassId.IIIB1: {"a": 1.5, "B": 0.5},
    ClassId.IIIB2: {"a": -2.5, "B": 1.0},
    ClassId.IIIB3: {"a": -2.0, "B": -3.0},
}


def preset_spec(class_id, hbar: float = 1.0) -> SuperpotentialSpec:
    p = PRESETS[ClassId(class_id)]
    return make_spec(p.class_id, hbar=hbar, **p.params)


def alt_spec(class_id, hbar: float = 1.0) -> SuperpotentialSpec:
    cid = ClassId(class_id)
    return make_spec(cid, hbar=hbar, **ALT_PARAMS[cid])


# classes whose potential levels off to a finite plateau: their highest
# bound states spread out roughly quadratically in hbar, so the default
# grid must grow with it.  Confining classes are excluded on purpose --
# widening their grids adds hundreds of decay lengths of dead forbidden
# region and overflows the shooting integrator.
_PLATEAU = frozenset(
    {ClassId.IB, ClassId.IIA, ClassId.IIB2, ClassId.IIB3, ClassId.IIIB2, ClassId.IIIB3}
)


def preset_grid(class_id, hbar: float = 1.0) -> Grid:
    cid = ClassId(class_id)
    g = PRESETS[cid].grid
    factor = max(1.0, hbar * hbar)
    if factor == 1.0 or cid not in _PLATEAU:
        return g
    spec = make_spec(cid, hbar=hbar, **PRESETS[cid].params)

    def widen(x_edge, dom_edge):
        # widen only toward a plateau: pushing into a steeply rising wall
        # adds hundreds of decay lengths of dead forbidden region, and the
        # quadrature/normalization numbers there swamp double precision
        if not math.isinf(dom_edge):
            return x_edge
        candidate = x_edge * factor
        with np.errstate(over="ignore", invalid="ignore"):
            v_old = partner_potentials(spec, np.array([x_edge]))[0][0]
            v_new = partner_potentials(spec, np.array([candidate]))[0][0]
        if math.isfinite(v_new) and abs(v_new) <= 4.0 * (abs(v_old) + 1.0):
            return candidate
        return x_edge

    x_min = widen(g.x_min, spec.domain.x_min)
    x_max = widen(g.x_max, spec.domain.x_max)
    if (x_min, x_max) == (g.x_min, g.x_max):
        return g
    n = 1 + round((g.n_points - 1) * (x_max - x_min) / (g.x_max - g.x_min))
    return Grid(x_min, x_max, int(n))
