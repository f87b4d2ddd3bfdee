"""Grid checks of the shape-invariance condition and its PDE reduction.

Both residuals are pointwise algebraic identities of the catalog forms, so on
a valid spec they vanish to rounding; any sign or constant error in the
catalog shows up as an O(1) residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import (
    SuperpotentialSpec,
    evaluate_W,
    evaluate_W_prime,
    evaluate_dW_da,
    g_derivative,
    g_function,
)
from .errors import InvalidParameter


@dataclass(frozen=True)
class ResidualReport:
    spec: SuperpotentialSpec
    grid_descr: str
    sup_norm_si: float
    sup_norm_pde1: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.sup_norm_si <= self.tolerance and self.sup_norm_pde1 <= self.tolerance


# per-point rounding allowance: ~100 ulp of the larger side.  Near a domain
# edge where V diverges (tan, coth poles) the individual sides reach ~1e12 and
# their independent rounding swamps an absolute difference; a genuine sign or
# constant error in the catalog still passes through at full size wherever the
# potential is O(1).
_ROUNDING_ALLOWANCE = 100.0 * np.finfo(float).eps


def _deadbanded_sup(diff, *magnitudes):
    scale = np.maximum(1.0, np.max(np.abs(magnitudes), axis=0))
    return float(np.max(np.maximum(0.0, np.abs(diff) - _ROUNDING_ALLOWANCE * scale)))


def si_residual(spec, x):
    """sup_x |V_plus(x, a0) + g(a0) - V_minus(x, a1) - g(a1)|, a1 = a0 + hbar,

    after subtracting the per-point rounding allowance.
    """
    shifted = spec.shifted(1)
    if shifted.a == 0.0:
        raise InvalidParameter("a + hbar leaves the admissible parameter range")
    x = np.asarray(x, dtype=float)
    W0 = evaluate_W(spec, x)
    W1 = evaluate_W(shifted, x)
    lhs = W0 * W0 + spec.hbar * evaluate_W_prime(spec, x) + g_function(spec, spec.a)
    rhs = W1 * W1 - spec.hbar * evaluate_W_prime(shifted, x) + g_function(spec, shifted.a)
    return _deadbanded_sup(lhs - rhs, lhs, rhs)


def pde1_residual(spec, x):
    """sup_x |W dW/da - dW/dx + (1/2) dg/da|, analytic derivatives,

    after subtracting the per-point rounding allowance.
    """
    x = np.asarray(x, dtype=float)
    t1 = evaluate_W(spec, x) * evaluate_dW_da(spec, x)
    t2 = evaluate_W_prime(spec, x)
    return _deadbanded_sup(t1 - t2 + 0.5 * g_derivative(spec, spec.a), t1, t2)


def check_spec(spec, x, tolerance=1e-10) -> ResidualReport:
    x = np.asarray(x, dtype=float)
    descr = f"[{x[0]:g}, {x[-1]:g}] x {len(x)}"
    return ResidualReport(
        spec=spec,
        grid_descr=descr,
        sup_norm_si=si_residual(spec, x),
        sup_norm_pde1=pde1_residual(spec, x),
        tolerance=tolerance,
    )
