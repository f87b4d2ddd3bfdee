"""Catalog of the ten conventional shape-invariant superpotentials.

Every superpotential has the additive form W(x, a) = a*f1(x) + f2(x) + u(a)
with f1' = f1**2 - lam and a class-specific ODE for f2.  The catalog fixes one
canonical solution per class (units 2m = 1, |lam| in {0, 1}):

    IA     W = (omega/2) x                    harmonic oscillator
    IB     W = -a - exp(-x)                   Morse              (a < 0)
    IIA    W = -a/x + B/a                     Coulomb            (a > 0, B > 0)
    IIB1   W = a tan x + B/a                  Rosen-Morse (trig) (a > 0)
    IIB2   W = -a tanh x + B/a                Rosen-Morse (hyp)  (a < 0, B < 0)
    IIB3   W = -a coth x + B/a                Eckart             (a > 0, B > a^2)
    IIIA   W = -a/x + (omega/2) x             radial oscillator  (a > 0)
    IIIB1  W = a tan x + B sec x              Scarf (trig)       (a > 0, |B| < a)
    IIIB2  W = -a tanh x + B sech x           Scarf (hyp)        (a < 0)
    IIIB3  W = -a coth x + B csch x           Poschl-Teller (hyp)(a < 0, B < a)

Closed-form energies come from E_n = g(a + n*hbar) - g(a); the per-class g is
stored alongside its derivative, which also drives the bound-state count
(levels stop where g ceases to increase along the parameter ladder).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidDomain, InvalidParameter, NotBound

HALF_PI = math.pi / 2.0


class ClassId(str, Enum):
    IA = "IA"
    IB = "IB"
    IIA = "IIA"
    IIB1 = "IIB1"
    IIB2 = "IIB2"
    IIB3 = "IIB3"
    IIIA = "IIIA"
    IIIB1 = "IIIB1"
    IIIB2 = "IIIB2"
    IIIB3 = "IIIB3"


@dataclass(frozen=True)
class Domain:
    """Open interval on which a superpotential is defined."""

    x_min: float
    x_max: float

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x > self.x_min) & (x < self.x_max)))


FULL_LINE = Domain(-math.inf, math.inf)
HALF_LINE = Domain(0.0, math.inf)
TRIG_BOX = Domain(-HALF_PI, HALF_PI)

_DOMAINS = {
    ClassId.IA: FULL_LINE,
    ClassId.IB: FULL_LINE,
    ClassId.IIA: HALF_LINE,
    ClassId.IIB1: TRIG_BOX,
    ClassId.IIB2: FULL_LINE,
    ClassId.IIB3: HALF_LINE,
    ClassId.IIIA: HALF_LINE,
    ClassId.IIIB1: TRIG_BOX,
    ClassId.IIIB2: FULL_LINE,
    ClassId.IIIB3: HALF_LINE,
}

POTENTIAL_NAMES = {
    ClassId.IA: "1D Harmonic Oscillator",
    ClassId.IB: "Morse",
    ClassId.IIA: "Coulomb",
    ClassId.IIB1: "Rosen-Morse (Trigonometric)",
    ClassId.IIB2: "Rosen-Morse (Hyperbolic)",
    ClassId.IIB3: "Eckart",
    ClassId.IIIA: "3D Oscillator",
    ClassId.IIIB1: "Scarf (Trigonometric)",
    ClassId.IIIB2: "Scarf (Hyperbolic)",
    ClassId.IIIB3: "Poschl-Teller (Hyperbolic)",
}

W_FORMS = {
    ClassId.IA: "(omega/2) x",
    ClassId.IB: "-a - exp(-x)",
    ClassId.IIA: "-a/x + B/a",
    ClassId.IIB1: "a tan(x) + B/a",
    ClassId.IIB2: "-a tanh(x) + B/a",
    ClassId.IIB3: "-a coth(x) + B/a",
    ClassId.IIIA: "-a/x + (omega/2) x",
    ClassId.IIIB1: "a tan(x) + B sec(x)",
    ClassId.IIIB2: "-a tanh(x) + B sech(x)",
    ClassId.IIIB3: "-a coth(x) + B csch(x)",
}

ENERGY_FORMS = {
    ClassId.IA: "n hbar omega",
    ClassId.IB: "a^2 - (a+n hbar)^2",
    ClassId.IIA: "B^2/a^2 - B^2/(a+n hbar)^2",
    ClassId.IIB1: "(a+n hbar)^2 - a^2 + B^2/a^2 - B^2/(a+n hbar)^2",
    ClassId.IIB2: "a^2 - (a+n hbar)^2 + B^2/a^2 - B^2/(a+n hbar)^2",
    ClassId.IIB3: "a^2 - (a+n hbar)^2 + B^2/a^2 - B^2/(a+n hbar)^2",
    ClassId.IIIA: "2 n hbar omega",
    ClassId.IIIB1: "(a+n hbar)^2 - a^2",
    ClassId.IIIB2: "a^2 - (a+n hbar)^2",
    ClassId.IIIB3: "a^2 - (a+n hbar)^2",
}

PARAMETER_CONSTRAINTS = {
    ClassId.IA: "omega > 0",
    ClassId.IB: "a < 0",
    ClassId.IIA: "a > 0, B > 0",
    ClassId.IIB1: "a > 0",
    ClassId.IIB2: "a < 0, B < 0",
    ClassId.IIB3: "a > 0, B > a^2",
    ClassId.IIIA: "a > 0, omega > 0 (B = -omega/2)",
    ClassId.IIIB1: "a > 0, |B| < a",
    ClassId.IIIB2: "a < 0",
    ClassId.IIIB3: "a < 0, B < a",
}

# lam: constant in f1' = f1^2 - lam (None for class I where f1 is the
# constant alpha); eps: constant in the f2 ODE of classes I and III.
_CLASS_LAM = {
    ClassId.IIA: 0.0,
    ClassId.IIB1: -1.0,
    ClassId.IIB2: 1.0,
    ClassId.IIB3: 1.0,
    ClassId.IIIA: 0.0,
    ClassId.IIIB1: -1.0,
    ClassId.IIIB2: 1.0,
    ClassId.IIIB3: 1.0,
}
_CLASS_ALPHA = {ClassId.IA: 0.0, ClassId.IB: -1.0}


@dataclass(frozen=True)
class SuperpotentialSpec:
    """Validated catalog entry: class identifier plus parameters."""

    class_id: ClassId
    a: float = 0.0
    B: float = 0.0
    omega: float = 0.0
    hbar: float = 1.0
    domain: Domain = FULL_LINE

    @property
    def lam(self) -> float:
        return _CLASS_LAM.get(self.class_id, 0.0)

    @property
    def alpha(self) -> float:
        return _CLASS_ALPHA.get(self.class_id, 0.0)

    @property
    def eps(self) -> float:
        if self.class_id is ClassId.IA:
            return -self.omega / 2.0
        if self.class_id is ClassId.IIIA:
            return -self.omega
        return 0.0

    @property
    def name(self) -> str:
        return POTENTIAL_NAMES[self.class_id]

    def shifted(self, k: int) -> "SuperpotentialSpec":
        """Spec with a -> a + k*hbar (other parameters unchanged)."""
        return replace(self, a=self.a + k * self.hbar)

    def describe(self) -> str:
        bits = [f"class={self.class_id.value}", f"a={self.a:g}"]
        if self.class_id not in (ClassId.IA, ClassId.IB):
            bits.append(f"B={self.B:g}")
        if self.class_id in (ClassId.IA, ClassId.IIIA):
            bits.append(f"omega={self.omega:g}")
        bits.append(f"hbar={self.hbar:g}")
        return ", ".join(bits)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameter(message)


def make_spec(class_id, a=None, B=None, omega=None, hbar=1.0, domain=None):
    """Validate parameters and build a SuperpotentialSpec.

    Sign and range constraints follow the catalog table; violations raise
    InvalidParameter naming the failed constraint.
    """
    cid = ClassId(class_id)
    if hbar <= 0:
        raise InvalidParameter("hbar must be positive")
    a = 0.0 if a is None else float(a)
    B = 0.0 if B is None else float(B)
    omega = 0.0 if omega is None else float(omega)

    if cid is ClassId.IA:
        _require(omega > 0, "IA requires omega > 0")
    elif cid is ClassId.IB:
        _require(a < 0, "IB requires a < 0")
    elif cid is ClassId.IIA:
        _require(a > 0, "IIA requires a > 0")
        _require(B > 0, "IIA requires B > 0")
    elif cid is ClassId.IIB1:
        _require(a > 0, "IIB1 requires a > 0")
    elif cid is ClassId.IIB2:
        _require(a < 0, "IIB2 requires a < 0")
        _require(B < 0, "IIB2 requires B < 0")
    elif cid is ClassId.IIB3:
        _require(a > 0, "IIB3 requires a > 0")
        _require(B > a * a, "IIB3 requires B > a^2")
    elif cid is ClassId.IIIA:
        _require(a > 0, "IIIA requires a > 0")
        if omega == 0.0 and B < 0:
            omega = -2.0 * B
        _require(omega > 0, "IIIA requires omega > 0")
        B = -omega / 2.0
    elif cid is ClassId.IIIB1:
        _require(a > 0, "IIIB1 requires a > 0")
        _require(abs(B) < a, "IIIB1 requires |B| < a")
    elif cid is ClassId.IIIB2:
        _require(a < 0, "IIIB2 requires a < 0")
    elif cid is ClassId.IIIB3:
        _require(a < 0, "IIIB3 requires a < 0")
        _require(B < a, "IIIB3 requires B < a")

    dom = _DOMAINS[cid]
    if domain is not None and (domain.x_min, domain.x_max) != (dom.x_min, dom.x_max):
        raise InvalidDomain(f"{cid.value} is defined on ({dom.x_min}, {dom.x_max})")
    spec = SuperpotentialSpec(cid, a=a, B=B, omega=omega, hbar=hbar, domain=dom)
    _require(g_derivative(spec, spec.a) > 0, f"{cid.value}: dg/da must be positive at a")
    return spec


def _check_inside(spec, x) -> None:
    if not spec.domain.contains(x):
        raise DomainError(
            f"x outside open domain ({spec.domain.x_min}, {spec.domain.x_max})"
        )


def evaluate_basis(spec, x):
    """Canonical (f1(x), f2(x), u(a)) for the class; x strictly inside."""
    _check_inside(spec, x)
    x = np.asarray(x, dtype=float)
    cid = spec.class_id
    zero = np.zeros_like(x)
    if cid is ClassId.IA:
        return zero, (spec.omega / 2.0) * x, 0.0
    if cid is ClassId.IB:
        return zero - 1.0, -np.exp(-x), 0.0
    if cid is ClassId.IIA:
        return -1.0 / x, zero, spec.B / spec.a
    if cid is ClassId.IIB1:
        return np.tan(x), zero, spec.B / spec.a
    if cid is ClassId.IIB2:
        return -np.tanh(x), zero, spec.B / spec.a
    if cid is ClassId.IIB3:
        return -1.0 / np.tanh(x), zero, spec.B / spec.a
    if cid is ClassId.IIIA:
        return -1.0 / x, (spec.omega / 2.0) * x, 0.0
    if cid is ClassId.IIIB1:
        return np.tan(x), spec.B / np.cos(x), 0.0
    if cid is ClassId.IIIB2:
        return -np.tanh(x), spec.B / np.cosh(x), 0.0
    if cid is ClassId.IIIB3:
        return -1.0 / np.tanh(x), spec.B / np.sinh(x), 0.0
    raise InvalidParameter(f"unknown class {cid}")


def _basis_derivatives(spec, x):
    """Analytic (f1'(x), f2'(x)) from the class ODEs."""
    x = np.asarray(x, dtype=float)
    cid = spec.class_id
    zero = np.zeros_like(x)
    if cid is ClassId.IA:
        return zero, zero + spec.omega / 2.0
    if cid is ClassId.IB:
        return zero, np.exp(-x)
    if cid in (ClassId.IIA, ClassId.IIIA):
        f1p = 1.0 / (x * x)
        f2p = zero if cid is ClassId.IIA else zero + spec.omega / 2.0
        return f1p, f2p
    f1, f2, _ = evaluate_basis(spec, x)
    f1p = f1 * f1 - spec.lam
    if cid in (ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
        return f1p, zero
    # class IIIB: f2' = f1*f2 (eps = 0)
    return f1p, f1 * f2


def evaluate_W(spec, x):
    """W(x, a) = a*f1(x) + f2(x) + u(a)."""
    f1, f2, u = evaluate_basis(spec, x)
    return spec.a * f1 + f2 + u


def evaluate_W_prime(spec, x):
    """Analytic dW/dx = a*f1' + f2'."""
    _check_inside(spec, x)
    f1p, f2p = _basis_derivatives(spec, x)
    return spec.a * f1p + f2p


def evaluate_dW_da(spec, x):
    """Analytic dW/da (f1, shifted by -B/a^2 for the class II u = B/a)."""
    _check_inside(spec, x)
    f1, _, _ = evaluate_basis(spec, x)
    if spec.class_id in (ClassId.IIA, ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
        return f1 - spec.B / spec.a**2
    return f1


def partner_potentials(spec, x):
    """(V_minus, V_plus) = W^2 -/+ hbar*W' with the analytic derivative."""
    W = evaluate_W(spec, x)
    Wp = evaluate_W_prime(spec, x)
    return W * W - spec.hbar * Wp, W * W + spec.hbar * Wp


def g_function(spec, a_value):
    """Shape-invariance energy generator g(a) for the class."""
    cid = spec.class_id
    a = a_value
    if cid is ClassId.IA:
        return spec.omega * a
    if cid is ClassId.IB:
        return -a * a
    if cid in (ClassId.IIA, ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
        return -spec.lam * a * a - spec.B**2 / (a * a)
    if cid is ClassId.IIIA:
        return 2.0 * spec.omega * a
    return -spec.lam * a * a


def g_derivative(spec, a_value):
    """dg/da; levels exist only while this is positive along a_k = a + k*hbar."""
    cid = spec.class_id
    a = a_value
    if cid is ClassId.IA:
        return spec.omega
    if cid is ClassId.IB:
        return -2.0 * a
    if cid in (ClassId.IIA, ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
        return -2.0 * spec.lam * a + 2.0 * spec.B**2 / a**3
    if cid is ClassId.IIIA:
        return 2.0 * spec.omega
    return -2.0 * spec.lam * a


_ALWAYS_INCREASING = (ClassId.IA, ClassId.IIA, ClassId.IIB1, ClassId.IIIA, ClassId.IIIB1)

_COUNT_CAP = 100_000


def bound_state_count(spec):
    """Largest admissible level index: levels n = 0 .. count are bound.

    Level n is admissible when g is strictly increasing at every ladder
    parameter a_k = a + k*hbar, k <= n.  Returns math.inf for classes whose
    spectrum never turns over.  The strict predicate dg/da(a_k) > 0 also
    rejects levels sitting exactly at the continuum threshold (where the
    energy formula still increases but the state is no longer normalizable).
    """
    if spec.class_id in _ALWAYS_INCREASING:
        return math.inf
    a0, h = spec.a, spec.hbar
    count = 0
    for k in range(_COUNT_CAP):
        a_k = a0 + k * h
        if a_k == 0.0 or (a0 < 0.0 and a_k > 0.0):
            break  # parameter ladder leaves the admissible range
        if g_derivative(spec, a_k) <= 0.0:
            break
        count = k
    return count


def closed_form_energy(spec, n):
    """E_n = g(a + n*hbar) - g(a); E_0 = 0 exactly."""
    if n < 0:
        raise NotBound("level index must be nonnegative")
    if n > bound_state_count(spec):
        raise NotBound(
            f"n={n} exceeds bound state count {bound_state_count(spec)}"
        )
    if n == 0:
        return 0.0
    return g_function(spec, spec.a + n * spec.hbar) - g_function(spec, spec.a)


def find_w_zero(spec, x_lo=None, x_hi=None, tol=1e-13):
    """Unique zero of W on the domain, by bracket scan plus bisection."""
    dom = spec.domain
    if x_lo is None or x_hi is None:
        # expand a symmetric probe window until W changes sign
        if math.isinf(dom.x_min) and math.isinf(dom.x_max):
            lo, hi = -1.0, 1.0
            grow = lambda l, h: (2 * l, 2 * h)
        elif math.isinf(dom.x_max):
            lo, hi = 0.5, 2.0
            grow = lambda l, h: (l / 2, 2 * h)
        else:
            pad = (dom.x_max - dom.x_min) / 4
            lo, hi = dom.x_min + pad, dom.x_max - pad
            grow = lambda l, h: (
                dom.x_min + (l - dom.x_min) / 2,
                dom.x_max - (dom.x_max - h) / 2,
            )
        for _ in range(200):
            if evaluate_W(spec, lo) < 0 < evaluate_W(spec, hi):
                break
            lo, hi = grow(lo, hi)
        else:
            raise InvalidParameter("W does not change sign on the domain")
    else:
        lo, hi = x_lo, x_hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if evaluate_W(spec, mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)
