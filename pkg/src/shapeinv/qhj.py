"""Quantization by residue algebra on the quantum momentum function.

As E -> 0 the quantum momentum function p = -hbar psi'/psi tends to the
superpotential W, which fixes the sign of every square root below (the
branch rule).  Each potential class has a small set of fixed poles in its
natural algebraic variable; the bound-state condition equates the moving-pole
sum n*hbar with the sign-reversed sum of fixed-pole contributions.  All
contour work reduces to Laurent coefficients times the residue of the
coordinate differential at the pole, so the engine is exact algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import ClassId, SuperpotentialSpec, bound_state_count
from .errors import BranchPointCrossed, NoRoot, NotBound

_ARG_SLACK = 1e-9  # tolerated negative square-root argument (rounding)


@dataclass(frozen=True)
class PoleDescriptor:
    """A fixed singular point of the momentum function in its local variable."""

    id: str  # AtZeroOfVariable | AtInfinity | AtPlusOne | AtMinusOne
    variable: str  # f1 | f2 | z | y
    weight: float  # contour multiplicity (1 or 1/2)
    differential_factor: str  # dx expressed in the local variable


@dataclass(frozen=True)
class ResidueSolution:
    """Laurent data of one fixed pole at a given energy.

    For conjugate-pair poles (trigonometric classes and the hyperbolic
    exponential variable) b1/a0 hold the real part of the coefficient; the
    contribution is the real term the pole adds to the quantization sum.
    """

    pole: PoleDescriptor
    b1: float
    a0: float
    a1: float
    branch: str
    contribution: float


@dataclass(frozen=True)
class QuantizationResult:
    n: int
    energy: float
    residual: float
    route: str


# ---------------------------------------------------------------------------
# fixed pole inventory

_POLES = {
    ClassId.IA: [
        PoleDescriptor("AtInfinity", "z", 1.0, "dx = -dz/z^2 with z = 1/f2"),
    ],
    ClassId.IB: [
        PoleDescriptor("AtZeroOfVariable", "f2", 1.0, "dx = -df2/f2"),
        PoleDescriptor("AtInfinity", "z", 1.0, "dx = dz/z with z = 1/f2"),
    ],
    ClassId.IIA: [
        PoleDescriptor("AtZeroOfVariable", "f1", 1.0, "dx = df1/f1^2"),
        PoleDescriptor("AtInfinity", "z", 1.0, "dx = -dz with z = 1/f1"),
    ],
    ClassId.IIIA: [
        PoleDescriptor("AtZeroOfVariable", "f1", 0.5, "dx = df1/f1^2"),
        PoleDescriptor("AtInfinity", "z", 0.5, "dx = -dz with z = 1/f1"),
    ],
}
for _cid in (ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
    _POLES[_cid] = [
        PoleDescriptor("AtPlusOne", "f1", 1.0, "dx = du/(2tu), u = f1 - t"),
        PoleDescriptor("AtMinusOne", "f1", 1.0, "dx = du/(2tu), u = f1 - t"),
        PoleDescriptor("AtInfinity", "z", 1.0, "dx = -dz with z = 1/f1"),
    ]
for _cid in (ClassId.IIIB1, ClassId.IIIB2, ClassId.IIIB3):
    _POLES[_cid] = [
        PoleDescriptor("AtZeroOfVariable", "y", 1.0, "dx = dy/y (exponential variable)"),
        PoleDescriptor("AtPlusOne", "y", 1.0, "dx = du/t, u = y - t"),
        PoleDescriptor("AtMinusOne", "y", 1.0, "dx = du/t, u = y - t"),
        PoleDescriptor("AtInfinity", "z", 1.0, "dx = -dz/z with z = 1/y"),
    ]

# the hyperbolic/trigonometric radial classes pick up n spurious moving poles
# on the unphysical half-axis of the exponential variable, doubling the
# moving-pole side of the condition
_SPURIOUS_MULTIPLIER = {cid: 1.0 for cid in ClassId}
for _cid in (ClassId.IIIB1, ClassId.IIIB2, ClassId.IIIB3):
    _SPURIOUS_MULTIPLIER[_cid] = 2.0


def fixed_pole_set(class_id) -> list:
    return list(_POLES[ClassId(class_id)])


def spurious_multiplier(class_id) -> float:
    return _SPURIOUS_MULTIPLIER[ClassId(class_id)]


def _root(arg, label):
    """Principal square root with a guarded negative argument."""
    if arg < -_ARG_SLACK * (1.0 + abs(arg)):
        raise BranchPointCrossed(f"{label}: square-root argument {arg:.6g} < 0")
    return math.sqrt(max(arg, 0.0))


def _signed_root(arg, target, label):
    """Principal root with the sign that matches `target` (the E=0 limit)."""
    sign = 1.0 if target >= 0.0 else -1.0
    tag = f"{'+'if sign>0 else '-'}sqrt (matches W limit {target:.6g} at E=0)"
    return sign * _root(arg, label), tag


# ---------------------------------------------------------------------------
# per-class residue solutions


def residue_solutions(spec: SuperpotentialSpec, E: float) -> list:
    cid = spec.class_id
    a, B, hbar = spec.a, spec.B, spec.hbar
    poles = _POLES[cid]
    out = []

    if cid == ClassId.IA:
        omega = spec.omega
        # p ~ 1/z + a1 z at infinity with a1 = -E/2 in W units; the
        # differential residue divides by eps = -omega/2
        a1 = -E / 2.0
        return [
            ResidueSolution(poles[0], 1.0, 0.0, a1, "+1/z (matches W at E=0)", E / omega)
        ]

    if cid == ClassId.IB:
        a0, tag = _signed_root(a * a - E, -a, spec.name)
        out.append(ResidueSolution(poles[0], 0.0, a0, 0.0, tag, -a0))
        out.append(
            ResidueSolution(poles[1], 1.0, -a, 0.0, "+1/z (matches W at E=0)", -a)
        )
        return out

    if cid == ClassId.IIA:
        root = _root(B * B - a * a * E, spec.name)
        a0 = root / a
        a1 = a * B / root if root > 0.0 else math.inf
        out.append(
            ResidueSolution(
                poles[0], 0.0, a0, a1, "+sqrt (a1 -> a at E=0)", a1
            )
        )
        out.append(
            ResidueSolution(poles[1], a, 0.0, 0.0, "b1 = a (matches W at E=0)", -a)
        )
        return out

    if cid == ClassId.IIIA:
        out.append(
            ResidueSolution(
                poles[0], B, 0.0, a - E / (2.0 * B),
                "a1 -> a at E=0", 0.5 * (a - E / (2.0 * B)),
            )
        )
        out.append(
            ResidueSolution(poles[1], a, 0.0, 0.0, "b1 = a (matches W at E=0)", -0.5 * a)
        )
        return out

    if cid in (ClassId.IIB2, ClassId.IIB3):
        base = a * a + B * B / (a * a) - E
        for pole, t in ((poles[0], 1.0), (poles[1], -1.0)):
            target = a * t + B / a  # W at the singular point
            a0, tag = _signed_root(
                base + 2.0 * B * t, target, f"{spec.name} f1={t:+g}"
            )
            out.append(ResidueSolution(pole, 0.0, a0, 0.0, tag, a0 / (2.0 * t)))
        out.append(
            ResidueSolution(poles[2], a, 0.0, 0.0, "b1 = a (matches W at E=0)", -a)
        )
        return out

    if cid == ClassId.IIB1:
        # conjugate pair at f1 = +/- i, analytic continuation of the
        # hyperbolic formulas; each pole contributes Re(a0/(2t))
        base = B * B / (a * a) - a * a - E
        target = B / a + 1j * a  # W at f1 = +i
        r0 = np.sqrt(complex(B * B / (a * a) - a * a + 2j * B))
        sign = 1.0 if abs(r0 - target) <= abs(r0 + target) else -1.0
        tag = f"{'+'if sign>0 else '-'}csqrt (matches W at E=0)"
        for pole, t in ((poles[0], 1j), (poles[1], -1j)):
            a0c = sign * np.sqrt(complex(base + 2.0 * B * t))
            contrib = float(np.real(a0c / (2.0 * t)))
            out.append(
                ResidueSolution(pole, 0.0, float(np.real(a0c)), 0.0, tag, contrib)
            )
        out.append(
            ResidueSolution(poles[2], a, 0.0, 0.0, "b1 = a (matches W at E=0)", -a)
        )
        return out

    if cid in (ClassId.IIIB2, ClassId.IIIB3):
        a0, tag = _signed_root(a * a - E, a, spec.name)  # W -> a as y -> 0
        out.append(ResidueSolution(poles[0], 0.0, a0, 0.0, tag, a0))
        if cid == ClassId.IIIB3:
            pair = ((poles[1], 1.0, B - a), (poles[2], -1.0, B + a))
            for pole, t, b1 in pair:
                out.append(
                    ResidueSolution(
                        pole, b1, 0.0, 0.0, "b1 matches W residue", b1 / t
                    )
                )
        else:
            # poles at y = +/- i with b1 = B -/+ i a; contribution Re(b1/t)
            for pole, t in ((poles[1], 1j), (poles[2], -1j)):
                b1c = B - 1j * a if t == 1j else B + 1j * a
                out.append(
                    ResidueSolution(
                        pole, float(np.real(b1c)), 0.0, 0.0,
                        "b1 matches W residue", float(np.real(b1c / t)),
                    )
                )
        a0_inf = -a0  # W -> -a as y -> infinity; opposite branch of same root
        out.append(
            ResidueSolution(
                poles[3], 0.0, a0_inf, 0.0, tag.replace("+", "-", 1), -a0_inf
            )
        )
        return out

    if cid == ClassId.IIIB1:
        root = _root(a * a + E, spec.name)
        # y = exp(ix); dx = dy/(iy).  a0(y->0) = +i sqrt(a^2+E)
        out.append(
            ResidueSolution(
                poles[0], 0.0, 0.0, 0.0, "+i sqrt (matches W -> ia at E=0)", root
            )
        )
        for pole, t in ((poles[1], 1j), (poles[2], -1j)):
            b1c = (a + B) if t == 1j else (B - a)
            contrib = float(np.real(b1c / (1j * t)))
            out.append(
                ResidueSolution(
                    pole, float(b1c), 0.0, 0.0, "b1 matches W residue", contrib
                )
            )
        out.append(
            ResidueSolution(
                poles[3], 0.0, 0.0, 0.0, "-i sqrt (matches W -> -ia at E=0)", root
            )
        )
        return out

    raise NotImplementedError(cid)


# ---------------------------------------------------------------------------
# quantization


def quantization_equation(spec, n):
    """Q with Q(E_n) = 0: fixed-pole sum minus the moving-pole count."""
    mult = _SPURIOUS_MULTIPLIER[spec.class_id]
    target = n * spec.hbar * mult

    def Q(E):
        return sum(rs.contribution for rs in residue_solutions(spec, E)) - target

    return Q


def energy_supremum(spec):
    """Least branch point of the residue square roots (inf if none)."""
    cid = spec.class_id
    a, B = spec.a, spec.B
    if cid == ClassId.IB:
        return a * a
    if cid == ClassId.IIA:
        return B * B / (a * a)
    if cid in (ClassId.IIB2, ClassId.IIB3):
        return a * a + B * B / (a * a) - 2.0 * abs(B)
    if cid in (ClassId.IIIB2, ClassId.IIIB3):
        return a * a
    return math.inf


def _closed_form(spec, n):
    cid = spec.class_id
    a, B, hbar = spec.a, spec.B, spec.hbar
    c = a + n * hbar
    if cid == ClassId.IA:
        return n * spec.omega * hbar
    if cid == ClassId.IIIA:
        return 2.0 * n * spec.omega * hbar
    if cid in (ClassId.IB, ClassId.IIIB2, ClassId.IIIB3):
        return a * a - c * c
    if cid == ClassId.IIA:
        return B * B / (a * a) - B * B / (c * c)
    if cid in (ClassId.IIB2, ClassId.IIB3):
        return a * a - c * c + B * B / (a * a) - B * B / (c * c)
    if cid == ClassId.IIB1:
        return c * c - a * a + B * B / (a * a) - B * B / (c * c)
    if cid == ClassId.IIIB1:
        return c * c - a * a
    raise NotImplementedError(cid)


def solve_energy_qhj(spec, n, route="closed_form") -> QuantizationResult:
    if n < 0:
        raise NotBound("negative level index")
    count = bound_state_count(spec)
    if n > count:
        raise NotBound(
            f"{spec.name}: n={n} exceeds bound state count {count}"
        )
    Q = quantization_equation(spec, n)
    if route == "closed_form":
        energy = _closed_form(spec, n)
        return QuantizationResult(n, energy, abs(Q(energy)), route)
    if route != "numeric_root":
        raise ValueError(f"unknown route {route!r}")
    if n == 0:
        return QuantizationResult(0, 0.0, abs(Q(0.0)), route)
    lo, q_lo = 0.0, Q(0.0)
    sup = energy_supremum(spec)
    if math.isinf(sup):
        hi = 1.0
        for _ in range(200):
            if Q(hi) > 0.0:
                break
            hi *= 2.0
        else:
            raise NoRoot(f"{spec.name}: no sign change of Q up to E={hi:.3g}")
    else:
        hi = sup
    q_hi = Q(hi)
    if q_lo * q_hi > 0.0:
        raise NoRoot(f"{spec.name}: Q has no sign change on [0, {hi:.6g}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-15 * max(1.0, abs(mid)):
            break
        q_mid = Q(mid)
        if q_mid == 0.0:
            lo = hi = mid
            break
        if q_lo * q_mid <= 0.0:
            hi, q_hi = mid, q_mid
        else:
            lo, q_lo = mid, q_mid
    energy = 0.5 * (lo + hi)
    return QuantizationResult(n, energy, abs(Q(energy)), route)


# ---------------------------------------------------------------------------
# direct Laurent check of the branch rule


def local_superpotential(spec, pole):
    """W as a function of the pole's local complex variable, plus the Laurent
    coefficients the chosen branch predicts there at E=0.

    Returns (callable u -> complex, {order: coefficient}).
    """
    cid = spec.class_id
    a, B = spec.a, spec.B

    if cid == ClassId.IA:
        return (lambda u: 1.0 / u), {-1: 1.0}

    if cid == ClassId.IB:
        if pole.id == "AtZeroOfVariable":
            return (lambda u: -a + u), {0: -a}
        return (lambda u: -a + 1.0 / u), {-1: 1.0, 0: -a}

    if cid in (ClassId.IIA, ClassId.IIIA):
        f2_coef = B  # W = a f1 + B/f1 for the radial oscillator
        if cid == ClassId.IIA:
            if pole.id == "AtZeroOfVariable":
                return (lambda u: a * u + B / a), {0: B / a, 1: a}
            return (lambda u: a / u + B / a), {-1: a}
        if pole.id == "AtZeroOfVariable":
            return (lambda u: f2_coef / u + a * u), {-1: B, 1: a}
        return (lambda u: a / u + f2_coef * u), {-1: a}

    if cid in (ClassId.IIB1, ClassId.IIB2, ClassId.IIB3):
        lam = spec.lam
        if pole.id == "AtInfinity":
            return (lambda u: a / u + B / a), {-1: a}
        root = 1.0 if lam == 1 else 1j
        t = root if pole.id == "AtPlusOne" else -root
        return (lambda u: a * (t + u) + B / a), {0: a * t + B / a}

    # class IIIB in the exponential variable y
    if cid == ClassId.IIIB1:
        def w(s):
            return (-1j * a * (s * s - 1.0) + 2.0 * B * s) / (s * s + 1.0)

        if pole.id == "AtZeroOfVariable":
            return w, {0: 1j * a}
        if pole.id == "AtInfinity":
            return (lambda u: w(1.0 / u)), {0: -1j * a}
        t = 1j if pole.id == "AtPlusOne" else -1j
        return (lambda u: w(t + u)), {-1: (a + B) if t == 1j else (B - a)}

    if cid == ClassId.IIIB2:
        def w(s):
            return (-a * (s * s - 1.0) + 2.0 * B * s) / (s * s + 1.0)

        if pole.id == "AtZeroOfVariable":
            return w, {0: a}
        if pole.id == "AtInfinity":
            return (lambda u: w(1.0 / u)), {0: -a}
        t = 1j if pole.id == "AtPlusOne" else -1j
        return (lambda u: w(t + u)), {-1: (B - 1j * a) if t == 1j else (B + 1j * a)}

    def w(s):  # IIIB3
        return (-a * (s * s + 1.0) + 2.0 * B * s) / (s * s - 1.0)

    if pole.id == "AtZeroOfVariable":
        return w, {0: a}
    if pole.id == "AtInfinity":
        return (lambda u: w(1.0 / u)), {0: -a}
    t = 1.0 if pole.id == "AtPlusOne" else -1.0
    return (lambda u: w(t + u)), {-1: (B - a) if t > 0 else (B + a)}


def laurent_fit(func, orders=(-1, 0, 1, 2, 3), radius=3e-2, n_samples=16):
    """Least-squares Laurent coefficients of func on a small circle."""
    theta = 2.0 * np.pi * np.arange(n_samples) / n_samples + 0.3
    u = radius * np.exp(1j * theta)
    rows = np.stack([u**k for k in orders], axis=1)
    vals = np.array([func(ui) for ui in u], dtype=complex)
    coef, *_ = np.linalg.lstsq(rows, vals, rcond=None)
    return dict(zip(orders, coef))


def branch_rule_error(spec):
    """Worst mismatch between chosen E=0 branches and the directly fitted
    Laurent coefficients of W at each fixed pole."""
    worst = 0.0
    for pole in fixed_pole_set(spec.class_id):
        func, expected = local_superpotential(spec, pole)
        fitted = laurent_fit(func)
        for order, value in expected.items():
            worst = max(worst, abs(fitted[order] - value))
    return worst
