"""Uniform grids, sampled wavefunctions, and finite-difference helpers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GridMismatch, ZeroFunction

_NODE_REL_THRESHOLD = 1e-8


@dataclass(frozen=True)
class Grid:
    """Uniform grid of n_points samples spanning [x_min, x_max] inclusive."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 8:
            raise ValueError("grid needs at least 8 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def widened(self, factor: float) -> "Grid":
        """Same spacing, domain stretched outward by `factor` on each side."""
        pad = factor * (self.x_max - self.x_min)
        extra = int(round(pad / self.h))
        return Grid(
            self.x_min - extra * self.h,
            self.x_max + extra * self.h,
            self.n_points + 2 * extra,
        )

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Build from a MIN:MAX:POINTS string."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected MIN:MAX:POINTS, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))


@dataclass
class WaveFunction:
    grid: Grid
    values: np.ndarray
    energy: float
    normalized: bool = False
    node_count: int = field(init=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if len(self.values) != self.grid.n_points:
            raise GridMismatch("sample count does not match grid")
        self.node_count = count_nodes(self.values)

    def normalize(self) -> "WaveFunction":
        """Unit L2 norm, first non-negligible lobe positive. Idempotent."""
        v = self.values
        peak = np.max(np.abs(v))
        if peak == 0.0 or not np.isfinite(peak):
            raise ZeroFunction("cannot normalize a vanishing wavefunction")
        norm = np.sqrt(np.trapezoid(v * v, dx=self.grid.h))
        if norm == 0.0:
            raise ZeroFunction("cannot normalize a vanishing wavefunction")
        v = v / norm
        big = np.nonzero(np.abs(v) > _NODE_REL_THRESHOLD * np.max(np.abs(v)))[0]
        if len(big) and v[big[0]] < 0.0:
            v = -v
        out = WaveFunction(self.grid, v, self.energy, normalized=True)
        return out


def count_nodes(values) -> int:
    """Strict sign changes, ignoring samples below a relative noise floor."""
    v = np.asarray(values, dtype=float)
    peak = np.max(np.abs(v))
    if peak == 0.0:
        return 0
    keep = v[np.abs(v) > _NODE_REL_THRESHOLD * peak]
    if len(keep) < 2:
        return 0
    return int(np.sum(np.signbit(keep[1:]) != np.signbit(keep[:-1])))


def derivative(values, h):
    """First derivative, 4th-order centered stencil (one-sided at edges)."""
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n < 7:
        raise ValueError("need at least 7 samples for the 4th-order stencil")
    d = np.empty(n)
    d[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)
    fwd = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    for i in (0, 1):
        d[i] = np.dot(fwd, v[i : i + 5])
        d[n - 1 - i] = -np.dot(fwd, v[n - 1 - i : n - 6 - i if n - 6 - i >= 0 else None : -1])
    return d


def second_derivative(values, h):
    """Second derivative, 4th-order centered stencil (one-sided at edges)."""
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n < 8:
        raise ValueError("need at least 8 samples for the 4th-order stencil")
    d = np.empty(n)
    d[2:-2] = (
        -v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2] + 16.0 * v[3:-1] - v[4:]
    ) / (12.0 * h * h)
    fwd = np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]) / (12.0 * h * h)
    for i in (0, 1):
        d[i] = np.dot(fwd, v[i : i + 6])
        d[n - 1 - i] = np.dot(fwd, v[n - 1 - i : n - 7 - i if n - 7 - i >= 0 else None : -1])
    return d
