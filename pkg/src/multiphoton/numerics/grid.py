"""Uniform grids and sampled wavefunctions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

Representation = Literal["X1", "X2"]


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("a grid needs at least 2 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @classmethod
    def with_spacing(cls, x_min: float, x_max: float, dx: float, min_points: int = 2) -> "Grid":
        n = max(min_points, int(np.ceil((x_max - x_min) / dx)) + 1)
        return cls(float(x_min), float(x_max), n)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def to_dict(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "n_points": self.n_points}


@dataclass(frozen=True, eq=False)
class SampledWavefunction:
    """Complex amplitudes on a uniform grid in the X1- or X2-diagonal representation."""

    grid: Grid
    values: np.ndarray
    representation: Representation
    norm_residual: float = field(default=float("nan"))

    def __post_init__(self):
        if self.representation not in ("X1", "X2"):
            raise ValueError(f"unknown representation {self.representation!r}")
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise ValueError("values do not match the grid")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm2(self) -> float:
        return float(np.sum(self.density) * self.grid.dx)

    def normalized(self) -> "SampledWavefunction":
        n2 = self.norm2()
        if not n2 > 0:
            raise ValueError("cannot normalize a zero wavefunction")
        v = self.values / np.sqrt(n2)
        res = abs(np.sum(np.abs(v) ** 2) * self.grid.dx - 1.0)
        return SampledWavefunction(self.grid, v, self.representation, res)

    def phase_fixed(self) -> "SampledWavefunction":
        """Rotate the global phase so the largest-modulus sample is real positive."""
        k = int(np.argmax(np.abs(self.values)))
        ph = self.values[k] / abs(self.values[k])
        return SampledWavefunction(self.grid, self.values / ph, self.representation, self.norm_residual)

    def edge_amplitude(self) -> float:
        return float(max(abs(self.values[0]), abs(self.values[-1])))

    def overlap(self, other: "SampledWavefunction") -> complex:
        """``<self|other>`` on a shared grid."""
        if other.representation != self.representation:
            raise ValueError("representations differ")
        if other.grid != self.grid:
            from .transform import resample

            other = resample(other, self.grid)
        return complex(np.vdot(self.values, other.values) * self.grid.dx)

    def moments(self) -> tuple[float, float]:
        """Mean and variance of the density."""
        p = self.density * self.grid.dx
        total = p.sum()
        x = self.x
        mean = float(np.sum(x * p) / total)
        var = float(np.sum((x - mean) ** 2 * p) / total)
        return mean, var
