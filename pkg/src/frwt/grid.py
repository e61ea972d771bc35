"""Uniform tensor-product grids, sampled signals and trapezoidal quadrature.

All transforms in this package operate on signals sampled over uniform
axis-aligned grids in one to three dimensions.  Integrals are approximated
by the tensor product of one-dimensional trapezoidal rules; reductions use
compensated summation with a fixed traversal order so results do not depend
on chunking or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import GridMismatch

__all__ = [
    "AxisSpec",
    "Grid",
    "SampledSignal",
    "axis_linspace",
    "axis_centered",
    "integrate",
    "inner_product",
    "l2_norm",
    "l1_norm",
    "sample",
    "grids_close",
]

MAX_NDIM = 3

# Relative tolerance used when deciding whether two axes coincide.
AXIS_RTOL = 1e-12


@dataclass(frozen=True)
class AxisSpec:
    """One uniform sampling axis: points start + k*step for k in range(count).

    Parameters
    ----------
    start : float
        Coordinate of the first sample.
    step : float
        Spacing between samples, strictly positive.
    count : int
        Number of samples, at least 2.
    """

    start: float
    step: float
    count: int

    def __post_init__(self) -> None:
        if not (self.step > 0.0 and math.isfinite(self.step)):
            raise ValueError(f"axis step must be positive and finite, got {self.step}")
        if self.count < 2:
            raise ValueError(f"axis needs at least 2 samples, got {self.count}")
        if not math.isfinite(self.start):
            raise ValueError("axis start must be finite")

    @property
    def stop(self) -> float:
        """Coordinate of the last sample."""
        return self.start + (self.count - 1) * self.step

    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    def weights(self) -> np.ndarray:
        """Trapezoidal weights; per-axis weights sum to (count-1)*step."""
        w = np.full(self.count, self.step)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def reflected(self) -> "AxisSpec":
        """Axis carrying the points {-t : t on this axis}, in increasing order."""
        return AxisSpec(-self.stop, self.step, self.count)

    def isclose(self, other: "AxisSpec", rtol: float = AXIS_RTOL) -> bool:
        scale = max(abs(self.start), abs(self.stop), self.step)
        return (
            self.count == other.count
            and abs(self.step - other.step) <= rtol * self.step
            and abs(self.start - other.start) <= rtol * max(scale, 1.0)
        )


def axis_linspace(lo: float, hi: float, count: int) -> AxisSpec:
    """Axis with `count` points from lo to hi inclusive."""
    if count < 2:
        raise ValueError("need at least 2 points")
    return AxisSpec(lo, (hi - lo) / (count - 1), count)


def axis_centered(step: float, count: int) -> AxisSpec:
    """Axis -floor(count/2)*step, ..., with `count` points.

    This centering keeps 0 on the grid and makes the fast transform's
    natural output grid map back onto the input grid under a round trip.
    """
    return AxisSpec(-(count // 2) * step, step, count)


@dataclass(frozen=True)
class Grid:
    """Tensor product of 1 to 3 axes."""

    axes: tuple[AxisSpec, ...]

    def __post_init__(self) -> None:
        if not (1 <= len(self.axes) <= MAX_NDIM):
            raise ValueError(f"grid dimension must be 1..{MAX_NDIM}, got {len(self.axes)}")
        object.__setattr__(self, "axes", tuple(self.axes))

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.count for ax in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def axis_points(self) -> list[np.ndarray]:
        return [ax.points() for ax in self.axes]

    def meshgrid(self) -> list[np.ndarray]:
        return list(np.meshgrid(*self.axis_points(), indexing="ij"))

    def weights(self) -> np.ndarray:
        """Full tensor-product trapezoidal weight array, shape == grid shape."""
        w = self.axes[0].weights()
        out = w
        for ax in self.axes[1:]:
            out = np.multiply.outer(out, ax.weights())
        return out

    def radius_sq(self) -> np.ndarray:
        """Array of squared Euclidean norms ||t||^2 over the grid."""
        out = np.zeros(self.shape)
        for k, pts in enumerate(self.axis_points()):
            shape = [1] * self.ndim
            shape[k] = -1
            out = out + (pts**2).reshape(shape)
        return out

    def reflected(self) -> "Grid":
        return Grid(tuple(ax.reflected() for ax in self.axes))

    def volume_element(self) -> float:
        return float(np.prod([ax.step for ax in self.axes]))


def grids_close(a: Grid, b: Grid, rtol: float = AXIS_RTOL) -> bool:
    return a.ndim == b.ndim and all(
        ax.isclose(bx, rtol) for ax, bx in zip(a.axes, b.axes)
    )


class SampledSignal:
    """Complex samples attached to a grid.

    Values are stored as a complex128 array whose shape equals the grid
    shape.  Non-finite samples are rejected at construction.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("signal contains non-finite samples")
        self.grid = grid
        self.values = values

    @property
    def ndim(self) -> int:
        return self.grid.ndim

    def copy(self) -> "SampledSignal":
        return SampledSignal(self.grid, self.values.copy())

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"SampledSignal(ndim={self.ndim}, shape={self.grid.shape})"


def sample(grid: Grid, fn: Callable[..., np.ndarray]) -> SampledSignal:
    """Evaluate fn on the grid. fn receives one coordinate array per axis."""
    return SampledSignal(grid, np.asarray(fn(*grid.meshgrid()), dtype=np.complex128))


def _compensated_complex_sum(values: np.ndarray) -> complex:
    # math.fsum is an error-free summation; applying it to the real and
    # imaginary parts separately in C order keeps the reduction deterministic.
    flat = np.ascontiguousarray(values).reshape(-1)
    return complex(math.fsum(flat.real), math.fsum(flat.imag))


def integrate(f: SampledSignal) -> complex:
    """Trapezoidal approximation of the integral of f over its grid."""
    return _compensated_complex_sum(f.grid.weights() * f.values)


def _require_same_grid(f: SampledSignal, g: SampledSignal) -> None:
    if not grids_close(f.grid, g.grid):
        raise GridMismatch("signals live on different grids")


def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """<f, g> = integral of f * conj(g); conjugate-linear in g."""
    _require_same_grid(f, g)
    return _compensated_complex_sum(f.grid.weights() * f.values * np.conj(g.values))


def l2_norm(f: SampledSignal) -> float:
    w = f.grid.weights()
    total = math.fsum((w * (f.values.real**2 + f.values.imag**2)).reshape(-1))
    return math.sqrt(total)


def l1_norm(f: SampledSignal) -> float:
    return math.fsum((f.grid.weights() * np.abs(f.values)).reshape(-1))
