"""Mother wavelet catalog and chirped daughter construction.

Mother wavelets are stored as 1-D profiles; in higher dimensions a wavelet
acts as the separable product of its profile along each axis.  A daughter
at scale vector a, position b and transform order alpha is

    |a|_p^(-1/2) psi((t - b) / a) exp(-i/2 (|t|^2 - |b|^2) cot(alpha))

with |a|_p the product of the |a_i|.  Scale components may take either
sign; zero components are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import GridTooSmall, ZeroScaleComponent
from .frft import TransformOrder, _as_order
from .grid import Grid, SampledSignal

__all__ = [
    "WaveletSpec",
    "DaughterParams",
    "CATALOG",
    "get_wavelet",
    "make_daughter",
    "wavelet_l1_norm",
    "wavelet_l2_norm",
]

# quadrature resolution for the 1-D profile integrals
_PROFILE_POINTS = 8192

MORLET_OMEGA0 = 5.0


@dataclass(frozen=True)
class WaveletSpec:
    """A named 1-D mother wavelet profile.

    spectrum holds the closed-form classical Fourier spectrum (unitary
    convention) when one is known; it is reference data for verification
    suites, never used by the transform code paths.
    """

    name: str
    profile: Callable[[np.ndarray], np.ndarray]
    support_radius: float
    spectrum: Callable[[np.ndarray], np.ndarray] | None = None

    def evaluate(self, *coords: np.ndarray) -> np.ndarray:
        """Separable n-D evaluation: product of the profile along each axis."""
        out = np.asarray(self.profile(np.asarray(coords[0], dtype=np.float64)), dtype=np.complex128)
        for c in coords[1:]:
            out = out * self.profile(np.asarray(c, dtype=np.float64))
        return out


def _mexican_hat(t: np.ndarray) -> np.ndarray:
    return (1.0 - t**2) * np.exp(-(t**2) / 2)


def _gaussian(t: np.ndarray) -> np.ndarray:
    return np.exp(-(t**2) / 2)


def _morlet(t: np.ndarray) -> np.ndarray:
    # zero-mean corrected complex Morlet
    w0 = MORLET_OMEGA0
    return math.pi**-0.25 * (np.exp(1j * w0 * t) - math.exp(-(w0**2) / 2)) * np.exp(-(t**2) / 2)


def _dog_profile(m: int) -> Callable[[np.ndarray], np.ndarray]:
    # m-th derivative of exp(-t^2/2): (-1)^m He_m(t) exp(-t^2/2)
    coeffs = [0.0] * m + [1.0]

    def profile(t: np.ndarray) -> np.ndarray:
        return (-1.0) ** m * np.polynomial.hermite_e.hermeval(t, coeffs) * np.exp(-(t**2) / 2)

    return profile


def _dog_spectrum(m: int) -> Callable[[np.ndarray], np.ndarray]:
    def spectrum(u: np.ndarray) -> np.ndarray:
        return (1j * u) ** m * np.exp(-(u**2) / 2)

    return spectrum


CATALOG: dict[str, WaveletSpec] = {
    "mexican_hat": WaveletSpec(
        "mexican_hat",
        _mexican_hat,
        support_radius=8.0,
        spectrum=lambda u: u**2 * np.exp(-(u**2) / 2),
    ),
    "morlet": WaveletSpec(
        "morlet",
        _morlet,
        support_radius=8.0,
        spectrum=lambda u: math.pi**-0.25
        * (np.exp(-((u - MORLET_OMEGA0) ** 2) / 2) - math.exp(-(MORLET_OMEGA0**2) / 2) * np.exp(-(u**2) / 2)),
    ),
    "gaussian": WaveletSpec(
        # inadmissible on purpose: nonzero mean, so the admissibility
        # integral diverges logarithmically at the origin
        "gaussian",
        _gaussian,
        support_radius=7.0,
        spectrum=lambda u: np.exp(-(u**2) / 2),
    ),
    "dog1": WaveletSpec("dog1", _dog_profile(1), support_radius=8.0, spectrum=_dog_spectrum(1)),
    "dog3": WaveletSpec("dog3", _dog_profile(3), support_radius=9.0, spectrum=_dog_spectrum(3)),
    "dog4": WaveletSpec("dog4", _dog_profile(4), support_radius=9.0, spectrum=_dog_spectrum(4)),
}


def get_wavelet(name: str) -> WaveletSpec:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown wavelet {name!r}; available: {', '.join(sorted(CATALOG))}"
        ) from None


def _profile_quadrature(psi: WaveletSpec) -> tuple[np.ndarray, np.ndarray, float]:
    r = psi.support_radius
    t = np.linspace(-r, r, _PROFILE_POINTS)
    vals = np.asarray(psi.profile(t), dtype=np.complex128)
    return t, vals, t[1] - t[0]


def wavelet_l1_norm(psi: WaveletSpec) -> float:
    t, vals, dt = _profile_quadrature(psi)
    return float(np.trapezoid(np.abs(vals), dx=dt))


def wavelet_l2_norm(psi: WaveletSpec) -> float:
    t, vals, dt = _profile_quadrature(psi)
    return float(math.sqrt(np.trapezoid(np.abs(vals) ** 2, dx=dt)))


@dataclass(frozen=True)
class DaughterParams:
    """Scale vector, position vector and transform order of one daughter."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    order: TransformOrder


def _mass_outside_fraction(psi: WaveletSpec, a: float, b: float, lo: float, hi: float) -> float:
    """Fraction of the squared profile mass of psi((x-b)/a) outside [lo, hi]."""
    t, vals, dt = _profile_quadrature(psi)
    density = np.abs(vals) ** 2
    total = np.trapezoid(density, dx=dt)
    u_lo, u_hi = sorted(((lo - b) / a, (hi - b) / a))
    inside = (t >= u_lo) & (t <= u_hi)
    if not np.any(inside):
        return 1.0
    kept = np.trapezoid(density[inside], dx=dt)
    return float(max(0.0, 1.0 - kept / total))


def make_daughter(
    psi: WaveletSpec,
    params: DaughterParams,
    grid: Grid,
    tail_tol: float | None = 1e-6,
) -> SampledSignal:
    """Sample one daughter wavelet on a grid.

    With tail_tol set, raises GridTooSmall when more than that fraction of
    the daughter's squared mass falls outside the grid along any axis.
    Pass tail_tol=None to skip the check (coefficient loops do this: a
    clipped daughter against a decaying signal is still a valid inner
    product).
    """
    order = _as_order(params.order)
    if len(params.a) != grid.ndim or len(params.b) != grid.ndim:
        raise ValueError("parameter dimensions do not match the grid")
    for a_i in params.a:
        if a_i == 0.0 or not math.isfinite(a_i):
            raise ZeroScaleComponent(f"scale component {a_i} is not usable")

    if tail_tol is not None:
        for ax, a_i, b_i in zip(grid.axes, params.a, params.b):
            spill = _mass_outside_fraction(psi, a_i, b_i, ax.start, ax.stop)
            if spill > tail_tol:
                raise GridTooSmall(
                    f"daughter at a={params.a} b={params.b} spills {spill:.2e} of its "
                    f"mass past the grid edge (tolerance {tail_tol:.1e})"
                )

    cot = order.cot
    a_abs = float(np.prod([abs(a_i) for a_i in params.a]))
    scaled = [
        (pts - b_i) / a_i
        for pts, a_i, b_i in zip(grid.axis_points(), params.a, params.b)
    ]
    mesh = np.meshgrid(*scaled, indexing="ij")
    envelope = psi.evaluate(*mesh)
    b_sq = sum(b_i * b_i for b_i in params.b)
    chirp = np.exp(-0.5j * cot * (grid.radius_sq() - b_sq))
    return SampledSignal(grid, envelope * chirp / math.sqrt(a_abs))
