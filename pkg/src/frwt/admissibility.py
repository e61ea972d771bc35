"""Admissibility constants for the chirped wavelet family.

The constant governing energy conservation of the coefficient transform
at order alpha is

    C(psi, alpha) = integral |Psi_alpha(u)|^2 / |u| du   over u != 0

where Psi_alpha is the order-alpha transform of the chirped profile
psi(t) exp(-i/2 t^2 cot(alpha)).  The code evaluates Psi_alpha by direct
kernel quadrature on a fine profile grid and integrates on a log-spaced
frequency grid whose lower cutoff is halved several times; the sequence
of truncated values decides between a finite constant and a divergence
at the origin.

Everything here is one dimensional; for separable wavelets in n
dimensions the constant is the n-th power of the per-axis value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frft import TransformOrder, _as_order, c_alpha
from .wavelets import WaveletSpec, _profile_quadrature

__all__ = [
    "FrequencyScan",
    "AdmissibilityReport",
    "fractional_spectrum",
    "admissibility_constant",
    "cross_admissibility",
]

# verdict thresholds: an integral is treated as settled when the last two
# cutoff halvings each add under 1% of the total, and as divergent when
# the per-halving increments stay near constant (or grow) while still
# contributing more than 1%
_SETTLED_FRACTION = 1e-2
_STEADY_RATIO = 0.75

_CHUNK = 256


@dataclass(frozen=True)
class FrequencyScan:
    """Log-spaced frequency quadrature for the admissibility integrals.

    The integral is first taken over |u| in [u_min, u_max], then the
    lower cutoff is halved `halvings` times to probe the origin.
    """

    u_min: float = 1e-4
    u_max: float = 32.0
    points_per_decade: int = 256
    halvings: int = 6

    def __post_init__(self) -> None:
        if not (0.0 < self.u_min < self.u_max):
            raise ValueError("need 0 < u_min < u_max")
        if self.points_per_decade < 16 or self.halvings < 3:
            raise ValueError("scan resolution too coarse to support a verdict")


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of one admissibility scan.

    value is the (possibly complex) constant over the deepest scanned
    range; moduli_value is the same integral with the integrand replaced
    by its modulus, which is what the convergence verdict is based on.
    trace lists (lower cutoff, moduli integral up to u_max) per halving.
    """

    wavelet: str
    cross_wavelet: str | None
    alpha: float
    ndim: int
    value: complex
    moduli_value: float
    verdict: str
    trace: tuple[tuple[float, float], ...]

    @property
    def admissible(self) -> bool:
        return self.verdict == "finite"


def fractional_spectrum(psi: WaveletSpec, order: TransformOrder | float, u: np.ndarray) -> np.ndarray:
    """Order-alpha kernel transform of the chirped profile at frequencies u.

    Computed as a direct quadrature of K_alpha(t, u) against
    psi(t) exp(-i/2 t^2 cot(alpha)) on a fine profile grid.
    """
    order = _as_order(order)
    cot, csc = order.cot, order.csc
    t, vals, dt = _profile_quadrature(psi)
    w = np.full(t.shape, dt)
    w[0] = w[-1] = dt / 2
    chirped = w * vals * np.exp(-0.5j * cot * t**2)
    # kernel factor exp(i/2 t^2 cot) rejoins the chirp here; kept explicit
    chirped = chirped * np.exp(0.5j * cot * t**2)
    u = np.asarray(u, dtype=np.float64)
    flat = u.reshape(-1)
    out = np.empty(flat.shape, dtype=np.complex128)
    for lo in range(0, flat.size, _CHUNK):
        chunk = flat[lo : lo + _CHUNK]
        out[lo : lo + _CHUNK] = np.exp(-1j * csc * np.outer(chunk, t)) @ chirped
    out *= c_alpha(order, 1) * np.exp(0.5j * cot * flat**2)
    return out.reshape(u.shape)


def _side_grid(scan: FrequencyScan) -> tuple[np.ndarray, list[int]]:
    """Ascending |u| grid whose knots include every halved cutoff.

    Returns the grid and, per halving k = 0..halvings, the index of the
    cutoff u_min 2^-k within it.
    """
    knots = [scan.u_min * 2.0 ** (-k) for k in range(scan.halvings, -1, -1)]
    knots.append(scan.u_max)
    pieces: list[np.ndarray] = []
    cutoff_index: dict[float, int] = {}
    pos = 0
    for lo, hi in zip(knots[:-1], knots[1:]):
        seg = np.geomspace(lo, hi, max(3, int(round(scan.points_per_decade * math.log10(hi / lo))) + 1))
        if pieces:
            seg = seg[1:]
        else:
            cutoff_index[lo] = 0
        pieces.append(seg)
        pos += seg.size
        cutoff_index[hi] = pos - 1
    us = np.concatenate(pieces)
    indices = [cutoff_index[scan.u_min * 2.0 ** (-k)] for k in range(scan.halvings + 1)]
    return us, indices


def _scan(
    phi: WaveletSpec,
    psi: WaveletSpec,
    order: TransformOrder,
    scan: FrequencyScan,
) -> tuple[list[complex], list[float], list[float]]:
    """Signed and moduli integrals over each truncated range, both signs of u."""
    us, cut_idx = _side_grid(scan)
    log_u = np.log(us)
    spec_psi_pos = fractional_spectrum(psi, order, us)
    spec_psi_neg = fractional_spectrum(psi, order, -us)
    if phi is psi:
        spec_phi_pos, spec_phi_neg = spec_psi_pos, spec_psi_neg
    else:
        spec_phi_pos = fractional_spectrum(phi, order, us)
        spec_phi_neg = fractional_spectrum(phi, order, -us)
    # du/|u| turns into d(log|u|) on each side
    signed = np.conj(spec_phi_pos) * spec_psi_pos + np.conj(spec_phi_neg) * spec_psi_neg
    moduli = np.abs(spec_phi_pos) * np.abs(spec_psi_pos) + np.abs(spec_phi_neg) * np.abs(spec_psi_neg)
    signed_vals, moduli_vals, cutoffs = [], [], []
    for k, idx in enumerate(cut_idx):
        cutoffs.append(scan.u_min * 2.0 ** (-k))
        signed_vals.append(complex(np.trapezoid(signed[idx:], x=log_u[idx:])))
        moduli_vals.append(float(np.trapezoid(moduli[idx:], x=log_u[idx:])))
    return signed_vals, moduli_vals, cutoffs


def _verdict(moduli_vals: list[float]) -> str:
    total = moduli_vals[-1]
    if total <= 0.0:
        return "indeterminate"
    inc = [b - a for a, b in zip(moduli_vals[:-1], moduli_vals[1:])]
    if inc[-1] <= _SETTLED_FRACTION * total and inc[-2] <= _SETTLED_FRACTION * total:
        return "finite"
    ratios = []
    for prev, cur in zip(inc[-4:-1], inc[-3:]):
        ratios.append(math.inf if prev <= 0.0 else cur / prev)
    if len(ratios) >= 2 and all(r >= _STEADY_RATIO for r in ratios):
        return "divergent"
    return "indeterminate"


def cross_admissibility(
    phi: WaveletSpec,
    psi: WaveletSpec,
    order: TransformOrder | float,
    scan: FrequencyScan | None = None,
    ndim: int = 1,
) -> AdmissibilityReport:
    """Cross constant of an analyzing/synthesizing wavelet pair.

    The signed value may vanish for spectrally orthogonal pairs even when
    the moduli integral is finite; callers that divide by it must check.
    """
    order = _as_order(order)
    scan = scan or FrequencyScan()
    signed_vals, moduli_vals, cutoffs = _scan(phi, psi, order, scan)
    verdict = _verdict(moduli_vals)
    return AdmissibilityReport(
        wavelet=psi.name,
        cross_wavelet=phi.name if phi is not psi else None,
        alpha=order.alpha,
        ndim=ndim,
        value=signed_vals[-1] ** ndim,
        moduli_value=moduli_vals[-1] ** ndim,
        verdict=verdict,
        trace=tuple(zip(cutoffs, moduli_vals)),
    )


def admissibility_constant(
    psi: WaveletSpec,
    order: TransformOrder | float,
    scan: FrequencyScan | None = None,
    ndim: int = 1,
) -> AdmissibilityReport:
    """Admissibility constant of a single wavelet at the given order."""
    return cross_admissibility(psi, psi, order, scan=scan, ndim=ndim)
