"""Dispersion moments, uncertainty floors, and the local-energy scan."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import random_smooth_signal
from frwt.errors import (
    InadmissibleWavelet,
    InvalidAnglePair,
    TailDominated,
    ThetaAtBoundary,
)
from frwt.grid import Grid, SampledSignal, axis_centered, sample
from frwt.scales import log_scale_grid
from frwt.uncertainty import (
    MomentSpec,
    UncertaintyReport,
    dispersion,
    heisenberg_two_domain,
    heisenberg_cfrwt,
    lemma_moment_identity_check,
    restricted_energy_identity_check,
    local_uncertainty_scan,
)
from frwt.wavelets import get_wavelet

HALF_PI = math.pi / 2
SQRT_PI_HALF = 0.8862269254527580
QUARTER_PI = 0.7853981633974483

MEX = get_wavelet("mexican_hat")
GAUSS_WAVELET = get_wavelet("gaussian")


# ------------------------------------------------------------------
# dispersion


def test_dispersion_gaussian_closed_form(gaussian_256):
    # second moment of exp(-t^2): sqrt(pi)/2
    assert dispersion(gaussian_256, 1.0) == pytest.approx(SQRT_PI_HALF, abs=1e-8)


def test_dispersion_zero_signal(grid_256):
    zero = sample(grid_256, lambda t: np.zeros_like(t))
    assert dispersion(zero, 1.0) == 0.0


def test_dispersion_shift_increases(grid_256, gaussian_256):
    shifted = sample(grid_256, lambda t: np.exp(-((t - 1.2) ** 2) / 2))
    assert dispersion(shifted, 1.0) > dispersion(gaussian_256, 1.0)


def test_dispersion_theta_validation(gaussian_256):
    with pytest.raises(ValueError):
        dispersion(gaussian_256, 0.0)
    with pytest.raises(ValueError):
        dispersion(gaussian_256, 9.0)


def test_dispersion_tail_dominated(grid_256):
    # |f|^2 t^2 grows toward the window edge
    slow = sample(grid_256, lambda t: (1.0 + t**2) ** -0.4)
    with pytest.raises(TailDominated):
        dispersion(slow, 1.0)


def test_moment_spec_validation(grid_256):
    spec = MomentSpec(1.0, grid_256)
    assert spec.theta == 1.0
    with pytest.raises(ValueError):
        MomentSpec(0.0, grid_256)


# ------------------------------------------------------------------
# two-domain floor


def test_gaussian_quarter_cycle_extremal(gaussian_256):
    # the centered Gaussian meets the floor exactly at the quarter cycle
    rep = heisenberg_two_domain(gaussian_256, HALF_PI, 0.0)
    assert rep.ratio == pytest.approx(1.0, abs=1e-4)
    assert rep.lhs == pytest.approx(QUARTER_PI, abs=1e-10)
    assert rep.rhs == pytest.approx(QUARTER_PI, abs=1e-12)
    assert rep.passed


def test_degenerate_angle_pair_rejected(gaussian_256):
    with pytest.raises(InvalidAnglePair):
        heisenberg_two_domain(gaussian_256, 0.9, 0.9)
    with pytest.raises(InvalidAnglePair):
        heisenberg_two_domain(gaussian_256, 0.9, 0.9 - math.pi)


def test_shifted_gaussian_strictly_above_floor(grid_256):
    shifted = sample(grid_256, lambda t: np.exp(-((t - 1.2) ** 2) / 2))
    rep = heisenberg_two_domain(shifted, HALF_PI, 0.0)
    assert 1.5 < rep.ratio < 5.0


def test_modulated_gaussian_known_ratio(grid_256):
    # carrier 2 shifts the frequency moment to (1/2 + 4) sqrt(pi):
    # product over floor comes out at exactly 9
    mod = sample(grid_256, lambda t: np.exp(-(t**2) / 2) * np.exp(2.0j * t))
    rep = heisenberg_two_domain(mod, HALF_PI, 0.0)
    assert rep.ratio == pytest.approx(9.0, abs=1e-6)


def test_random_fixture_suite_respects_floor(grid_256):
    rng = np.random.default_rng(42)
    for seed in range(20):
        f = random_smooth_signal(grid_256, seed)
        while True:
            a, b = rng.uniform(0.3, 2.8, 2)
            if abs(math.sin(a - b)) > 0.2:
                break
        rep = heisenberg_two_domain(f, a, b)
        assert rep.ratio >= 1.0 - 1e-3, (seed, a, b, rep.ratio)


def test_scaling_leaves_ratio_invariant(grid_256):
    f = random_smooth_signal(grid_256, 3)
    g = SampledSignal(f.grid, 3.0 * f.values)
    r1 = heisenberg_two_domain(f, 1.1, 0.2)
    r2 = heisenberg_two_domain(g, 1.1, 0.2)
    # both sides scale by |3|^4 = 81
    assert r2.lhs == pytest.approx(81.0 * r1.lhs, rel=1e-12)
    assert r2.rhs == pytest.approx(81.0 * r1.rhs, rel=1e-12)
    assert r2.ratio == pytest.approx(r1.ratio, rel=1e-10)


def test_report_rejects_negative_sides():
    with pytest.raises(ValueError):
        UncertaintyReport(-1.0, 1.0, -1.0, 0.9, 0.0, False, {})


# ------------------------------------------------------------------
# coefficient-field floor


@pytest.fixture(scope="module")
def scales_wide():
    return log_scale_grid(2.0**-4, 2.0**4, 64, signs="both")


@pytest.fixture(scope="module")
def gabor():
    grid = Grid((axis_centered(0.0625, 256),))
    return sample(grid, lambda t: np.exp(-((t - 0.5) ** 2) / (2 * 0.4**2)) * np.exp(3.0j * t))


def test_cfrwt_heisenberg_gabor(gabor, scales_wide):
    rep = heisenberg_cfrwt(gabor, MEX, 0.9, 0.9 - HALF_PI, scales_wide)
    assert rep.passed
    # floor is extremely loose for a generic wavelet; the chirp in b
    # spreads the beta-spectrum far beyond the minimizer
    assert 100.0 < rep.ratio < 250.0
    assert rep.details["raw_ratio"] > 1.0
    assert 0.9 < rep.details["identity_ratio"] < 1.1


def test_cfrwt_heisenberg_gaussian_signal(gaussian_256, scales_wide):
    rep = heisenberg_cfrwt(gaussian_256, MEX, 0.9, 0.9 - HALF_PI, scales_wide)
    assert rep.passed
    assert 5.0 < rep.ratio < 30.0


def test_cfrwt_heisenberg_gates_admissibility(gaussian_256, scales_wide):
    with pytest.raises(InadmissibleWavelet):
        heisenberg_cfrwt(gaussian_256, GAUSS_WAVELET, 0.9, 0.9 - HALF_PI, scales_wide)


def test_cfrwt_heisenberg_angle_gap(gaussian_256, scales_wide):
    with pytest.raises(InvalidAnglePair):
        heisenberg_cfrwt(gaussian_256, MEX, 0.9, 0.9, scales_wide)


def test_moment_identity_nested_ranges(gabor):
    # truncation loses nonnegative mass: ratio climbs toward 1 from below
    ratios = []
    for amin, amax, cells in [(0.25, 4.0, 32), (0.125, 8.0, 48), (2.0**-4, 2.0**4, 64)]:
        sg = log_scale_grid(amin, amax, cells, signs="both")
        ratios.append(lemma_moment_identity_check(gabor, MEX, 0.9, sg).ratio)
    assert ratios[0] < ratios[1] < ratios[2] < 1.0
    assert ratios[0] == pytest.approx(0.562280, abs=1e-3)
    assert ratios[1] == pytest.approx(0.927022, abs=1e-3)
    assert ratios[2] == pytest.approx(0.994102, abs=1e-3)
    assert abs(ratios[2] - 1.0) <= 0.05


def test_restricted_energy_identity(gabor, scales_wide):
    for center, radius, expect in [
        ((0.0,), 2.0, 0.964200),
        ((2.5,), 1.5, 0.998578),
        ((0.0,), 6.0, 0.986169),
    ]:
        rep = restricted_energy_identity_check(gabor, MEX, 0.9, scales_wide, center, radius)
        assert rep.passed
        assert rep.ratio == pytest.approx(expect, abs=1e-3)
        assert rep.details["radius"] == radius


def test_restricted_energy_ball_validation(gabor, scales_wide):
    with pytest.raises(ValueError):
        restricted_energy_identity_check(gabor, MEX, 0.9, scales_wide, (0.0,), -1.0)
    with pytest.raises(ValueError):
        # ball far outside the spectral window holds no samples
        restricted_energy_identity_check(gabor, MEX, 0.9, scales_wide, (300.0,), 0.01)


# ------------------------------------------------------------------
# local scan


@pytest.fixture(scope="module")
def wide_grid():
    return Grid((axis_centered(0.0625, 2048),))


def _dilates(wide_grid, count):
    def one(s):
        return sample(wide_grid, lambda t: s**-0.5 * np.exp(-((t / s) ** 2) / 2))

    return [one(float(s)) for s in np.exp2(np.linspace(-3, 3, count))]


def _balls(count):
    return [((0.0,), float(r)) for r in np.exp2(np.linspace(-3, 2, count))]


@pytest.mark.parametrize(
    "theta,slope_cap,a_hat_band",
    [(0.25, 0.6, (0.85, 0.95)), (0.4, 0.9, (0.87, 0.98))],
)
def test_local_scan_envelope(wide_grid, theta, slope_cap, a_hat_band):
    # dilated Gaussians saturate the measure exponent of the bound
    rep = local_uncertainty_scan(_dilates(wide_grid, 13), HALF_PI, 0.0, theta, _balls(11))
    assert rep.branch == "subcritical"
    assert rep.envelope_slope <= slope_cap
    assert a_hat_band[0] < rep.a_hat < a_hat_band[1]


@pytest.mark.parametrize("theta", [0.25, 0.4])
def test_local_scan_refinement_stable(wide_grid, theta):
    coarse = local_uncertainty_scan(_dilates(wide_grid, 13), HALF_PI, 0.0, theta, _balls(11))
    fine = local_uncertainty_scan(_dilates(wide_grid, 25), HALF_PI, 0.0, theta, _balls(21))
    # refinements are supersets: the supremum can only grow, and by
    # little once the family is rich enough
    assert coarse.a_hat <= fine.a_hat <= 1.1 * coarse.a_hat


def test_local_scan_supercritical_branch(wide_grid):
    rep = local_uncertainty_scan(_dilates(wide_grid, 13), HALF_PI, 0.0, 1.5, _balls(11))
    assert rep.branch == "supercritical"
    assert 0.9 < rep.envelope_slope < 1.2
    assert rep.a_hat <= 1.0


def test_local_scan_theta_boundary(wide_grid):
    with pytest.raises(ThetaAtBoundary):
        local_uncertainty_scan(_dilates(wide_grid, 3), HALF_PI, 0.0, 0.5, _balls(3))


def test_local_scan_validation(wide_grid):
    fam = _dilates(wide_grid, 3)
    with pytest.raises(ValueError):
        local_uncertainty_scan([], HALF_PI, 0.0, 0.25, _balls(3))
    with pytest.raises(ValueError):
        local_uncertainty_scan(fam, HALF_PI, 0.0, 0.25, [])
    with pytest.raises(ValueError):
        local_uncertainty_scan(fam, HALF_PI, 0.0, 9.0, _balls(3))
    with pytest.raises(ValueError):
        local_uncertainty_scan(fam, HALF_PI, 0.0, 0.25, [((0.0,), 0.0)])
    with pytest.raises(InvalidAnglePair):
        local_uncertainty_scan(fam, HALF_PI, HALF_PI, 0.25, _balls(3))
