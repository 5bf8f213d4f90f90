"""Oscillating, modulated and random solenoidal data generators."""

import numpy as np
import pytest

from rotns.initial_data import (
    EnvelopeSpec,
    envelope_values,
    expected_block_energy,
    modulated_scalar,
    oscillating_vortex,
    random_solenoidal,
)
from rotns.littlewood_paley import build_partition, block_lp, hybrid_norm
from rotns.spectral import (
    divergence,
    divergence_defect,
    hermitian_error,
    l2_spectral,
    make_grid,
    sobolev_norm,
    solenoidal_error,
)


class TestEnvelope:
    def test_validation(self, grid16):
        with pytest.raises(ValueError):
            EnvelopeSpec(width=0.0)
        with pytest.raises(ValueError, match="kind"):
            EnvelopeSpec(width=1.0, kind="tophat")
        wide = EnvelopeSpec(width=grid16.L)
        with pytest.raises(ValueError, match="exceeds"):
            envelope_values(wide, grid16)

    def test_positive_and_peaked(self, grid16):
        env = EnvelopeSpec(width=grid16.L / 4)
        vals = envelope_values(env, grid16)
        assert np.all(vals > 0)
        center = np.unravel_index(np.argmax(vals), vals.shape)
        assert center == (grid16.n // 2, grid16.n // 2, grid16.n // 2)

    def test_amplitude_linear(self, grid16):
        a = envelope_values(EnvelopeSpec(width=1.0, amplitude=1.0), grid16)
        b = envelope_values(EnvelopeSpec(width=1.0, amplitude=2.5), grid16)
        assert np.max(np.abs(b - 2.5 * a)) < 1e-14


class TestOscillatingVortex:
    def test_divergence_free_exactly(self, grid32):
        env = EnvelopeSpec(width=grid32.L / 4)
        u = oscillating_vortex(8, env, grid32)
        # mixed partials cancel at every output mode, even aliased ones
        assert l2_spectral(divergence(u)) < 1e-12 * sobolev_norm(u, 1.0)
        assert divergence_defect(u) < 1e-12

    def test_structure(self, grid32):
        env = EnvelopeSpec(width=grid32.L / 4)
        u = oscillating_vortex(4, env, grid32)
        assert u.mean_free
        assert hermitian_error(u) < 1e-13
        assert np.max(np.abs(u.coeffs[2])) < 1e-15  # third component zero

    def test_amplitude_linear(self, grid32):
        u1 = oscillating_vortex(4, EnvelopeSpec(width=1.0, amplitude=1.0), grid32)
        u2 = oscillating_vortex(4, EnvelopeSpec(width=1.0, amplitude=2.0), grid32)
        assert np.max(np.abs(u2.coeffs - 2.0 * u1.coeffs)) < 1e-14

    def test_oscillation_too_fast(self, grid16):
        with pytest.raises(ValueError, match="too fast"):
            oscillating_vortex(5, EnvelopeSpec(width=1.0), grid16)

    def test_scaling_ratio_dyadic_step(self):
        # hybrid norm at p = 4 drops by about 2^{-1/4} per oscillation
        # doubling; the modulation is kept off dyadic block edges
        L = 2.0 * np.pi / 1.62
        grid = make_grid(64, L)
        env = EnvelopeSpec(width=L / 4)
        norms = [hybrid_norm(oscillating_vortex(m, env, grid),
                             0.5, 3.0 / 4 - 1.0, 4, 1.0) for m in (8, 16)]
        ratio = norms[1] / norms[0]
        assert abs(ratio - 2.0**-0.25) <= 0.15 * 2.0**-0.25


class TestModulatedScalar:
    def test_spectrum_concentrates(self, grid32):
        env = EnvelopeSpec(width=grid32.L / 4)
        m = 8
        f = modulated_scalar(m, env, grid32)
        amp = np.abs(f.coeffs[0])**2
        near = np.abs(np.abs(grid32.ints[:, None, None] * np.ones(grid32.shape)) - m) <= 4
        frac = np.sum(amp[near]) / np.sum(amp)
        assert frac > 0.99

    def test_zero_amplitude(self, grid32):
        f = modulated_scalar(4, EnvelopeSpec(width=1.0, amplitude=0.0), grid32)
        assert l2_spectral(f) == 0.0

    def test_too_fast(self, grid16):
        with pytest.raises(ValueError):
            modulated_scalar(8, EnvelopeSpec(width=1.0), grid16)

    def test_low_frequency_content_negligible(self):
        # blocks below the rotation threshold see only the envelope tail
        L = 2.0 * np.pi / 1.62
        grid = make_grid(64, L)
        env = EnvelopeSpec(width=L / 4)
        f = modulated_scalar(16, env, grid)
        part = build_partition(grid)
        low = max(block_lp(f, j, 2, part) for j in part.js() if 2.0**j <= 1.0)
        assert low < 1e-6 * l2_spectral(f)


class TestRandomSolenoidal:
    def test_reproducible(self, grid16):
        a = random_solenoidal(42, -1.5, (0, 1), grid16)
        b = random_solenoidal(42, -1.5, (0, 1), grid16)
        assert np.array_equal(a.coeffs, b.coeffs)
        c = random_solenoidal(43, -1.5, (0, 1), grid16)
        assert not np.array_equal(a.coeffs, c.coeffs)

    def test_invariants(self, grid16):
        u = random_solenoidal(1, -1.5, (0, 1), grid16)
        assert solenoidal_error(u) < 1e-12
        assert hermitian_error(u) < 1e-13
        assert u.mean_free
        assert abs(l2_spectral(u) - 1.0) < 1e-13

    def test_band_support(self, grid32):
        u = random_solenoidal(2, -1.5, (1, 2), grid32)
        active = np.any(np.abs(u.coeffs) > 0, axis=0)
        assert np.all(grid32.kmag[active] >= 2.0)
        assert np.all(grid32.kmag[active] <= (8.0 / 3.0) * 4.0)

    def test_empty_band_rejected(self, grid16):
        with pytest.raises(ValueError, match="empty band"):
            random_solenoidal(0, -1.5, (1, 0), grid16)
        with pytest.raises(ValueError, match="empty band"):
            random_solenoidal(0, -1.5, (10, 10), grid16)

    def test_block_energy_against_shell_oracle(self, grid32, part32):
        # slope -11/6 gives H^{1/2}-block sums flat to within +-50% of the
        # shell-count oracle; average a few seeds to suppress sample noise
        band = (0, 3)
        slope = -11.0 / 6.0
        seeds = range(6)
        sums = np.zeros(4)
        oracle = np.zeros(4)
        for bi, j in enumerate(range(0, 4)):
            w = part32.block_weights(j) * np.sqrt(part32.grid.kmag)
            oracle[bi] = expected_block_energy(grid32, slope, band, w)
            for seed in seeds:
                u = random_solenoidal(seed, slope, band, grid32)
                sums[bi] += (2.0**(j / 2.0) * block_lp(u, j, 2, part32))**2
        sums /= len(list(seeds))
        rel = (sums / sums.sum()) / (oracle / oracle.sum())
        assert np.all((rel > 0.5) & (rel < 1.5))
        gm = np.exp(np.mean(np.log(sums)))
        assert np.all((sums / gm > 0.5) & (sums / gm < 1.5))
