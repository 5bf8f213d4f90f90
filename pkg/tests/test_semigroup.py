"""Stokes-Coriolis propagator: closed form, oracle, decay fits, series."""

import numpy as np
import pytest

from conftest import single_mode_field
from rotns.initial_data import random_solenoidal
from rotns.littlewood_paley import TimeGrid, block, hybrid_norm, tilde_norm
from rotns.semigroup import (
    apply_semigroup,
    decay_fit,
    mode_oracle,
    semigroup_property_check,
    series_propagate,
)
from rotns.spectral import (
    FlowParams,
    hermitian_error,
    l2_spectral,
    leray_project,
    solenoidal_error,
)


class TestClosedForm:
    def test_hand_value(self, grid16):
        # k = e3, u0 = e1, nu = 1, omega = 2, t = pi/2: angle pi, cos = -1
        u = single_mode_field(grid16, (0, 0, 1), (0.5, 0.0, 0.0))
        out = apply_semigroup(u, np.pi / 2, FlowParams(nu=1.0, omega=2.0))
        want = -np.exp(-np.pi / 2) * 0.5
        assert abs(out.coeffs[0, 0, 0, 1] - want) < 1e-14
        assert np.max(np.abs(out.coeffs[1:, 0, 0, 1])) < 1e-14

    def test_identity_at_t0(self, grid16, params):
        u = random_solenoidal(0, -1.5, (0, 1), grid16)
        out = apply_semigroup(u, 0.0, params)
        assert np.array_equal(out.coeffs, u.coeffs)

    def test_heat_reduction(self, grid16):
        heat = FlowParams(nu=0.7, omega=0.0)
        u = random_solenoidal(1, -1.5, (0, 1), grid16)
        out = apply_semigroup(u, 0.3, heat)
        manual = u.coeffs * np.exp(-0.7 * grid16.k_sq * 0.3)
        assert np.max(np.abs(out.coeffs - manual)) < 1e-12 * np.max(np.abs(u.coeffs))

    def test_rotation_isometry_per_mode(self, grid16, params):
        u = random_solenoidal(2, -1.5, (0, 1), grid16)
        t = 0.4
        out = apply_semigroup(u, t, params)
        amp0 = np.sqrt(np.sum(np.abs(u.coeffs)**2, axis=0))
        ampt = np.sqrt(np.sum(np.abs(out.coeffs)**2, axis=0))
        want = amp0 * np.exp(-params.nu * grid16.k_sq * t)
        active = amp0 > 1e-13 * np.max(amp0)
        assert np.max(np.abs(ampt[active] - want[active]) / want[active]) < 1e-12

    def test_preserves_structure(self, grid16, params):
        u = random_solenoidal(3, -1.5, (0, 1), grid16)
        out = apply_semigroup(u, 0.25, params)
        assert solenoidal_error(out) < 1e-12
        assert hermitian_error(out) < 1e-13
        assert out.mean_free

    def test_commutes_with_projection_and_blocks(self, grid16, params, part16):
        u = random_solenoidal(4, -1.5, (0, 1), grid16)
        t = 0.2
        a = leray_project(apply_semigroup(u, t, params))
        b = apply_semigroup(leray_project(u), t, params)
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12
        for j in (0, 1):
            a = block(apply_semigroup(u, t, params), j, part=part16)
            b = apply_semigroup(block(u, j, part=part16), t, params)
            assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12

    def test_negative_time_rejected(self, grid16, params):
        u = random_solenoidal(5, -1.5, (0, 1), grid16)
        with pytest.raises(ValueError):
            apply_semigroup(u, -0.1, params)

    def test_warns_on_mean(self, grid16, params):
        u = random_solenoidal(6, -1.5, (0, 1), grid16)
        u.coeffs[0, 0, 0, 0] = 1.0
        with pytest.warns(UserWarning, match="mean"):
            out = apply_semigroup(u, 0.1, params)
        assert out.coeffs[0, 0, 0, 0] == 1.0


class TestRotationFactor:
    def test_skew_symmetric_and_isometric_per_mode(self, grid16, params):
        from rotns.semigroup import PropagatorSpec
        spec = PropagatorSpec(grid16, params, 0.3)
        k1, k2, k3 = spec.khat
        rng = np.random.default_rng(0)
        for idx in ((2, 3, 1), (1, 0, 0), (5, 5, 2)):
            khat = np.array([k1[idx], k2[idx], k3[idx]])
            R = np.array([[0.0, khat[2], -khat[1]],
                          [-khat[2], 0.0, khat[0]],
                          [khat[1], -khat[0], 0.0]])
            assert np.allclose(R + R.T, 0.0)
            a = rng.standard_normal(3)
            a -= khat * (khat @ a)  # restrict to the divergence-free plane
            rotated = np.cos(0.7) * a + np.sin(0.7) * (R @ a)
            assert abs(np.linalg.norm(rotated) - np.linalg.norm(a)) < 1e-12


class TestGroupProperty:
    def test_additivity(self, grid16, params):
        u = random_solenoidal(7, -1.5, (0, 1), grid16)
        assert semigroup_property_check(u, 0.1, 0.1, params) < 1e-12

    def test_zero_time(self, grid16, params):
        u = random_solenoidal(8, -1.5, (0, 1), grid16)
        assert semigroup_property_check(u, 0.0, 0.3, params) == 0.0

    def test_random_ensemble(self, grid16, params):
        rng = np.random.default_rng(9)
        worst = 0.0
        for i in range(50):
            u = random_solenoidal(100 + i, -1.5, (0, 1), grid16)
            worst = max(worst, semigroup_property_check(
                u, rng.uniform(0, 0.5), rng.uniform(0, 0.5), params))
        assert worst < 1e-11


class TestModeOracle:
    def test_matches_closed_form_hand_case(self):
        p = FlowParams(nu=1.0, omega=2.0)
        a = mode_oracle([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], np.pi / 2, p, steps=10_000)
        want = np.array([-np.exp(-np.pi / 2), 0.0, 0.0])
        assert np.max(np.abs(a - want)) < 1e-8

    def test_heat_limit(self):
        p = FlowParams(nu=0.5, omega=0.0)
        k = np.array([1.0, 2.0, 0.0])
        a0 = np.array([2.0, -1.0, 0.7], dtype=complex)
        a0 -= k * (k @ a0) / (k @ k)
        out = mode_oracle(k, a0, 0.3, p, steps=2000)
        want = np.exp(-0.5 * (k @ k) * 0.3) * a0
        assert np.max(np.abs(out - want)) < 1e-8

    def test_time_zero(self, params):
        a0 = np.array([0.0, 1.0, 0.0], dtype=complex)
        out = mode_oracle([1.0, 0.0, 0.0], a0, 0.0, params)
        assert np.array_equal(out, a0)

    def test_rejects_bad_input(self, params):
        with pytest.raises(ValueError, match="k != 0"):
            mode_oracle([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], 0.1, params)
        with pytest.raises(ValueError, match="orthogonal"):
            mode_oracle([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], 0.1, params)
        with pytest.raises(ValueError, match="steps"):
            mode_oracle([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], 0.1, params, steps=10)

    def test_agreement_ensemble(self, grid16, params):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(10):
            k = rng.integers(-3, 4, size=3).astype(float)
            if not k.any():
                continue
            a0 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            a0 -= k * (k @ a0) / (k @ k)
            t = rng.uniform(0.2, 2.0) / (params.nu * (k @ k))
            u = single_mode_field(grid16, k, a0)
            idx = tuple(int(i) % grid16.n for i in k)
            got = apply_semigroup(u, t, params).coeffs[(slice(None),) + idx]
            ref = mode_oracle(k, a0, t, params, steps=10_000)
            worst = max(worst, np.linalg.norm(got - ref) / np.linalg.norm(ref))
        assert worst < 1e-6


class TestDecayFit:
    def test_single_mode_exact_rate(self, grid32, params):
        u = single_mode_field(grid32, (0, 2, 0), (0.5, 0.0, 0.0))
        C_fit, c_fit = decay_fit(u, 1, 2, params)
        assert abs(c_fit - params.nu) < 1e-6
        assert abs(C_fit - 1.0) < 1e-6

    def test_ring_field_rate_window(self, grid32, params):
        u = random_solenoidal(13, -11.0 / 6.0, (1, 1), grid32)
        _, c_fit = decay_fit(u, 1, 2, params)
        assert params.nu * 0.75**2 <= c_fit <= params.nu * (8.0 / 3.0)**2

    def test_lp_rate_positive(self, grid32, params):
        u = random_solenoidal(14, -11.0 / 6.0, (2, 2), grid32)
        C_fit, c_fit = decay_fit(u, 2, 4, params)
        assert c_fit > 0 and np.isfinite(C_fit)

    def test_rejects_bad_input(self, grid32, params):
        u = random_solenoidal(15, -11.0 / 6.0, (0, 2), grid32)  # too wide
        with pytest.raises(ValueError, match="ring-supported"):
            decay_fit(u, 1, 2, params)
        ring = random_solenoidal(16, -11.0 / 6.0, (1, 1), grid32)
        with pytest.raises(ValueError, match="sample times"):
            decay_fit(ring, 1, 2, params, times=[0.1, 0.2])

    def test_warns_below_rotation_scale(self, grid32):
        fast = FlowParams(nu=1.0, omega=8.0)
        ring = random_solenoidal(17, -11.0 / 6.0, (1, 1), grid32)
        with pytest.warns(UserWarning, match="omega"):
            decay_fit(ring, 1, 4, fast)


class TestSeriesPropagate:
    def test_zero_data(self, grid16, params):
        u = random_solenoidal(18, -1.5, (0, 1), grid16, amplitude=1.0)
        u.coeffs[:] = 0.0
        ser = series_propagate(u, TimeGrid(T=0.5, M=8), params)
        assert all(l2_spectral(f) == 0.0 for f in ser.fields)

    def test_heat_single_mode_exact(self, grid16):
        heat = FlowParams(nu=1.0, omega=0.0)
        u = single_mode_field(grid16, (0, 0, 2), (0.5, 0.0, 0.0))
        tg = TimeGrid(T=0.5, M=10)
        ser = series_propagate(u, tg, heat)
        for t, f in zip(tg.nodes, ser.fields):
            want = 0.5 * np.exp(-4.0 * t)
            assert abs(f.coeffs[0, 0, 0, 2] - want) < 1e-15
            assert f.time_tag == t

    def test_smoothing_estimate_q_inf(self, grid16, params):
        # sup-in-time tilde norm of the propagated series cannot exceed the
        # hybrid norm of the data (per-block monotone decay under G)
        u = random_solenoidal(19, -11.0 / 6.0, (1, 1), grid16)
        ser = series_propagate(u, TimeGrid(T=0.5, M=16), params)
        tn = tilde_norm(ser, np.inf, 0.5, -0.25, 4, params.omega)
        hn = hybrid_norm(u, 0.5, -0.25, 4, params.omega)
        assert tn <= 1.0001 * hn
