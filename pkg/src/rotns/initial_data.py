"""Constructors for oscillating, modulated and random solenoidal fields.

The Schwartz envelope of the continuum construction is replaced by a
periodized Gaussian; the oscillation wavelength is restricted to 1/m for
integer m so the data is exactly periodic on the box.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .spectral import (
    Grid,
    PhysicalField,
    SpectralField,
    derivative,
    field_from_coeffs,
    l2_spectral,
    leray_project,
    to_physical,
    to_spectral,
)

# Number of periodic images summed per axis when sampling the envelope.
_WRAP_IMAGES = 3


@dataclass(frozen=True)
class EnvelopeSpec:
    """Gaussian envelope: amplitude * exp(-|x - center|^2 / (2 sigma^2)) with
    sigma = width / 2.5.

    width <= L/4 caps the periodization wrap at exp(-12.5) ~ 4e-6 of the
    peak; the width is kept this generous so the spectral bump of modulated
    data is narrow enough to sit inside one dyadic block at desk scale.
    """

    width: float
    center: tuple[float, float, float] | None = None
    amplitude: float = 1.0
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind != "gaussian":
            raise ValueError(f"unsupported envelope kind {self.kind!r}")
        if self.width <= 0:
            raise ValueError(f"envelope width must be positive, got {self.width}")


def envelope_values(env: EnvelopeSpec, grid: Grid) -> np.ndarray:
    """Sample the periodized envelope on the collocation lattice."""
    if env.width > grid.L / 4:
        raise ValueError(f"envelope width {env.width} exceeds L/4 = {grid.L / 4}")
    center = env.center if env.center is not None else (grid.L / 2,) * 3
    x = grid.axes()
    sigma = env.width / 2.5
    axes_1d = []
    for c in center:
        acc = np.zeros_like(x)
        for img in range(-_WRAP_IMAGES, _WRAP_IMAGES + 1):
            acc += np.exp(-0.5 * ((x - c - img * grid.L) / sigma) ** 2)
        axes_1d.append(acc)
    vals = env.amplitude * (axes_1d[0][:, None, None]
                            * axes_1d[1][None, :, None]
                            * axes_1d[2][None, None, :])
    return vals


def _check_oscillation(m: int, grid: Grid):
    if m < 1 or int(m) != m:
        raise ValueError(f"oscillation index m must be a positive integer, got {m}")
    if m > grid.n // 4:
        raise ValueError(f"oscillation m={m} too fast for n={grid.n} (need m <= n/4)")


def oscillating_vortex(m: int, env: EnvelopeSpec, grid: Grid) -> SpectralField:
    """Highly oscillating vortex data sin(m x3) (-d2 phi, d1 phi, 0).

    The oscillation multiplies only the x1/x2 derivative components, so the
    mixed partials cancel and the field is divergence free to roundoff.
    """
    _check_oscillation(m, grid)
    phi_hat = to_spectral(PhysicalField(grid, envelope_values(env, grid)[None]))
    d1 = to_physical(derivative(phi_hat, 1)).values[0]
    d2 = to_physical(derivative(phi_hat, 2)).values[0]
    x3 = grid.axes()[None, None, :]
    osc = np.sin(m * grid.k_base * x3)  # lattice mode m e3: periodic on any box
    vals = np.stack([-osc * d2, osc * d1, np.zeros(grid.shape)])
    u = to_spectral(PhysicalField(grid, vals))
    u.coeffs[:, 0, 0, 0] = 0.0
    return u


def modulated_scalar(m: int, env: EnvelopeSpec, grid: Grid) -> SpectralField:
    """Modulated envelope cos(m x1) phi(x), the real realization of the
    plane-wave-modulated Schwartz profile; spectrum concentrates near |k1| = m."""
    _check_oscillation(m, grid)
    x1 = grid.axes()[:, None, None]
    vals = np.cos(m * grid.k_base * x1) * envelope_values(env, grid)
    f = to_spectral(PhysicalField(grid, vals[None]))
    f.coeffs[:, 0, 0, 0] = 0.0
    return f


def random_solenoidal(seed: int, slope: float, band: tuple[int, int], grid: Grid,
                      amplitude: float = 1.0) -> SpectralField:
    """Reproducible random divergence-free field, spectrum shaped |k|^slope
    and supported on the annulus covering dyadic blocks [j_lo, j_hi]."""
    j_lo, j_hi = band
    if j_lo > j_hi:
        raise ValueError(f"empty band {band}")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((3,) + grid.shape) + 1j * rng.standard_normal((3,) + grid.shape)
    rev = np.roll(raw[:, ::-1, ::-1, ::-1], (1, 1, 1), axis=(1, 2, 3))
    coeffs = 0.5 * (raw + np.conj(rev))

    lo = 2.0**j_lo
    hi = (8.0 / 3.0) * 2.0**j_hi
    keep = (grid.kmag >= lo) & (grid.kmag <= hi) & ~grid.nyquist
    keep[0, 0, 0] = False
    if not np.any(keep):
        raise ValueError(f"empty band {band} on n={grid.n} grid")
    shape = np.zeros(grid.shape)
    shape[keep] = grid.kmag[keep] ** slope
    coeffs *= shape

    u = leray_project(field_from_coeffs(grid, coeffs))
    u.coeffs[:, 0, 0, 0] = 0.0
    norm = l2_spectral(u)
    if norm == 0:
        raise ValueError(f"empty band {band} after projection")
    u.coeffs *= amplitude / norm
    return u


def expected_block_energy(grid: Grid, slope: float, band: tuple[int, int],
                          weights: np.ndarray) -> float:
    """Analytic ensemble expectation of sum_k w(k)^2 |u(k)|^2 for the
    random_solenoidal construction (before normalization), used as the
    shell-count oracle: each kept mode contributes w^2 |k|^{2 slope} times
    the solenoidal trace factor 2 of the projected unit-variance vector."""
    j_lo, j_hi = band
    lo = 2.0**j_lo
    hi = (8.0 / 3.0) * 2.0**j_hi
    keep = (grid.kmag >= lo) & (grid.kmag <= hi) & ~grid.nyquist
    keep[0, 0, 0] = False
    return float(2.0 * np.sum(weights[keep] ** 2 * grid.kmag[keep] ** (2.0 * slope)))


def oscillation_sweep_condition(m: int, omega: float):
    """Warn when the oscillation scale crosses the rotation scale: the
    scaling bound is stated for epsilon = 1/m <= 1/omega."""
    if omega > 0 and 1.0 / m > 1.0 / omega:
        warnings.warn(f"oscillation m={m} slower than rotation omega={omega}; "
                      "scaling bound not guaranteed")
