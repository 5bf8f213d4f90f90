"""Dyadic frequency analysis: blocks, Besov and hybrid norms, paraproducts.

The radial cutoff pair (chi, phi) is fixed explicitly so that examples are
grid independent:

    chi(r) = 1                 for r <= 1
    chi(r) = psi(4 - 3r)       for 1 < r < 4/3,  psi(s) = h(s)/(h(s)+h(1-s)),
                               h(s) = exp(-1/s) for s > 0 else 0
    chi(r) = 0                 for r >= 4/3

    phi(r) = chi(r/2) - chi(r)

phi is supported in {1 <= r <= 8/3} with an exact plateau phi = 1 on
[4/3, 2], and sum_j phi(2^{-j} r) telescopes to chi(2^{-J-1} r) - chi(2^{-j0} r),
so the dyadic partition of unity is exact (to roundoff) on every resolved
lattice shell.

Block j of a field restricts its spectrum to the annulus
{2^j <= |k| <= (8/3) 2^j}; the low-pass S_j keeps {|k| <= (4/3) 2^j}.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    Grid,
    SpectralField,
    dealias_field,
    lp_norm,
    to_physical,
    to_spectral,
    PhysicalField,
)


def _bump(s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def chi_profile(r) -> np.ndarray:
    """Radial low-pass cutoff: 1 on the unit ball, 0 outside radius 4/3."""
    r = np.asarray(r, dtype=np.float64)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    out = np.zeros_like(r)
    out[r <= 1.0] = 1.0
    mid = (r > 1.0) & (r < 4.0 / 3.0)
    s = 4.0 - 3.0 * r[mid]
    hs = _bump(s)
    out[mid] = hs / (hs + _bump(1.0 - s))
    return float(out[0]) if scalar else out


def phi_profile(r) -> np.ndarray:
    """Annular cutoff phi(r) = chi(r/2) - chi(r)."""
    r = np.asarray(r, dtype=np.float64)
    return chi_profile(r / 2.0) - chi_profile(r)


@dataclass
class DyadicPartition:
    """Sampled dyadic cutoffs for one grid, blocks j in [j_min, j_max]."""

    grid: Grid
    j_min: int
    j_max: int
    _weights: dict = field(default_factory=dict, repr=False)

    def js(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def block_weights(self, j: int, mode: str = "block") -> np.ndarray:
        key = (j, mode)
        if key not in self._weights:
            scaled = self.grid.kmag / 2.0**j
            prof = phi_profile(scaled) if mode == "block" else chi_profile(scaled)
            self._weights[key] = prof
        return self._weights[key]


def build_partition(grid: Grid) -> DyadicPartition:
    """Choose the resolved block range for a grid.

    j_min satisfies 2^{j_min} <= (3/4) k_min so the telescoping sum starts
    from an identically-zero low-pass on the lattice; j_max is taken with
    2^{j_max} >= k_max so the partition of unity closes on every resolved
    shell (this also satisfies (8/3) 2^{j_max} >= k_max).
    """
    kmin = grid.kmin
    kmax = float(np.max(grid.kmag[~grid.nyquist]))
    j_min = int(np.floor(np.log2(0.75 * kmin)))
    j_max = int(np.ceil(np.log2(kmax)))
    return DyadicPartition(grid=grid, j_min=j_min, j_max=j_max)


_partition_cache: dict = {}


def get_partition(grid: Grid) -> DyadicPartition:
    key = (grid.n, round(grid.L, 12))
    if key not in _partition_cache:
        _partition_cache[key] = build_partition(grid)
    return _partition_cache[key]


def partition_residual(part: DyadicPartition) -> float:
    """Max |sum_j phi(2^{-j}|k|) - 1| over nonzero resolved lattice modes."""
    g = part.grid
    total = np.zeros(g.shape)
    for j in part.js():
        total += part.block_weights(j)
    mask = ~g.nyquist
    mask[0, 0, 0] = False
    return float(np.max(np.abs(total[mask] - 1.0)))


def block(f: SpectralField, j: int, mode: str = "block",
          part: DyadicPartition | None = None) -> SpectralField:
    """Frequency localization: Delta_j f (mode="block") or S_j f ("lowpass")."""
    if mode not in ("block", "lowpass"):
        raise ValueError(f"mode must be 'block' or 'lowpass', got {mode!r}")
    part = part or get_partition(f.grid)
    if j < part.j_min - 1 or j > part.j_max + 1:
        warnings.warn(f"block index {j} outside resolved range "
                      f"[{part.j_min - 1}, {part.j_max + 1}]; returning zero field")
        return f.zeros_like()
    w = part.block_weights(j, mode)
    return SpectralField(f.grid, f.coeffs * w, f.time_tag)


def block_lp(f: SpectralField, j: int, p, part: DyadicPartition | None = None) -> float:
    """||Delta_j f||_{L^p}; the p = 2 case is evaluated by Plancherel."""
    part = part or get_partition(f.grid)
    w = part.block_weights(j)
    if p == 2:
        amp_sq = np.sum(np.abs(f.coeffs)**2, axis=0)
        return float(np.sqrt(np.sum(w**2 * amp_sq)))
    return lp_norm(block(f, j, part=part), p)


def _require_mean_free(f: SpectralField, what: str):
    if not f.mean_free:
        raise ValueError(f"{what} requires a mean-free field")


def besov_norm(f: SpectralField, s: float, p, q,
               part: DyadicPartition | None = None) -> float:
    """Homogeneous Besov norm || 2^{js} ||Delta_j f||_{L^p} ||_{l^q}."""
    _require_mean_free(f, "Besov norm")
    part = part or get_partition(f.grid)
    vals = np.array([2.0**(j * s) * block_lp(f, j, p, part) for j in part.js()])
    if q == np.inf:
        return float(np.max(vals)) if vals.size else 0.0
    if q < 1:
        raise ValueError(f"q must satisfy 1 <= q <= inf, got {q}")
    return float(np.sum(vals**q) ** (1.0 / q))


def hybrid_parts(f: SpectralField, s: float, sigma: float, p, omega: float,
                 part: DyadicPartition | None = None) -> tuple[float, float]:
    """Low/high pieces of the hybrid norm: blocks with 2^j <= omega are
    measured in L^2 with weight 2^{js}, the rest in L^p with weight 2^{j sigma}."""
    _require_mean_free(f, "hybrid norm")
    if omega < 0:
        raise ValueError(f"threshold omega must be >= 0, got {omega}")
    part = part or get_partition(f.grid)
    low, high = 0.0, 0.0
    for j in part.js():
        if 2.0**j <= omega:
            low = max(low, 2.0**(j * s) * block_lp(f, j, 2, part))
        else:
            high = max(high, 2.0**(j * sigma) * block_lp(f, j, p, part))
    return low, high


def hybrid_norm(f: SpectralField, s: float, sigma: float, p, omega: float,
                part: DyadicPartition | None = None) -> float:
    low, high = hybrid_parts(f, s, sigma, p, omega, part)
    return low + high


@dataclass(frozen=True)
class TimeGrid:
    """Uniform quadrature grid t_i = i T / M on [0, T]."""

    T: float
    M: int

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError(f"horizon must be positive, got {self.T}")
        if self.M < 4:
            raise ValueError(f"need at least 4 steps, got {self.M}")

    @property
    def dt(self) -> float:
        return self.T / self.M

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.M + 1) * self.dt


@dataclass
class FieldSeries:
    """Time-indexed sequence of spectral fields on one grid."""

    times: np.ndarray
    fields: list

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        if len(self.fields) != len(self.times):
            raise ValueError("times and fields length mismatch")
        if len(self.times) and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        grids = {(f.grid.n, f.grid.L) for f in self.fields}
        if len(grids) > 1:
            raise ValueError("all fields in a series must share one grid")

    def __len__(self) -> int:
        return len(self.fields)

    @property
    def grid(self) -> Grid:
        return self.fields[0].grid

    def restrict(self, tmax: float) -> "FieldSeries":
        keep = self.times <= tmax * (1 + 1e-12)
        return FieldSeries(self.times[keep], [f for f, k in zip(self.fields, keep) if k])

    def __sub__(self, other: "FieldSeries") -> "FieldSeries":
        if len(self) != len(other) or not np.allclose(self.times, other.times):
            raise ValueError("series quadrature grids differ")
        return FieldSeries(self.times, [a - b for a, b in zip(self.fields, other.fields)])


def _block_norm_history(u: FieldSeries, j: int, p, part: DyadicPartition) -> np.ndarray:
    return np.array([block_lp(f, j, p, part) for f in u.fields])


def _time_lr(a: np.ndarray, times: np.ndarray, r) -> float:
    if r == np.inf:
        return float(np.max(a))
    if r < 1:
        raise ValueError(f"r must satisfy 1 <= r <= inf, got {r}")
    return float(np.trapezoid(a**r, times) ** (1.0 / r))


def tilde_norm(u: FieldSeries, r, s: float, sigma: float, p, omega: float,
               part: DyadicPartition | None = None) -> float:
    """Time-space norm: per-block L^r in time (trapezoidal quadrature on the
    series nodes), then the hybrid sup structure over blocks."""
    if len(u) == 0:
        raise ValueError("empty series")
    part = part or get_partition(u.grid)
    low, high = 0.0, 0.0
    for j in part.js():
        if 2.0**j <= omega:
            a = _block_norm_history(u, j, 2, part)
            low = max(low, 2.0**(j * s) * _time_lr(a, u.times, r))
        else:
            a = _block_norm_history(u, j, p, part)
            high = max(high, 2.0**(j * sigma) * _time_lr(a, u.times, r))
    return low + high


def ep_norm(u: FieldSeries, p, omega: float,
            part: DyadicPartition | None = None) -> float:
    """Mild-solution working norm: sup-in-time critical regularity plus
    time-integrated smoothing, E_p = tilde(inf; 1/2, 3/p-1) + tilde(1; 5/2, 3/p+1)."""
    if not (2 <= p <= 4):
        warnings.warn(f"E_p norm is used with p in [2, 4]; got p={p}")
    part = part or get_partition(u.grid)
    return (tilde_norm(u, np.inf, 0.5, 3.0 / p - 1.0, p, omega, part)
            + tilde_norm(u, 1, 2.5, 3.0 / p + 1.0, p, omega, part))


def _band_limited(f: SpectralField) -> bool:
    return bool(np.all(f.coeffs[:, ~f.grid.dealias] == 0))


def bony_parts(f: SpectralField, g: SpectralField,
               part: DyadicPartition | None = None):
    """Paraproduct decomposition of the (dealiased) product f g.

    Returns (T_f g, T_g f, R) with T_f g = sum_j S_{j-1} f Delta_j g and
    R = sum_j Delta_j f (Delta_{j-1} + Delta_j + Delta_{j+1}) g.  For
    mean-free inputs band-limited to the dealiased zone the three parts
    reconstruct the dealiased product exactly.
    """
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    if not (_band_limited(f) and _band_limited(g)):
        raise ValueError("fields not band-limited to the dealiased zone")
    _require_mean_free(f, "Bony decomposition")
    _require_mean_free(g, "Bony decomposition")
    part = part or get_partition(f.grid)
    grid = f.grid
    n3 = grid.n**3

    def phys(sf: SpectralField) -> np.ndarray:
        return to_physical(sf).values

    js = list(part.js())
    df = {j: phys(block(f, j, part=part)) for j in js}
    dg = {j: phys(block(g, j, part=part)) for j in js}
    sf_low = {j: phys(block(f, j - 1, "lowpass", part)) for j in js}
    sg_low = {j: phys(block(g, j - 1, "lowpass", part)) for j in js}

    tfg = np.zeros((f.ncomp, grid.n, grid.n, grid.n))
    tgf = np.zeros_like(tfg)
    rem = np.zeros_like(tfg)
    for j in js:
        tfg += sf_low[j] * dg[j]
        tgf += sg_low[j] * df[j]
        tilde = dg[j].copy()
        if j - 1 in dg:
            tilde += dg[j - 1]
        if j + 1 in dg:
            tilde += dg[j + 1]
        rem += df[j] * tilde

    def wrap(vals: np.ndarray) -> SpectralField:
        return dealias_field(to_spectral(PhysicalField(grid, vals)))

    return wrap(tfg), wrap(tgf), wrap(rem)


@dataclass
class IdentityReport:
    """Max violations of the block-support identities on random fields."""

    orthogonality_max: float
    paraproduct_max: float
    same_block_norm: float

    @property
    def passed(self) -> bool:
        return self.orthogonality_max < 1e-12 and self.paraproduct_max < 1e-10


def _random_band_limited_scalar(grid: Grid, rng: np.random.Generator) -> SpectralField:
    vals = rng.standard_normal(grid.shape)
    f = dealias_field(to_spectral(PhysicalField(grid, vals[None])))
    f.coeffs[:, 0, 0, 0] = 0.0
    norm = np.sqrt(np.sum(np.abs(f.coeffs)**2))
    f.coeffs /= norm
    return f


def check_identities(part: DyadicPartition, seed: int = 0) -> IdentityReport:
    """Numerically verify the almost-orthogonality of blocks.

    Delta_j Delta_k f vanishes for |j-k| >= 2 (disjoint annuli) and
    Delta_j(S_{k-1} f Delta_k g) vanishes for |j-k| >= 5 (support
    arithmetic), on unit-norm random band-limited fields, with products
    dealiased so the support bookkeeping is exact.
    """
    grid = part.grid
    rng = np.random.default_rng(seed)
    f = _random_band_limited_scalar(grid, rng)
    g = _random_band_limited_scalar(grid, rng)
    js = list(part.js())

    orth = 0.0
    for j in js:
        wj = part.block_weights(j)
        for k in js:
            if abs(j - k) >= 2:
                wk = part.block_weights(k)
                amp_sq = np.sum(np.abs(f.coeffs)**2, axis=0)
                orth = max(orth, float(np.sqrt(np.sum((wj * wk)**2 * amp_sq))))

    para = 0.0
    same = 0.0
    for k in js:
        sk = to_physical(block(f, k - 1, "lowpass", part)).values
        dk = to_physical(block(g, k, part=part)).values
        prod = dealias_field(to_spectral(PhysicalField(grid, sk * dk)))
        for j in js:
            if abs(j - k) >= 5:
                para = max(para, block_lp(prod, j, 2, part))
            elif j == k:
                same = max(same, block_lp(prod, j, 2, part))
    return IdentityReport(orthogonality_max=orth, paraproduct_max=para,
                          same_block_norm=same)


def bernstein_ratio(f: SpectralField, j: int, p, q, gamma: tuple[int, int, int],
                    part: DyadicPartition | None = None) -> float:
    """Observed constant in Bernstein's inequality for one block:
    ||d^gamma Delta_j f||_{L^q} / (2^{j|gamma| + 3j(1/p - 1/q)} ||Delta_j f||_{L^p})."""
    if not (1 <= p <= q):
        raise ValueError(f"need 1 <= p <= q, got p={p}, q={q}")
    part = part or get_partition(f.grid)
    bf = block(f, j, part=part)
    denom_norm = block_lp(f, j, p, part)
    if denom_norm == 0:
        raise ValueError(f"zero block j={j}")
    g = f.grid
    mult = (1j * g.k1) ** gamma[0] * (1j * g.k2) ** gamma[1] * (1j * g.k3) ** gamma[2]
    deriv = SpectralField(g, bf.coeffs * mult, f.time_tag)
    order = sum(gamma)
    inv_p = 0.0 if p == np.inf else 1.0 / p
    inv_q = 0.0 if q == np.inf else 1.0 / q
    scale = 2.0 ** (j * order + 3.0 * j * (inv_p - inv_q))
    return lp_norm(deriv, q) / (scale * denom_norm)
