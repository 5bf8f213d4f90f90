"""Discrete periodic function spaces on the zero-mean torus.

Grids, Fourier transforms, differential multipliers, the Helmholtz/Leray
projection, the dealiased quadratic nonlinearity and L^p norms.  Everything
downstream (dyadic analysis, semigroup, solvers) is built on the two field
types defined here.

Conventions:
  * box [0, L)^3, collocation lattice x_j = j L/n
  * coeff(k) is the Fourier coefficient of e^{i k.x}, i.e. the forward
    transform is normalized by 1/n^3, so f(x) = sum_k coeff(k) e^{i k.x}
  * L^p norms use the normalized (mean) measure, so ||1||_p = 1 and
    ||f||_2^2 = sum_k |coeff(k)|^2 (Plancherel)
  * the unmatched Nyquist plane (any |k_i| = n/2) carries no amplitude
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import fftn, ifftn

DEFAULT_BOX = 2.0 * np.pi

# Relative tolerance of the divergence-free field invariant.
SOLENOIDAL_TOL = 1e-12


@dataclass(frozen=True)
class Grid:
    """Cubic collocation grid with its integer wavevector lattice.

    Wavevector labels run over {-n/2+1, ..., n/2} per axis (the Nyquist
    plane is labelled +n/2; fields never carry amplitude there), scaled by
    the fundamental wavenumber 2*pi/L.
    """

    n: int
    L: float
    ints: np.ndarray = field(compare=False, repr=False)  # (n,) integer labels
    k1: np.ndarray = field(compare=False, repr=False)    # (n,1,1) physical
    k2: np.ndarray = field(compare=False, repr=False)    # (1,n,1)
    k3: np.ndarray = field(compare=False, repr=False)    # (1,1,n)
    k_sq: np.ndarray = field(compare=False, repr=False)  # (n,n,n) |k|^2
    kmag: np.ndarray = field(compare=False, repr=False)  # (n,n,n) |k|
    nyquist: np.ndarray = field(compare=False, repr=False)  # bool, |k_i|=n/2
    dealias: np.ndarray = field(compare=False, repr=False)  # bool, kept zone

    @property
    def k_base(self) -> float:
        return 2.0 * np.pi / self.L

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    def axes(self) -> np.ndarray:
        return np.arange(self.n) * (self.L / self.n)

    def meshgrid(self):
        x = self.axes()
        return np.meshgrid(x, x, x, indexing="ij")

    @property
    def kmax(self) -> float:
        """Largest resolvable |k| off the Nyquist plane."""
        return self.k_base * (self.n / 2 - 1) * np.sqrt(3.0)

    @property
    def kmin(self) -> float:
        """Smallest nonzero |k| on the lattice."""
        return self.k_base


def make_grid(n: int, L: float = DEFAULT_BOX) -> Grid:
    """Build the periodic grid; n must be a power of two, n >= 8."""
    if n < 8 or (n & (n - 1)) != 0:
        raise ValueError(f"n not a power of two >= 8: {n}")
    if L <= 0:
        raise ValueError(f"box period must be positive, got {L}")
    ints = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
    ints[n // 2] = n // 2  # label the Nyquist plane +n/2
    base = 2.0 * np.pi / L
    k1 = (base * ints)[:, None, None]
    k2 = (base * ints)[None, :, None]
    k3 = (base * ints)[None, None, :]
    k_sq = k1**2 + k2**2 + k3**2
    kmag = np.sqrt(k_sq)
    half = n // 2
    ny1 = np.abs(ints) == half
    nyquist = ny1[:, None, None] | ny1[None, :, None] | ny1[None, None, :]
    cut = n / 3.0  # 2/3 rule: keep |k_i| <= n/3
    keep1 = np.abs(ints) <= cut
    dealias = keep1[:, None, None] & keep1[None, :, None] & keep1[None, None, :]
    return Grid(n=n, L=float(L), ints=ints, k1=k1, k2=k2, k3=k3,
                k_sq=k_sq, kmag=kmag, nyquist=nyquist, dealias=dealias)


@dataclass(frozen=True)
class FlowParams:
    """Viscosity nu > 0, rotation speed omega >= 0, smallness threshold."""

    nu: float = 1.0
    omega: float = 1.0
    smallness_c: float = 0.05

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError(f"viscosity must be positive, got {self.nu}")
        if self.omega < 0:
            raise ValueError(f"rotation speed must be >= 0, got {self.omega}")
        if self.smallness_c <= 0:
            raise ValueError(f"smallness threshold must be positive, got {self.smallness_c}")


@dataclass
class SpectralField:
    """Complex Fourier coefficients of a real field, shape (ncomp, n, n, n).

    ncomp is 3 for velocity fields and 1 for scalars.  Real fields satisfy
    the Hermitian symmetry coeff(-k) = conj(coeff(k)).
    """

    grid: Grid
    coeffs: np.ndarray
    time_tag: float = 0.0

    @property
    def ncomp(self) -> int:
        return self.coeffs.shape[0]

    @property
    def mean_free(self) -> bool:
        """True when the k = 0 coefficient vanishes to roundoff."""
        dc = np.max(np.abs(self.coeffs[:, 0, 0, 0]))
        if dc == 0.0:
            return True
        return dc <= 1e-13 * np.max(np.abs(self.coeffs))

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy(), self.time_tag)

    def zeros_like(self) -> "SpectralField":
        return SpectralField(self.grid, np.zeros_like(self.coeffs), self.time_tag)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs + other.coeffs, self.time_tag)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs - other.coeffs, self.time_tag)

    def __mul__(self, a) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * a, self.time_tag)

    __rmul__ = __mul__


@dataclass
class PhysicalField:
    """Real collocation values, shape (ncomp, n, n, n)."""

    grid: Grid
    values: np.ndarray

    @property
    def ncomp(self) -> int:
        return self.values.shape[0]


def field_from_coeffs(grid: Grid, coeffs: np.ndarray, time_tag: float = 0.0) -> SpectralField:
    """Wrap a coefficient array, forcing the Nyquist-plane invariant."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if coeffs.ndim == 3:
        coeffs = coeffs[None]
    coeffs[:, grid.nyquist] = 0.0
    return SpectralField(grid, coeffs, time_tag)


def to_spectral(f: PhysicalField) -> SpectralField:
    """Forward DFT (normalized by 1/n^3); zeroes the Nyquist plane."""
    if not np.all(np.isfinite(f.values)):
        raise ValueError("non-finite values in physical field")
    c = fftn(f.values, axes=(1, 2, 3)) / f.grid.n**3
    return field_from_coeffs(f.grid, c)


def to_physical(f: SpectralField) -> PhysicalField:
    """Inverse DFT; the imaginary residue of Hermitian input is discarded."""
    if not np.all(np.isfinite(f.coeffs)):
        raise ValueError("non-finite values in spectral field")
    v = ifftn(f.coeffs * f.grid.n**3, axes=(1, 2, 3)).real
    return PhysicalField(f.grid, np.ascontiguousarray(v))


def hermitian_error(f: SpectralField) -> float:
    """Max |coeff(-k) - conj(coeff(k))| relative to the largest coefficient."""
    c = f.coeffs
    rev = c[:, ::-1, ::-1, ::-1]
    rev = np.roll(rev, (1, 1, 1), axis=(1, 2, 3))
    scale = np.max(np.abs(c))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(c - np.conj(rev))) / scale)


def solenoidal_error(u: SpectralField) -> float:
    """Max per-mode |k . u(k)| / |u(k)| over modes with nonzero amplitude.

    This is the strict per-mode form of the divergence-free invariant; it is
    meaningful for fields whose modes are filled by per-mode arithmetic
    (projection, multipliers).  Fields assembled through global transforms
    carry transform roundoff that is relative to the field, not to each
    mode, and should be measured with divergence_defect instead.
    """
    if u.ncomp != 3:
        raise ValueError("divergence requires a 3-component field")
    g = u.grid
    dot = g.k1 * u.coeffs[0] + g.k2 * u.coeffs[1] + g.k3 * u.coeffs[2]
    amp = np.sqrt(np.abs(u.coeffs[0])**2 + np.abs(u.coeffs[1])**2 + np.abs(u.coeffs[2])**2)
    mask = amp > 0
    if not np.any(mask):
        return 0.0
    return float(np.max(np.abs(dot[mask]) / amp[mask]))


def divergence_defect(u: SpectralField) -> float:
    """Global solenoidality measure ||div u||_2 / || |k| u ||_2."""
    if u.ncomp != 3:
        raise ValueError("divergence requires a 3-component field")
    g = u.grid
    dot = g.k1 * u.coeffs[0] + g.k2 * u.coeffs[1] + g.k3 * u.coeffs[2]
    amp_sq = np.sum(np.abs(u.coeffs)**2, axis=0)
    scale = np.sqrt(np.sum(g.k_sq * amp_sq))
    if scale == 0:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(dot)**2)) / scale)


def leray_project(u: SpectralField) -> SpectralField:
    """Helmholtz projection P = I - k k^T/|k|^2, applied per mode.

    The k = 0 coefficient has no well-defined projection; it passes through
    unchanged with a warning when nonzero.
    """
    if u.ncomp != 3:
        raise ValueError("Leray projection requires a 3-component field")
    if not np.all(np.isfinite(u.coeffs)):
        raise ValueError("non-finite values in spectral field")
    if not u.mean_free:
        warnings.warn("Leray projection: nonzero mean passed through unchanged")
    g = u.grid
    ksq = g.k_sq.copy()
    ksq[0, 0, 0] = 1.0
    dot = (g.k1 * u.coeffs[0] + g.k2 * u.coeffs[1] + g.k3 * u.coeffs[2]) / ksq
    out = np.empty_like(u.coeffs)
    out[0] = u.coeffs[0] - g.k1 * dot
    out[1] = u.coeffs[1] - g.k2 * dot
    out[2] = u.coeffs[2] - g.k3 * dot
    out[:, 0, 0, 0] = u.coeffs[:, 0, 0, 0]
    return SpectralField(g, out, u.time_tag)


def derivative(u: SpectralField, axis: int) -> SpectralField:
    """Spectral partial derivative along axis 1, 2 or 3 (multiplier i k_axis)."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    g = u.grid
    k = (g.k1, g.k2, g.k3)[axis - 1]
    return SpectralField(g, 1j * k * u.coeffs, u.time_tag)


def divergence(u: SpectralField) -> SpectralField:
    """Scalar divergence field sum_i i k_i u_i(k)."""
    if u.ncomp != 3:
        raise ValueError("divergence requires a 3-component field")
    g = u.grid
    d = 1j * (g.k1 * u.coeffs[0] + g.k2 * u.coeffs[1] + g.k3 * u.coeffs[2])
    return SpectralField(g, d[None], u.time_tag)


def dealias_field(u: SpectralField) -> SpectralField:
    """Zero all modes with any |k_i| > n/3 (2/3 rule)."""
    c = u.coeffs.copy()
    c[:, ~u.grid.dealias] = 0.0
    return SpectralField(u.grid, c, u.time_tag)


def advection_flux(u: SpectralField, v: SpectralField, check: bool = True) -> SpectralField:
    """Bilinear core -P div(u (x) v), computed pseudo-spectrally.

    Both inputs are dealiased, the nine products u_j v_l are formed by
    collocation and the result is truncated by the 2/3 rule, so the retained
    modes are alias-free.  The flux convention is (div T)_l = d_j (u_j v_l).
    """
    if u.ncomp != 3 or v.ncomp != 3:
        raise ValueError("nonlinear term requires 3-component fields")
    if u.grid != v.grid:
        raise ValueError("fields live on different grids")
    if check:
        if divergence_defect(u) > 1e-10 or divergence_defect(v) > 1e-10:
            raise ValueError("input not solenoidal")
        if not (u.mean_free and v.mean_free):
            raise ValueError("nonlinear term requires mean-free input")
    g = u.grid
    uw = to_physical(dealias_field(u)).values
    vw = uw if v is u else to_physical(dealias_field(v)).values
    n3 = g.n**3
    flux = np.empty((3, g.n, g.n, g.n), dtype=np.complex128)
    for ell in range(3):
        prod = uw[0] * vw[ell]
        f0 = fftn(prod) / n3
        prod = uw[1] * vw[ell]
        f1 = fftn(prod) / n3
        prod = uw[2] * vw[ell]
        f2 = fftn(prod) / n3
        flux[ell] = 1j * (g.k1 * f0 + g.k2 * f1 + g.k3 * f2)
    flux[:, ~g.dealias] = 0.0
    out = leray_project(SpectralField(g, flux, u.time_tag))
    return SpectralField(g, -out.coeffs, u.time_tag)


def nonlinear_term(u: SpectralField) -> SpectralField:
    """N(u) = -P div(u (x) u), the mild-formulation nonlinearity.

    The sign is fixed so that u = G(t)u0 + int_0^t G(t-s) N(u)(s) ds is the
    integral form of the momentum equation.
    """
    return advection_flux(u, u)


def lp_norm(f, p) -> float:
    """L^p norm with normalized measure; the pointwise magnitude of a
    multi-component field is Euclidean."""
    if p != np.inf and p < 1:
        raise ValueError(f"p must satisfy 1 <= p <= inf, got {p}")
    if isinstance(f, SpectralField):
        f = to_physical(f)
    mag_sq = np.sum(f.values.astype(np.float64)**2, axis=0)
    if p == np.inf:
        return float(np.sqrt(np.max(mag_sq)))
    if p == 2:
        return float(np.sqrt(np.mean(mag_sq)))
    return float(np.mean(mag_sq ** (p / 2.0)) ** (1.0 / p))


def l2_spectral(f: SpectralField) -> float:
    """L^2 norm evaluated by Plancherel, sqrt(sum_k |coeff(k)|^2)."""
    return float(np.sqrt(np.sum(np.abs(f.coeffs)**2)))


def sobolev_norm(f: SpectralField, s: float) -> float:
    """Homogeneous Sobolev norm (sum_k |k|^{2s} |coeff(k)|^2)^{1/2}, k != 0."""
    w = f.grid.kmag.copy()
    w[0, 0, 0] = 1.0  # k=0 weight irrelevant for mean-free fields
    w = w ** (2.0 * s)
    w[0, 0, 0] = 0.0
    amp_sq = np.sum(np.abs(f.coeffs)**2, axis=0)
    return float(np.sqrt(np.sum(w * amp_sq)))


def gradient_l2_sq(f: SpectralField) -> float:
    """||grad f||_2^2 = sum_k |k|^2 |coeff(k)|^2 (normalized measure)."""
    amp_sq = np.sum(np.abs(f.coeffs)**2, axis=0)
    return float(np.sum(f.grid.k_sq * amp_sq))


def dyadic_rescale(u: SpectralField, m: int) -> SpectralField:
    """Spatial rescale u -> 2^m u(2^m .): mode k moves to 2^m k with
    amplitude factor 2^m.

    All active modes must satisfy |2^m k_i| < n/2 so no amplitude lands on
    or beyond the Nyquist plane.  On the fixed torus with mean-measure
    norms this map scales the homogeneous H^{1/2} norm by exactly 2^{3m/2}.
    """
    if m < 0 or int(m) != m:
        raise ValueError(f"m must be a nonnegative integer, got {m}")
    m = int(m)
    if m == 0:
        return u.copy()
    g = u.grid
    factor = 2**m
    limit = g.n // 2 - 1
    ok1 = np.abs(g.ints) * factor <= limit
    keep = ok1[:, None, None] & ok1[None, :, None] & ok1[None, None, :]
    amax = np.max(np.abs(u.coeffs))
    active = np.any(np.abs(u.coeffs) > 1e-14 * amax, axis=0) if amax > 0 else np.zeros(g.shape, bool)
    if np.any(active & ~keep):
        raise ValueError(f"support too large for rescale m={m}")
    idx = (g.ints * factor) % g.n  # injective on the kept labels
    out = np.zeros_like(u.coeffs)
    src_i, src_j, src_l = np.nonzero(keep)
    out[:, idx[src_i], idx[src_j], idx[src_l]] = factor * u.coeffs[:, src_i, src_j, src_l]
    return SpectralField(g, out, u.time_tag)
