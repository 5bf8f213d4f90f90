"""Mild-solution machinery: the Duhamel bilinear operator, Picard iteration,
an integrating-factor cross-check stepper, the smallness gate, and the
weighted-norm ingredients of the uniqueness argument.

The fixed-point equation is u = G(t) u0 + B(u, u) with

    B(u, v)(t) = -int_0^t G(t - s) P div(u (x) v)(s) ds,

the sign chosen so the fixed point solves the momentum equation.  Time
integrals are trapezoidal on the uniform quadrature grid; since the grid is
uniform the running Duhamel integral satisfies the exact recursion
I_i = G(h) I_{i-1} + (h/2)(G(h) w_{i-1} + w_i), which this module uses.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .initial_data import random_solenoidal
from .littlewood_paley import (
    DyadicPartition,
    FieldSeries,
    TimeGrid,
    besov_norm,
    block_lp,
    ep_norm,
    get_partition,
    hybrid_norm,
)
from .semigroup import PropagatorSpec, series_propagate
from .spectral import (
    FlowParams,
    Grid,
    SpectralField,
    advection_flux,
    divergence_defect,
    gradient_l2_sq,
    l2_spectral,
    lp_norm,
)


def _check_series_pair(u: FieldSeries, v: FieldSeries, tgrid: TimeGrid):
    if u.grid != v.grid:
        raise ValueError("series live on different grids")
    nodes = tgrid.nodes
    if len(u) != len(nodes) or len(v) != len(nodes):
        raise ValueError("series length does not match the quadrature grid")
    if not (np.allclose(u.times, nodes) and np.allclose(v.times, nodes)):
        raise ValueError("series nodes do not match the quadrature grid")


def duhamel_bilinear(u: FieldSeries, v: FieldSeries, tgrid: TimeGrid,
                     params: FlowParams, check: bool = True) -> FieldSeries:
    """B(u, v) on the quadrature grid; bilinear, divergence free, B(.)(0) = 0."""
    _check_series_pair(u, v, tgrid)
    h = tgrid.dt
    gh = PropagatorSpec(u.grid, params, h)
    fluxes = [advection_flux(a, b, check=check).coeffs
              for a, b in zip(u.fields, v.fields)]
    out = [SpectralField(u.grid, np.zeros_like(fluxes[0]), 0.0)]
    acc = np.zeros_like(fluxes[0])
    for i in range(1, len(fluxes)):
        acc = gh.apply_coeffs(acc) + 0.5 * h * (gh.apply_coeffs(fluxes[i - 1]) + fluxes[i])
        out.append(SpectralField(u.grid, acc.copy(), float(tgrid.nodes[i])))
    return FieldSeries(tgrid.nodes, out)


@dataclass
class PicardReport:
    """Per-iteration diagnostics of the fixed-point construction."""

    iterate_norms: list = field(default_factory=list)
    diff_norms: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    residual: float = np.nan
    converged: bool = False
    iterations: int = 0
    eta_observed: float = 0.0


def picard_solve(u0: SpectralField, tgrid: TimeGrid, params: FlowParams,
                 p=2, tol: float = 1e-8, max_iter: int = 25,
                 omega: float | None = None,
                 part: DyadicPartition | None = None):
    """Picard iteration u^{n+1} = G(t)u0 + B(u^n, u^n).

    Stops when the successive difference in the E_p norm drops below tol,
    or flags divergence after the difference grows twice in a row.
    Returns (solution series, PicardReport).
    """
    if divergence_defect(u0) > 1e-10:
        raise ValueError("input not solenoidal")
    if not u0.mean_free:
        raise ValueError("Picard iteration requires mean-free data")
    omega = params.omega if omega is None else omega
    part = part or get_partition(u0.grid)
    report = PicardReport()

    linear = series_propagate(u0, tgrid, params)
    current = linear
    growth_count = 0
    prev_d = None
    for it in range(1, max_iter + 1):
        report.iterations = it
        bterm = duhamel_bilinear(current, current, tgrid, params, check=False)
        nxt = FieldSeries(tgrid.nodes,
                          [a + b for a, b in zip(linear.fields, bterm.fields)])
        cur_norm = ep_norm(current, p, omega, part)
        report.iterate_norms.append(cur_norm)
        if cur_norm > 1e-14:
            report.eta_observed = max(report.eta_observed,
                                      ep_norm(bterm, p, omega, part) / cur_norm**2)
        d = ep_norm(nxt - current, p, omega, part)
        report.diff_norms.append(d)
        if prev_d is not None and prev_d > 1e-14:
            report.ratios.append(d / prev_d)
        if prev_d is not None and d > 2.0 * prev_d:
            growth_count += 1
            if growth_count >= 2:
                report.converged = False
                return nxt, report
        prev_d = d
        current = nxt
        if d < tol:
            report.converged = True
            break

    if report.converged:
        bfinal = duhamel_bilinear(current, current, tgrid, params, check=False)
        resid = FieldSeries(tgrid.nodes,
                            [c - a - b for c, a, b in
                             zip(current.fields, linear.fields, bfinal.fields)])
        report.residual = ep_norm(resid, p, omega, part)
    return current, report


def if_step_integrate(u0: SpectralField, tgrid: TimeGrid,
                      params: FlowParams) -> FieldSeries:
    """Integrating-factor Heun stepper: exact semigroup for the linear part,
    second-order explicit treatment of the nonlinearity.  Cross-validates the
    Picard construction on horizons where the latter converges."""
    if divergence_defect(u0) > 1e-10:
        raise ValueError("input not solenoidal")
    if not u0.mean_free:
        raise ValueError("stepper requires mean-free data")
    g = u0.grid
    umax = lp_norm(u0, np.inf)
    if umax > 0 and tgrid.M < tgrid.T * g.n * umax / g.L:
        warnings.warn(f"step count M={tgrid.M} below the advective resolution "
                      f"T*n*|u|_inf/L = {tgrid.T * g.n * umax / g.L:.1f}")
    h = tgrid.dt
    gh = PropagatorSpec(g, params, h)
    fields = [u0.copy()]
    cur = u0.coeffs.copy()
    for i in range(1, tgrid.M + 1):
        try:
            k1 = advection_flux(SpectralField(g, cur), SpectralField(g, cur),
                                check=False).coeffs
            pred = gh.apply_coeffs(cur + h * k1)
            k2 = advection_flux(SpectralField(g, pred), SpectralField(g, pred),
                                check=False).coeffs
        except ValueError as exc:  # overflow inside the flux transforms
            raise RuntimeError(f"non-finite state at step {i}") from exc
        cur = gh.apply_coeffs(cur + 0.5 * h * k1) + 0.5 * h * k2
        if not np.all(np.isfinite(cur)):
            raise RuntimeError(f"non-finite state at step {i}")
        fields.append(SpectralField(g, cur.copy(), float(tgrid.nodes[i])))
    return FieldSeries(tgrid.nodes, fields)


def smallness_gate(u0: SpectralField, p, params: FlowParams,
                   smallness_c: float | None = None,
                   part: DyadicPartition | None = None) -> tuple[float, bool]:
    """Compare the critical hybrid norm of the data with the smallness
    threshold; pass admits the data to the global small-solution regime."""
    value = hybrid_norm(u0, 0.5, 3.0 / p - 1.0, p, params.omega, part)
    c = params.smallness_c if smallness_c is None else smallness_c
    return value, value <= c


def tilde_inf_sobolev(u: FieldSeries, s: float = 0.5,
                      part: DyadicPartition | None = None) -> float:
    """Time-sup Sobolev norm taken per block: l^2 over j of
    2^{js} sup_t ||Delta_j u(t)||_2."""
    part = part or get_partition(u.grid)
    total = 0.0
    for j in part.js():
        sup = max(block_lp(f, j, 2, part) for f in u.fields)
        total += (2.0 ** (j * s) * sup) ** 2
    return float(np.sqrt(total))


def fp_norm(u: FieldSeries, p, omega: float,
            part: DyadicPartition | None = None) -> float:
    """Uniqueness-class norm: sup-in-time critical Sobolev part (per-block
    sup in time, l^2 over blocks with weight 2^{j/2}) plus the E_p norm."""
    part = part or get_partition(u.grid)
    return tilde_inf_sobolev(u, 0.5, part) + ep_norm(u, p, omega, part)


@dataclass(frozen=True)
class WeightSpec:
    """Parameters of the time-decay weights e_{j,T}, omega_{j,T}."""

    c_weight: float
    T: float

    def __post_init__(self):
        if self.c_weight <= 0:
            raise ValueError(f"weight constant must be positive, got {self.c_weight}")
        if self.T < 0:
            raise ValueError(f"horizon must be >= 0, got {self.T}")


# The summand e_{k,T} 2^{(j-k)/2} is below 1e-9 beyond k = j + 60, so the
# sup over k >= j is truncated there.
_WEIGHT_TAIL = 60


def weight_tables(js, spec: WeightSpec):
    """(e_{j,T}, omega_{j,T}^2) for every j in js.

    omega^2 is computed by the downward recursion
    omega_j^2 = max(e_j^2, omega_{j+1}^2 / 2), whose float operations are
    exact, so the weight inequalities hold exactly in floating point.
    """
    js = np.asarray(js, dtype=np.int64)
    k_lo = int(js.min())
    k_hi = int(js.max()) + _WEIGHT_TAIL
    ks = np.arange(k_lo, k_hi + 1)
    x = spec.c_weight * np.exp2(2.0 * ks) * spec.T
    e = -np.expm1(-x)
    w2 = np.empty_like(e)
    w2[-1] = e[-1] ** 2
    for i in range(len(ks) - 2, -1, -1):
        w2[i] = max(e[i] ** 2, 0.5 * w2[i + 1])
    sel = js - k_lo
    return e[sel], w2[sel]


def omega_weights(j: int, spec: WeightSpec) -> tuple[float, float]:
    """(e_{j,T}, omega_{j,T}) with e = 1 - exp(-c 4^j T) and
    omega_j = sup_{k >= j} e_k 2^{(j-k)/2}."""
    e, w2 = weight_tables([j], spec)
    return float(e[0]), float(np.sqrt(w2[0]))


def weighted_seminorm(v: FieldSeries, spec: WeightSpec,
                      part: DyadicPartition | None = None) -> float:
    """|| omega_{j,T} 2^{j/2} ||Delta_j v||_{L^inf_T L^2} ||_{l^inf}; vanishes
    as T -> 0 for fixed data, the key smallness mechanism of uniqueness."""
    part = part or get_partition(v.grid)
    js = list(part.js())
    _, w2 = weight_tables(js, spec)
    val = 0.0
    for j, wsq in zip(js, w2):
        sup = max(block_lp(f, j, 2, part) for f in v.fields)
        val = max(val, float(np.sqrt(wsq)) * 2.0 ** (j / 2.0) * sup)
    return val


@dataclass
class WeightedProbeResult:
    ratio: float
    lhs: float
    sup_norm_u: float
    seminorm_v: float


def weighted_bilinear_probe(u: FieldSeries, v: FieldSeries, spec: WeightSpec,
                            tgrid: TimeGrid, params: FlowParams,
                            part: DyadicPartition | None = None) -> WeightedProbeResult:
    """Measure ||B(u,v)||_{L^inf_T B^{1/2}_{2,inf}} against
    ||u||_{L^inf_T B^{1/2}_{2,inf}} times the omega-weighted seminorm of v."""
    part = part or get_partition(u.grid)
    b = duhamel_bilinear(u, v, tgrid, params, check=False)
    lhs = max(besov_norm(f, 0.5, 2, np.inf, part) for f in b.fields)
    sup_u = max(besov_norm(f, 0.5, 2, np.inf, part) for f in u.fields)
    semi_v = weighted_seminorm(v, spec, part)
    rhs = sup_u * semi_v
    if rhs == 0:
        raise ValueError("zero right side in weighted bilinear probe")
    return WeightedProbeResult(ratio=lhs / rhs, lhs=lhs,
                               sup_norm_u=sup_u, seminorm_v=semi_v)


@dataclass
class EnergyReport:
    """Discrete energy budget b(t) = ||u(t)||_2^2 + 2 nu int_0^t ||grad u||_2^2
    - ||u0||_2^2; the inequality form requires max b <= 1e-4 ||u0||_2^2."""

    times: np.ndarray
    budgets: np.ndarray
    max_budget: float
    initial_energy: float
    passed: bool


def energy_report(u: FieldSeries, params: FlowParams) -> EnergyReport:
    if len(u) == 0:
        raise ValueError("empty series")
    energy = np.array([l2_spectral(f) ** 2 for f in u.fields])
    dissip = np.array([gradient_l2_sq(f) for f in u.fields])
    dt = np.diff(u.times)
    integral = np.concatenate(([0.0], np.cumsum(0.5 * (dissip[1:] + dissip[:-1]) * dt)))
    budgets = energy + 2.0 * params.nu * integral - energy[0]
    max_budget = float(np.max(budgets))
    return EnergyReport(times=u.times, budgets=budgets, max_budget=max_budget,
                        initial_energy=float(energy[0]),
                        passed=max_budget <= 1e-4 * energy[0])


def nonlinear_energy_defect(u: SpectralField) -> float:
    """|<N(u), u>| / (||N(u)||_2 ||u||_2): the dealiased nonlinearity is
    energy neutral for divergence-free input."""
    from .spectral import nonlinear_term
    nu_field = nonlinear_term(u)
    inner = float(np.real(np.sum(nu_field.coeffs * np.conj(u.coeffs))))
    scale = l2_spectral(nu_field) * l2_spectral(u)
    return abs(inner) / scale if scale > 0 else 0.0


def bilinear_bound_probe(ensemble_size: int, p, omega: float, tgrid: TimeGrid,
                         params: FlowParams, grid: Grid, seed: int = 0,
                         band: tuple[int, int] = (0, 1), slope: float = -11.0 / 6.0,
                         part: DyadicPartition | None = None) -> float:
    """Statistical witness for the bilinear bound: the max over random
    solenoidal pairs of ||B(u,v)||_{E_p} / (||u||_{E_p} ||v||_{E_p}).

    The ratio is scale invariant, so the returned eta depends only on
    (seed, grid, band, slope, tgrid, params)."""
    if ensemble_size < 10:
        raise ValueError(f"need ensemble_size >= 10, got {ensemble_size}")
    part = part or get_partition(grid)
    eta = 0.0
    for i in range(ensemble_size):
        u0 = random_solenoidal(seed * 2 * ensemble_size + 2 * i, slope, band, grid)
        v0 = random_solenoidal(seed * 2 * ensemble_size + 2 * i + 1, slope, band, grid)
        useries = series_propagate(u0, tgrid, params)
        vseries = series_propagate(v0, tgrid, params)
        nu_norm = ep_norm(useries, p, omega, part)
        nv_norm = ep_norm(vseries, p, omega, part)
        if nu_norm < 1e-300 or nv_norm < 1e-300:
            continue
        b = duhamel_bilinear(useries, vseries, tgrid, params, check=False)
        eta = max(eta, ep_norm(b, p, omega, part) / (nu_norm * nv_norm))
    return eta
