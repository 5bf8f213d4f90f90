"""Verification suites: each runs a batch of numerical checks against the
quantitative structure of the theory at desk scale and writes CSV artifacts
(plus figures) to the output directory.

Suite names: partition, semigroup, oscillation, bilinear, picard, energy,
weights.  Exit code 0 when every check passes, 1 on any failure, 2 on a
configuration error (unknown suite name or invalid config).
"""

import os
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import figures as figs
from .config import SUITE_NAMES, RunConfig
from .initial_data import EnvelopeSpec, modulated_scalar, oscillating_vortex, random_solenoidal
from .littlewood_paley import (
    FieldSeries,
    TimeGrid,
    build_partition,
    check_identities,
    ep_norm,
    hybrid_norm,
    partition_residual,
)
from .littlewood_paley import bony_parts, _random_band_limited_scalar
from .reports import write_report
from .semigroup import apply_semigroup, decay_fit, mode_oracle, semigroup_property_check, series_propagate
from .solver import (
    WeightSpec,
    bilinear_bound_probe,
    duhamel_bilinear,
    energy_report,
    if_step_integrate,
    nonlinear_energy_defect,
    picard_solve,
    smallness_gate,
    tilde_inf_sobolev,
    weight_tables,
    weighted_bilinear_probe,
    weighted_seminorm,
)
from .spectral import (
    FlowParams,
    PhysicalField,
    dealias_field,
    field_from_coeffs,
    l2_spectral,
    make_grid,
    sobolev_norm,
    solenoidal_error,
    to_physical,
    to_spectral,
)

# Box sizes used by the oscillation-type checks: the modulation mode m then
# sits at relative radius ~1.62 inside a dyadic plateau for every m in the
# dyadic sweep, instead of exactly on a block boundary as with L = 2 pi.
SWEEP_KBASE = 1.62
RATIO_KBASE = 4.86


@dataclass
class Check:
    name: str
    value: float
    threshold: float | None
    passed: bool
    note: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)  # stem -> (rows, kind)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check_rows(self):
        return [{"check": c.name, "value": c.value,
                 "threshold": "" if c.threshold is None else c.threshold,
                 "passed": c.passed, "note": c.note} for c in self.checks]


def _flow(cfg: RunConfig) -> FlowParams:
    return FlowParams(nu=cfg.nu, omega=cfg.omega,
                      smallness_c=cfg.smallness_c if cfg.smallness_c else 0.05)


def _below(checks, name, value, threshold, note=""):
    checks.append(Check(name, float(value), float(threshold),
                        bool(value < threshold), note))


def _within(checks, name, value, lo, hi, note=""):
    checks.append(Check(name, float(value), None, bool(lo <= value <= hi),
                        note or f"window [{lo:g}, {hi:g}]"))


def _report(checks, name, value, note=""):
    checks.append(Check(name, float(value), None, True, note or "report only"))


def suite_partition(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("partition")
    grid = make_grid(cfg.n, cfg.L)
    part = build_partition(grid)
    _below(res.checks, "partition_of_unity", partition_residual(part), 1e-8)
    rep = check_identities(part, seed=cfg.seed)
    _below(res.checks, "block_orthogonality", rep.orthogonality_max, 1e-10)
    _below(res.checks, "paraproduct_support", rep.paraproduct_max, 1e-10)
    _report(res.checks, "same_block_product_norm", rep.same_block_norm)
    rng = np.random.default_rng(cfg.seed + 1)
    f = _random_band_limited_scalar(grid, rng)
    g = _random_band_limited_scalar(grid, rng)
    tfg, tgf, rem = bony_parts(f, g, part)
    prod = dealias_field(to_spectral(PhysicalField(
        grid, to_physical(f).values * to_physical(g).values)))
    errn = l2_spectral(tfg + tgf + rem - prod) / l2_spectral(prod)
    _below(res.checks, "bony_reconstruction", errn, 1e-10)
    res.artifacts["partition"] = (res.check_rows(), "checks")
    return res


def _random_mode_samples(rng, params, count):
    """Random (k, a0, t) triples with k.a0 = 0 and t in the resolved decay
    window of the mode."""
    samples = []
    while len(samples) < count:
        k = rng.integers(-4, 5, size=3).astype(float)
        ksq = k @ k
        if ksq == 0:
            continue
        a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        a -= k * (k @ a) / ksq
        if np.linalg.norm(a) < 1e-3:
            continue
        t = rng.uniform(0.2, 2.0) / (params.nu * ksq)
        samples.append((k, a, t))
    return samples


def suite_semigroup(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("semigroup")
    grid = make_grid(cfg.n, cfg.L)
    params = _flow(cfg)
    rng = np.random.default_rng(cfg.seed)

    # closed form vs RK4 oracle on random single modes
    worst = 0.0
    for k, a0, t in _random_mode_samples(rng, params, 100):
        c = np.zeros((3,) + grid.shape, dtype=np.complex128)
        idx = tuple(int(i) % grid.n for i in np.round(k / grid.k_base))
        ridx = tuple((-int(i)) % grid.n for i in np.round(k / grid.k_base))
        for comp in range(3):
            c[(comp,) + idx] = a0[comp]
            c[(comp,) + ridx] = np.conj(a0[comp])
        u = field_from_coeffs(grid, c)
        closed = apply_semigroup(u, t, params).coeffs[(slice(None),) + idx]
        ref = mode_oracle(k, a0, t, params, steps=10_000)
        worst = max(worst, np.linalg.norm(closed - ref) / np.linalg.norm(ref))
    _below(res.checks, "oracle_agreement", worst, 1e-6, "100 random modes, RK4 1e4 steps")

    u0 = random_solenoidal(cfg.seed + 2, -11.0 / 6.0, (0, 1), grid)
    dev = max(semigroup_property_check(u0, rng.uniform(0, 0.3), rng.uniform(0, 0.3), params)
              for _ in range(50))
    _below(res.checks, "semigroup_property", dev, 1e-11, "50 random (t1,t2)")

    heat = FlowParams(nu=params.nu, omega=0.0, smallness_c=params.smallness_c)
    t = 0.37
    gu = apply_semigroup(u0, t, heat)
    manual = u0.coeffs * np.exp(-params.nu * grid.k_sq * t)
    scale = np.max(np.abs(u0.coeffs))
    _below(res.checks, "heat_reduction",
           np.max(np.abs(gu.coeffs - manual)) / scale, 1e-12)

    gu = apply_semigroup(u0, t, params)
    amp0 = np.sqrt(np.sum(np.abs(u0.coeffs)**2, axis=0))
    ampt = np.sqrt(np.sum(np.abs(gu.coeffs)**2, axis=0))
    decayed = amp0 * np.exp(-params.nu * grid.k_sq * t)
    active = amp0 > 1e-13 * np.max(amp0)
    iso = np.max(np.abs(ampt[active] - decayed[active]) / decayed[active])
    _below(res.checks, "rotation_isometry", iso, 1e-12)
    _below(res.checks, "divergence_preserved", solenoidal_error(gu), 1e-12)

    # linear energy identity on low-band data, trapezoid in time
    tg = TimeGrid(T=0.25, M=200)
    low = random_solenoidal(cfg.seed + 3, -11.0 / 6.0, (0, 0), grid)
    series = series_propagate(low, tg, params)
    er = energy_report(series, params)
    rel = np.max(np.abs(er.budgets)) / er.initial_energy
    del series
    _below(res.checks, "linear_energy_identity", rel, 1e-4)

    # decay fits (smoothing effect)
    decay_rows = []
    c_single = np.zeros((3,) + grid.shape, dtype=np.complex128)
    c_single[1, 2 % grid.n, 0, 0] = 0.5
    c_single[1, (-2) % grid.n, 0, 0] = 0.5
    single = field_from_coeffs(grid, c_single)  # |k| = 2 in block j = 1
    C_fit, c_fit = decay_fit(single, 1, 2, params)
    decay_rows.append({"lam": 2.0, "p": 2, "C_fit": C_fit, "c_fit": c_fit})
    _below(res.checks, "single_mode_rate_error", abs(c_fit - params.nu), 1e-6)
    _below(res.checks, "single_mode_prefactor_error", abs(C_fit - 1.0), 1e-6)

    ring = random_solenoidal(cfg.seed + 4, -11.0 / 6.0, (1, 1), grid)
    C_fit, c_fit = decay_fit(ring, 1, 2, params)
    decay_rows.append({"lam": 2.0, "p": 2, "C_fit": C_fit, "c_fit": c_fit})
    _within(res.checks, "ring_rate_l2", c_fit,
            0.95 * params.nu * 0.75**2, 1.05 * params.nu * (8.0 / 3.0)**2)

    lam_ok = True
    for j in range(3):  # lambda = omega, 2 omega, 4 omega (omega = 1 default)
        ringj = random_solenoidal(cfg.seed + 5 + j, -11.0 / 6.0, (j, j), grid)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            C_fit, c_fit = decay_fit(ringj, j, 4, params)
        decay_rows.append({"lam": 2.0**j, "p": 4, "C_fit": C_fit, "c_fit": c_fit})
        lam_ok = lam_ok and c_fit > 0
    res.checks.append(Check("lp_decay_positive_rates", float(lam_ok), None,
                            bool(lam_ok), "p=4, lambda in {1,2,4} x omega"))

    res.artifacts["semigroup"] = (res.check_rows(), "checks")
    res.artifacts["decay"] = (decay_rows, "decay")
    return res


def suite_oscillation(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("oscillation")
    L = 2.0 * np.pi / SWEEP_KBASE
    grid = make_grid(128, L)
    env = EnvelopeSpec(width=L / 4)
    params = _flow(cfg)
    ms = (8, 16, 32)
    eps = np.array([1.0 / (SWEEP_KBASE * m) for m in ms])
    n4, n3 = [], []
    for m in ms:
        f = modulated_scalar(m, env, grid)
        n4.append(hybrid_norm(f, 0.5, 3.0 / 4 - 1.0, 4, params.omega))
        n3.append(hybrid_norm(f, 0.5, 0.0, 3, params.omega))
        del f
    slope4 = float(np.polyfit(np.log(eps), np.log(n4), 1)[0])
    slope3 = float(np.polyfit(np.log(eps), np.log(n3), 1)[0])
    _within(res.checks, "oscillation_exponent_p4", slope4, 0.15, 0.35,
            "predicted 1 - 3/p = 0.25")
    _within(res.checks, "oscillation_exponent_p3", slope3, -0.1, 0.1,
            "borderline case, predicted 0")
    ratio = n4[1] / n4[0]
    _within(res.checks, "dyadic_step_ratio_p4", ratio,
            0.85 * 2.0**-0.25, 1.15 * 2.0**-0.25, "expected 2^{-1/4} +- 15%")
    rows = [{"epsilon": float(e), "hybrid_norm": float(v), "fitted_slope": slope4}
            for e, v in zip(eps, n4)]
    res.artifacts["oscillation"] = (rows, "sweep")
    res.artifacts["oscillation_checks"] = (res.check_rows(), "checks")
    return res


def suite_bilinear(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("bilinear")
    params = _flow(cfg)
    tg = TimeGrid(T=0.5, M=32)
    g16 = make_grid(16, cfg.L)

    u0 = random_solenoidal(cfg.seed + 10, -11.0 / 6.0, (0, 1), g16, amplitude=0.1)
    v0 = random_solenoidal(cfg.seed + 11, -11.0 / 6.0, (0, 1), g16, amplitude=0.1)
    useries = series_propagate(u0, tg, params)
    vseries = series_propagate(v0, tg, params)
    b1 = duhamel_bilinear(useries, vseries, tg, params)
    u2 = FieldSeries(tg.nodes, [2.0 * f for f in useries.fields])
    v2 = FieldSeries(tg.nodes, [2.0 * f for f in vseries.fields])
    b4 = duhamel_bilinear(u2, v2, tg, params)
    scale = max(l2_spectral(f) for f in b4.fields)
    errn = max(l2_spectral(a - 4.0 * b) for a, b in zip(b4.fields, b1.fields)) / scale
    _below(res.checks, "bilinearity_scaling", errn, 1e-12, "B(2u,2v) = 4B(u,v)")

    eta16 = bilinear_bound_probe(10, cfg.p, params.omega, tg, params, g16,
                                 seed=cfg.seed)
    g32 = make_grid(32, cfg.L)
    eta32 = bilinear_bound_probe(10, cfg.p, params.omega, tg, params, g32,
                                 seed=cfg.seed)
    _report(res.checks, "eta_16", eta16)
    _report(res.checks, "eta_32", eta32)
    drift = abs(eta32 - eta16) / eta16
    _below(res.checks, "eta_resolution_drift", drift, 0.5,
           "statistical witness, +-50%")

    viol = weight_inequality_violations(range(-20, 41),
                                        [4.0**e for e in range(-10, 3)],
                                        params.nu)
    res.checks.append(Check("weight_inequalities_exact", viol, None,
                            viol == 0, "count of violated (j, j', T) cases"))

    series = series_propagate(
        random_solenoidal(cfg.seed + 12, -11.0 / 6.0, (0, 1), g16),
        TimeGrid(T=1.0, M=64), params)
    semis = []
    for T in (1.0, 0.25, 0.0625, 0.015625):
        semis.append(weighted_seminorm(series.restrict(T),
                                       WeightSpec(c_weight=params.nu, T=T)))
    monotone = all(a > b for a, b in zip(semis, semis[1:]))
    res.checks.append(Check("weighted_seminorm_monotone", semis[-1], None,
                            monotone and semis[-1] < 0.5 * semis[0],
                            f"values {['%.3g' % s for s in semis]}"))

    worst_ratio = 0.0
    for i in range(10):
        a0 = random_solenoidal(cfg.seed + 20 + 2 * i, -11.0 / 6.0, (0, 1), g16)
        b0 = random_solenoidal(cfg.seed + 21 + 2 * i, -11.0 / 6.0, (0, 1), g16)
        pa = series_propagate(a0, tg, params)
        pb = series_propagate(b0, tg, params)
        probe = weighted_bilinear_probe(pa, pb, WeightSpec(params.nu, tg.T),
                                        tg, params)
        worst_ratio = max(worst_ratio, probe.ratio)
    ok = np.isfinite(worst_ratio) and worst_ratio > 0
    res.checks.append(Check("weighted_bilinear_ratio", worst_ratio, None,
                            bool(ok), "max over 10 random pairs"))

    res.artifacts["bilinear"] = (res.check_rows(), "checks")
    return res


def weight_inequality_violations(js, Ts, c_weight: float) -> int:
    """Count violations of the weight inequalities over a (j, j', T) grid.

    Comparisons run on omega^2 where the recursion and the dyadic scalings
    are exact float operations, so a mathematically true inequality can only
    fail by a genuine defect.
    """
    js = list(js)
    bad = 0
    for T in Ts:
        spec = WeightSpec(c_weight=c_weight, T=T)
        e, w2 = weight_tables(js, spec)
        if np.any(e**2 > w2) or np.any(w2 > 1.0):
            bad += 1
        for ai, j in enumerate(js):
            for bi, jp in enumerate(js):
                if jp <= j:
                    if w2[ai] > 2.0**(j - jp) * w2[bi]:
                        bad += 1
                if j <= jp:
                    if w2[ai] > 4.0 * w2[bi]:
                        bad += 1
    return bad


def suite_picard(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("picard")
    params = _flow(cfg)
    grid = make_grid(32, cfg.L)
    tg = TimeGrid(T=0.5, M=64)
    tol = 1e-8

    eta = bilinear_bound_probe(10, cfg.p, params.omega, tg, params, grid,
                               seed=cfg.seed)
    small_c = cfg.smallness_c if cfg.smallness_c else 0.05 / eta
    _report(res.checks, "eta_measured", eta)
    _report(res.checks, "smallness_threshold", small_c)

    env = EnvelopeSpec(width=grid.L / 4)
    raw = oscillating_vortex(8, env, grid)
    val, _ = smallness_gate(raw, cfg.p, params, smallness_c=small_c)
    u0 = (0.9 * small_c / val) * raw
    gate_val, gate_ok = smallness_gate(u0, cfg.p, params, smallness_c=small_c)
    res.checks.append(Check("smallness_gate", gate_val, small_c, gate_ok,
                            "oscillating data admitted"))

    linear = series_propagate(u0, tg, params)
    gnorm = ep_norm(linear, cfg.p, params.omega)
    cond = 4.0 * eta * gnorm
    _below(res.checks, "contraction_condition", cond, 0.75, "4 eta ||G u0||")
    del linear

    sol, rep = picard_solve(u0, tg, params, p=cfg.p, tol=tol)
    res.checks.append(Check("picard_converged", float(rep.converged), None,
                            rep.converged, f"{rep.iterations} iterations"))
    max_ratio = max(rep.ratios) if rep.ratios else 0.0
    _below(res.checks, "contraction_ratio", max_ratio, 0.5)
    _below(res.checks, "fixed_point_residual", rep.residual, 2.0 * tol)
    del sol

    usmall = 8e-3 * u0
    sol_s, rep_s = picard_solve(usmall, tg, params, p=cfg.p, tol=tol)
    ifs = if_step_integrate(usmall, tg, params)
    diff = FieldSeries(tg.nodes, [a - b for a, b in zip(sol_s.fields, ifs.fields)])
    _below(res.checks, "solver_consistency", tilde_inf_sobolev(diff), 1e-7,
           "Picard vs integrating factor")
    del sol_s, ifs, diff

    ubig = (10.0 / cond) * u0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, rep_big = picard_solve(ubig, tg, params, p=cfg.p, tol=tol, max_iter=12)
    res.checks.append(Check("large_data_flagged", float(not rep_big.converged),
                            None, not rep_big.converged,
                            "4 eta ||G u0|| ~ 10 diverges"))

    # Oscillating data carries a Sobolev norm an order of magnitude above
    # the hybrid norm the gate actually sees: large data can be admitted.
    Lr = 2.0 * np.pi / RATIO_KBASE
    gr = make_grid(128, Lr)
    ur = oscillating_vortex(32, EnvelopeSpec(width=Lr / 4), gr)
    ratio = sobolev_norm(ur, 0.5) / hybrid_norm(ur, 0.5, 3.0 / 4 - 1.0, 4,
                                                params.omega)
    del ur
    res.checks.append(Check("sobolev_vs_hybrid_ratio", ratio, None,
                            ratio >= 10.0, "m=32 oscillating data, >= 10x"))

    rows = [{"iteration": i + 1,
             "iterate_norm": rep.iterate_norms[i],
             "diff_norm": rep.diff_norms[i],
             "ratio": rep.ratios[i - 1] if 0 < i <= len(rep.ratios) else ""}
            for i in range(len(rep.diff_norms))]
    res.artifacts["picard"] = (rows, "picard")
    res.artifacts["picard_checks"] = (res.check_rows(), "checks")
    return res


def suite_energy(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("energy")
    params = _flow(cfg)
    grid = make_grid(32, cfg.L)
    tg = TimeGrid(T=1.0, M=256)
    u0 = random_solenoidal(cfg.seed + 7, -11.0 / 6.0, (0, 0), grid, amplitude=0.3)
    _below(res.checks, "nonlinear_energy_neutrality",
           nonlinear_energy_defect(u0), 1e-10)
    series = if_step_integrate(u0, tg, params)
    er = energy_report(series, params)
    _below(res.checks, "energy_budget", er.max_budget / er.initial_energy, 1e-4,
           "relative budget violation, T=1, 32^3")
    mid = series.fields[len(series) // 2]
    _below(res.checks, "nonlinear_energy_neutrality_mid",
           nonlinear_energy_defect(dealias_field(mid)), 1e-10)

    part_rows = []
    stride = 8
    for i in range(0, len(series), stride):
        f = series.fields[i]
        part_rows.append({
            "t": float(series.times[i]),
            "l2": l2_spectral(f),
            "h12": sobolev_norm(f, 0.5),
            "hybrid": hybrid_norm(f, cfg.s, cfg.sigma_eff, cfg.p, params.omega),
            "energy_budget": float(er.budgets[i]),
        })
    res.artifacts["energy"] = (part_rows, "history")
    res.artifacts["energy_checks"] = (res.check_rows(), "checks")
    return res


def suite_weights(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("weights")
    e, w = _weights_pair(0, 1.0, np.log(2.0))
    _below(res.checks, "hand_value_e", abs(e - 0.5), 1e-14, "e_{0,ln2} = 1/2")
    _below(res.checks, "hand_value_omega",
           abs(w - (1 - 2.0**-4) * 2.0**-0.5), 1e-14,
           "omega_{0,ln2} = (15/16)/sqrt(2)")
    e_inf, w_inf = _weights_pair(3, cfg.nu, np.inf)
    res.checks.append(Check("saturation_at_large_T",
                            abs(e_inf - 1.0) + abs(w_inf - 1.0), 0.0,
                            e_inf == 1.0 and w_inf == 1.0, "(e, omega) -> (1, 1)"))
    e0, w0 = _weights_pair(3, cfg.nu, 0.0)
    res.checks.append(Check("vanishing_at_T_zero", e0 + w0, 0.0,
                            e0 == 0.0 and w0 == 0.0, "(e, omega) = (0, 0)"))

    js = list(range(-20, 41))
    Ts = [4.0**e for e in range(-10, 3)]
    viol = weight_inequality_violations(js, Ts, cfg.nu)
    res.checks.append(Check("weight_inequalities_exact", viol, None, viol == 0,
                            "j, j' in [-20, 40], T log grid"))

    rows = []
    for T in (1.0, 0.25, 0.0625, 0.015625):
        e_arr, w2_arr = weight_tables(js, WeightSpec(c_weight=cfg.nu, T=T))
        for j, ej, w2j in zip(js, e_arr, w2_arr):
            rows.append({"j": j, "T": T, "e_jT": float(ej),
                         "omega_jT": float(np.sqrt(w2j))})
    res.artifacts["weights"] = (rows, "weights")
    res.artifacts["weights_checks"] = (res.check_rows(), "checks")
    return res


def _weights_pair(j, c, T):
    e, w2 = weight_tables([j], WeightSpec(c_weight=c, T=T))
    return float(e[0]), float(np.sqrt(w2[0]))


_SUITES = {
    "partition": suite_partition,
    "semigroup": suite_semigroup,
    "oscillation": suite_oscillation,
    "bilinear": suite_bilinear,
    "picard": suite_picard,
    "energy": suite_energy,
    "weights": suite_weights,
}

_FIGURE_SAVERS = {
    "checks": figs.save_check_values,
    "sweep": figs.save_sweep,
    "picard": figs.save_picard,
    "decay": figs.save_decay,
    "weights": figs.save_weights,
    "history": figs.save_norm_history,
}


def run_suite(name: str, cfg: RunConfig | None = None, outdir: str | None = None,
              figures: bool | None = None) -> int:
    """Run one verification suite; returns the process exit code."""
    if name not in _SUITES:
        print(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
        return 2
    cfg = cfg or RunConfig()
    outdir = outdir or cfg.output
    figures = cfg.figures if figures is None else figures
    os.makedirs(outdir, exist_ok=True)

    start = time.monotonic()
    result = _SUITES[name](cfg)
    result.elapsed = time.monotonic() - start

    for stem, (rows, kind) in result.artifacts.items():
        csv_path = os.path.join(outdir, f"{stem}.csv")
        write_report(rows, csv_path)
        if figures:
            saver = _FIGURE_SAVERS.get(kind)
            if saver is not None:
                if kind == "checks":
                    saver(rows, os.path.join(outdir, f"{stem}.png"), title=stem)
                elif kind == "history":
                    saver(rows, os.path.join(outdir, f"{stem}.png"),
                          title=f"{name} run")
                else:
                    saver(rows, os.path.join(outdir, f"{stem}.png"))

    for c in result.checks:
        status = "PASS" if c.passed else "FAIL"
        thr = "" if c.threshold is None else f" (threshold {c.threshold:g})"
        note = f"  [{c.note}]" if c.note else ""
        print(f"[{status}] {name}/{c.name}: value={c.value:.6g}{thr}{note}")
    n_ok = sum(c.passed for c in result.checks)
    print(f"suite {name}: {n_ok}/{len(result.checks)} checks passed "
          f"in {result.elapsed:.1f} s")
    if not result.passed:
        failed = ", ".join(c.name for c in result.checks if not c.passed)
        print(f"suite {name} FAILED: {failed}")
        return 1
    return 0
