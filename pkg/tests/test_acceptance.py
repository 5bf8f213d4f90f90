"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

All checks run at desk scale on the canonical suite configurations; the
tolerances below are fixed, not calibrated.  Criteria 2 and 3 share the
semigroup suite run (its runtime budget covers both).
"""

import os
import time

import pytest

from rotns.config import RunConfig
from rotns.suites import _SUITES, run_suite


@pytest.fixture(scope="module")
def suite_runs():
    cfg = RunConfig()
    out = {}
    for name in ("partition", "semigroup", "oscillation", "bilinear",
                 "picard", "energy", "weights"):
        start = time.monotonic()
        out[name] = _SUITES[name](cfg)
        out[name].elapsed = time.monotonic() - start
    return out


def _check(res, name):
    for c in res.checks:
        if c.name == name:
            return c
    raise KeyError(f"check {name} missing from suite {res.name}")


def _verdict(num, label, conditions):
    import sys
    ok = all(flag for flag, _ in conditions)
    detail = "; ".join(d for _, d in conditions)
    line = f"ACCEPTANCE {num} {label}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    if sys.stdout is not sys.__stdout__:  # surface the banner under capture
        sys.__stdout__.write(line + "\n")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_1_partition_identities(suite_runs):
    res = suite_runs["partition"]
    pou = _check(res, "partition_of_unity")
    orth = _check(res, "block_orthogonality")
    para = _check(res, "paraproduct_support")
    bony = _check(res, "bony_reconstruction")
    _verdict(1, "partition/identity", [
        (pou.value < 1e-8, f"partition residual {pou.value:.2e} < 1e-8"),
        (orth.value < 1e-10, f"orthogonality {orth.value:.2e} < 1e-10"),
        (para.value < 1e-10, f"paraproduct {para.value:.2e} < 1e-10"),
        (bony.value < 1e-10, f"bony {bony.value:.2e} < 1e-10"),
        (res.elapsed < 30.0, f"runtime {res.elapsed:.1f} s < 30 s"),
    ])


def test_criterion_2_semigroup(suite_runs):
    res = suite_runs["semigroup"]
    _verdict(2, "semigroup", [
        (_check(res, "oracle_agreement").value < 1e-6,
         f"oracle {_check(res, 'oracle_agreement').value:.2e} < 1e-6"),
        (_check(res, "semigroup_property").value < 1e-11,
         f"group property {_check(res, 'semigroup_property').value:.2e} < 1e-11"),
        (_check(res, "heat_reduction").value < 1e-12,
         f"heat reduction {_check(res, 'heat_reduction').value:.2e} < 1e-12"),
        (_check(res, "rotation_isometry").value < 1e-12,
         f"isometry {_check(res, 'rotation_isometry').value:.2e} < 1e-12"),
        (_check(res, "linear_energy_identity").value < 1e-4,
         f"energy identity {_check(res, 'linear_energy_identity').value:.2e} < 1e-4"),
        (res.elapsed < 60.0, f"runtime {res.elapsed:.1f} s < 60 s"),
    ])


def test_criterion_3_decay(suite_runs):
    res = suite_runs["semigroup"]
    single = _check(res, "single_mode_rate_error")
    ring = _check(res, "ring_rate_l2")
    nu = 1.0
    lo, hi = 0.95 * nu * 0.75**2, 1.05 * nu * (8.0 / 3.0)**2
    positive = _check(res, "lp_decay_positive_rates")
    _verdict(3, "decay", [
        (single.value < 1e-6, f"single-mode rate error {single.value:.2e} < 1e-6"),
        (lo <= ring.value <= hi,
         f"ring rate {ring.value:.3f} in [{lo:.3f}, {hi:.3f}]"),
        (positive.value == 1.0, "positive L^p rates at lambda in {1,2,4} x omega"),
        (res.elapsed < 60.0, f"runtime {res.elapsed:.1f} s < 60 s"),
    ])


def test_criterion_4_oscillation(suite_runs):
    res = suite_runs["oscillation"]
    slope = _check(res, "oscillation_exponent_p4")
    _verdict(4, "oscillation", [
        (0.15 <= slope.value <= 0.35,
         f"fitted exponent {slope.value:.3f} in [0.15, 0.35] (predicted 0.25)"),
        (res.elapsed < 180.0, f"runtime {res.elapsed:.1f} s < 180 s"),
    ])


def test_criterion_5_bilinear(suite_runs):
    res = suite_runs["bilinear"]
    scaling = _check(res, "bilinearity_scaling")
    eta16 = _check(res, "eta_16")
    eta32 = _check(res, "eta_32")
    drift = _check(res, "eta_resolution_drift")
    ineq = _check(res, "weight_inequalities_exact")
    mono = _check(res, "weighted_seminorm_monotone")
    _verdict(5, "bilinear", [
        (scaling.value < 1e-12, f"B(2u,2v)=4B(u,v) defect {scaling.value:.2e} < 1e-12"),
        (eta16.value > 0 and eta32.value > 0,
         f"eta finite ({eta16.value:.3f}, {eta32.value:.3f})"),
        (drift.value <= 0.5, f"eta drift {drift.value:.2f} within 50%"),
        (ineq.value == 0, "weight inequalities exact on j in [-20,40]"),
        (mono.passed, f"weighted seminorm decreases to {mono.value:.3g}"),
        (res.elapsed < 180.0, f"runtime {res.elapsed:.1f} s < 180 s"),
    ])


def test_criterion_6_picard(suite_runs):
    res = suite_runs["picard"]
    cond = _check(res, "contraction_condition")
    ratio = _check(res, "contraction_ratio")
    resid = _check(res, "fixed_point_residual")
    consistency = _check(res, "solver_consistency")
    gate = _check(res, "smallness_gate")
    conv = _check(res, "picard_converged")
    sob = _check(res, "sobolev_vs_hybrid_ratio")
    _verdict(6, "picard", [
        (cond.value < 0.75, f"4 eta ||G u0|| = {cond.value:.3f} < 3/4"),
        (ratio.value <= 0.5, f"contraction ratio {ratio.value:.3f} <= 1/2"),
        (resid.value < 2e-8, f"residual {resid.value:.2e} < 2e-8"),
        (consistency.value < 1e-7,
         f"picard vs stepper {consistency.value:.2e} < 1e-7"),
        (gate.passed and conv.passed,
         "gated oscillating data converges"),
        (sob.value >= 10.0,
         f"H^1/2 / hybrid = {sob.value:.1f} >= 10 at m=32"),
        (res.elapsed < 300.0, f"runtime {res.elapsed:.1f} s < 300 s"),
    ])


def test_criterion_7_energy(suite_runs):
    res = suite_runs["energy"]
    budget = _check(res, "energy_budget")
    neutral = _check(res, "nonlinear_energy_neutrality")
    _verdict(7, "energy", [
        (budget.value < 1e-4, f"budget violation {budget.value:.2e} < 1e-4 rel"),
        (neutral.value < 1e-10, f"neutrality {neutral.value:.2e} < 1e-10"),
        (res.elapsed < 120.0, f"runtime {res.elapsed:.1f} s < 120 s"),
    ])


def test_criterion_8_determinism(tmp_path):
    cfg = RunConfig(n=16, figures=False)
    pairs = []
    for name in ("weights", "partition"):
        outs = []
        for tag in ("a", "b"):
            out = str(tmp_path / f"{name}_{tag}")
            assert run_suite(name, cfg, outdir=out, figures=False) == 0
            outs.append(out)
        for fname in sorted(os.listdir(outs[0])):
            if fname.endswith(".csv"):
                a = open(os.path.join(outs[0], fname), "rb").read()
                b = open(os.path.join(outs[1], fname), "rb").read()
                pairs.append((fname, a == b))
    _verdict(8, "determinism", [
        (all(ok for _, ok in pairs),
         "byte-identical CSVs: " + ", ".join(f for f, _ in pairs)),
    ])
