"""Command-line surface.

Subcommands: analyze, propagate, simulate, picard, verify.  Every command
accepts --config <path>, --out <dir>, --seed <int>; identical config and
seed reproduce byte-identical CSV output.
"""

import argparse
import os
import sys

import numpy as np

from . import figures as figs
from .config import RunConfig, SUITE_NAMES, load_config
from .initial_data import EnvelopeSpec, modulated_scalar, oscillating_vortex, random_solenoidal
from .littlewood_paley import TimeGrid, besov_norm, hybrid_norm
from .reports import write_report
from .semigroup import series_propagate
from .solver import energy_report, if_step_integrate, picard_solve
from .snapshot import read_snapshot, read_snapshot_meta, write_snapshot
from .spectral import (
    FlowParams,
    divergence_defect,
    l2_spectral,
    lp_norm,
    make_grid,
    sobolev_norm,
)
from .suites import run_suite


def _flow(cfg: RunConfig) -> FlowParams:
    return FlowParams(nu=cfg.nu, omega=cfg.omega,
                      smallness_c=cfg.smallness_c if cfg.smallness_c else 0.05)


def build_initial_field(cfg: RunConfig):
    """Resolve the configured data source to a spectral field."""
    if "snapshot" in cfg.data:
        return read_snapshot(cfg.data["snapshot"])
    grid = make_grid(cfg.n, cfg.L)
    gen = cfg.data["generator"]
    if gen == "random_solenoidal":
        return random_solenoidal(cfg.seed, cfg.data["slope"],
                                 tuple(cfg.data["band"]), grid,
                                 amplitude=cfg.data.get("amplitude", 1.0))
    env = EnvelopeSpec(width=cfg.data.get("width", grid.L / 4),
                       center=tuple(cfg.data["center"]) if "center" in cfg.data else None,
                       amplitude=cfg.data.get("amplitude", 1.0))
    if gen == "oscillating_vortex":
        return oscillating_vortex(cfg.data["m"], env, grid)
    return modulated_scalar(cfg.data["m"], env, grid)


def _norm_rows(series, cfg: RunConfig, params: FlowParams):
    er = energy_report(series, params)
    rows = []
    for i, f in enumerate(series.fields):
        rows.append({
            "t": float(series.times[i]),
            "l2": l2_spectral(f),
            "h12": sobolev_norm(f, 0.5),
            "hybrid": hybrid_norm(f, cfg.s, cfg.sigma_eff, cfg.p, params.omega),
            "energy_budget": float(er.budgets[i]),
        })
    return rows


def cmd_analyze(cfg: RunConfig, outdir: str, figures: bool) -> int:
    if "snapshot" not in cfg.data:
        print("analyze requires a snapshot data source (data.snapshot)")
        return 2
    meta = read_snapshot_meta(cfg.data["snapshot"])
    field = read_snapshot(cfg.data["snapshot"])
    params = _flow(cfg)
    row = {
        "time_tag": field.time_tag,
        "l2": l2_spectral(field),
        "linf": lp_norm(field, np.inf),
        "h12": sobolev_norm(field, 0.5),
        "besov": besov_norm(field, cfg.s, cfg.p, np.inf) if field.mean_free else "",
        "hybrid": hybrid_norm(field, cfg.s, cfg.sigma_eff, cfg.p, params.omega)
        if field.mean_free else "",
        "divergence_defect": divergence_defect(field) if field.ncomp == 3 else "",
        "mean_free": field.mean_free,
        "stored_solenoidal_flag": meta["solenoidal"],
    }
    path = os.path.join(outdir, "analyze.csv")
    write_report([row], path)
    for key, val in row.items():
        print(f"{key}: {val}")
    print(f"wrote {path}")
    return 0


def _require_velocity(field) -> None:
    if field.ncomp != 3:
        raise ValueError("time evolution needs a 3-component velocity field; "
                         "the configured data source is scalar")


def cmd_propagate(cfg: RunConfig, outdir: str, figures: bool) -> int:
    u0 = build_initial_field(cfg)
    _require_velocity(u0)
    params = _flow(cfg)
    series = series_propagate(u0, TimeGrid(cfg.T, cfg.M), params)
    rows = _norm_rows(series, cfg, params)
    path = os.path.join(outdir, "propagate.csv")
    write_report(rows, path)
    write_snapshot(series.fields[-1], os.path.join(outdir, "propagate_final.cbsv"),
                   params)
    if figures:
        figs.save_norm_history(rows, os.path.join(outdir, "propagate.png"),
                               title="linear propagation")
    print(f"propagated to T={cfg.T} in {cfg.M} steps; wrote {path}")
    return 0


def cmd_simulate(cfg: RunConfig, outdir: str, figures: bool) -> int:
    u0 = build_initial_field(cfg)
    _require_velocity(u0)
    params = _flow(cfg)
    series = if_step_integrate(u0, TimeGrid(cfg.T, cfg.M), params)
    rows = _norm_rows(series, cfg, params)
    path = os.path.join(outdir, "simulate.csv")
    write_report(rows, path)
    write_snapshot(series.fields[-1], os.path.join(outdir, "simulate_final.cbsv"),
                   params)
    if figures:
        figs.save_norm_history(rows, os.path.join(outdir, "simulate.png"),
                               title="nonlinear run")
    budget = max(abs(r["energy_budget"]) for r in rows)
    print(f"simulated to T={cfg.T} in {cfg.M} steps; max |energy budget| = "
          f"{budget:.3g}; wrote {path}")
    return 0


def cmd_picard(cfg: RunConfig, outdir: str, figures: bool) -> int:
    u0 = build_initial_field(cfg)
    _require_velocity(u0)
    params = _flow(cfg)
    sol, rep = picard_solve(u0, TimeGrid(cfg.T, cfg.M), params, p=cfg.p)
    rows = [{"iteration": i + 1,
             "iterate_norm": rep.iterate_norms[i],
             "diff_norm": rep.diff_norms[i],
             "ratio": rep.ratios[i - 1] if 0 < i <= len(rep.ratios) else ""}
            for i in range(len(rep.diff_norms))]
    path = os.path.join(outdir, "picard.csv")
    write_report(rows, path)
    write_snapshot(sol.fields[-1], os.path.join(outdir, "picard_final.cbsv"),
                   params)
    if figures:
        figs.save_picard(rows, os.path.join(outdir, "picard.png"))
    print(f"picard: converged={rep.converged} iterations={rep.iterations} "
          f"residual={rep.residual:.3g} eta_observed={rep.eta_observed:.3g}")
    print(f"wrote {path}")
    return 0 if rep.converged else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rotns",
        description="Pseudo-spectral toolkit for the rotating Navier-Stokes "
                    "equations: linear propagation, nonlinear runs, Picard "
                    "fixed points and verification suites.")
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--out", help="output directory (default from config)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip figure rendering")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", help="norms of a snapshot")
    sub.add_parser("propagate", help="linear semigroup evolution")
    sub.add_parser("simulate", help="nonlinear integrating-factor run")
    sub.add_parser("picard", help="fixed-point construction report")
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=list(SUITE_NAMES) + ["all"],
                        metavar="suite",
                        help=f"one of {', '.join(SUITE_NAMES)} or 'all'")

    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    outdir = args.out or cfg.output
    figures = cfg.figures and not args.no_figures
    os.makedirs(outdir, exist_ok=True)

    if args.command == "verify":
        names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
        if args.suite == "all" and cfg.suites:
            names = cfg.suites
        worst = 0
        for name in names:
            worst = max(worst, run_suite(name, cfg, outdir, figures))
        return worst

    handler = {"analyze": cmd_analyze, "propagate": cmd_propagate,
               "simulate": cmd_simulate, "picard": cmd_picard}[args.command]
    try:
        return handler(cfg, outdir, figures)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
