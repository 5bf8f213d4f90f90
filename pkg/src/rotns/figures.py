"""Figure rendering for run reports: one PNG next to each CSV.

The delimited output remains the contract; figures are derived views.
"""

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

plt.rcParams.update({
    "figure.figsize": (6.4, 4.2),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
})

_DPI = 150


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_norm_history(rows, path, title=""):
    """Norm histories of a propagate/simulate run plus the energy budget."""
    t = np.array([r["t"] for r in rows])
    fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.4))
    for key, label in (("l2", "L2"), ("h12", "H^1/2"), ("hybrid", "hybrid")):
        ax0.semilogy(t, [max(r[key], 1e-300) for r in rows], label=label)
    ax0.set_ylabel("norm")
    ax0.legend(loc="best")
    if title:
        ax0.set_title(title)
    ax1.plot(t, [r["energy_budget"] for r in rows], color="tab:red")
    ax1.set_xlabel("t")
    ax1.set_ylabel("energy budget")
    _finish(fig, path)


def save_sweep(rows, path):
    """log-log oscillation sweep with its fitted slope."""
    eps = np.array([r["epsilon"] for r in rows])
    norms = np.array([r["hybrid_norm"] for r in rows])
    slope = rows[0]["fitted_slope"]
    fig, ax = plt.subplots()
    ax.loglog(eps, norms, "o", label="hybrid norm")
    anchor = norms[0] * (eps / eps[0]) ** slope
    ax.loglog(eps, anchor, "--", label=f"slope {slope:.3f}")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("hybrid norm")
    ax.legend(loc="best")
    _finish(fig, path)


def save_picard(rows, path):
    """Successive-difference decay of the fixed-point iteration."""
    its = [r["iteration"] for r in rows]
    fig, ax = plt.subplots()
    ax.semilogy(its, [max(r["diff_norm"], 1e-300) for r in rows], "o-",
                label="diff norm")
    ax.semilogy(its, [max(r["iterate_norm"], 1e-300) for r in rows], "s--",
                label="iterate norm")
    ax.set_xlabel("iteration")
    ax.set_ylabel("E_p norm")
    ax.legend(loc="best")
    _finish(fig, path)


def save_decay(rows, path):
    """Fitted decay rates per block scale and integrability index."""
    fig, ax = plt.subplots()
    ps = sorted({r["p"] for r in rows})
    for p in ps:
        lam = [r["lam"] for r in rows if r["p"] == p]
        cs = [r["c_fit"] for r in rows if r["p"] == p]
        ax.loglog(lam, cs, "o-", label=f"p = {p}")
    ax.set_xlabel("lambda = 2^j")
    ax.set_ylabel("fitted c")
    ax.legend(loc="best")
    _finish(fig, path)


def save_weights(rows, path):
    """omega_{j,T} against j for each horizon."""
    fig, ax = plt.subplots()
    ts = sorted({r["T"] for r in rows})
    for T in ts:
        js = [r["j"] for r in rows if r["T"] == T]
        ws = [r["omega_jT"] for r in rows if r["T"] == T]
        ax.semilogy(js, [max(w, 1e-300) for w in ws], label=f"T = {T:g}")
    ax.set_xlabel("j")
    ax.set_ylabel("omega_{j,T}")
    ax.legend(loc="best", fontsize=7)
    _finish(fig, path)


def save_check_values(rows, path, title=""):
    """Bar chart of measured values against thresholds for a check suite."""
    named = [r for r in rows if r.get("threshold") not in (None, "")]
    if not named:
        return
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    idx = np.arange(len(named))
    vals = [max(abs(r["value"]), 1e-300) for r in named]
    thr = [r["threshold"] for r in named]
    ax.bar(idx, vals, width=0.6, label="measured")
    ax.plot(idx, thr, "r_", markersize=16, label="threshold")
    ax.set_yscale("log")
    ax.set_xticks(idx)
    ax.set_xticklabels([r["check"] for r in named], rotation=30, ha="right",
                       fontsize=7)
    if title:
        ax.set_title(title)
    ax.legend(loc="best")
    _finish(fig, path)
