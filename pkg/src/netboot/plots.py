"""Figure rendering for estimates, bootstrap distributions, and coverage reports.

All functions draw to files (Agg backend) and return the written path, so
the CLI can emit figures next to its CSV/JSON output on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def plot_degree_estimate(est, cis=None, path="degree_estimate.png"):
    """Point estimate of f(k), with bootstrap interval whiskers when given."""
    ks = np.arange(len(est.fk))
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(ks, est.fk, color="#4878a8", width=0.8, label="estimate")
    if cis is not None:
        lows = np.array([ci.lower for ci in cis])
        highs = np.array([ci.upper for ci in cis])
        ax.errorbar(
            ks,
            est.fk,
            yerr=[np.maximum(est.fk - lows, 0), np.maximum(highs - est.fk, 0)],
            fmt="none",
            ecolor="#33333388",
            capsize=3,
            label=f"{cis[0].level:.0%} bootstrap CI",
        )
    ax.set_xlabel("degree k")
    ax.set_ylabel("probability")
    ax.set_title(f"degree distribution estimate (mean degree {est.mu:.3f})")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_bootstrap_mean(values, ci, path="bootstrap_mean.png"):
    """Histogram of bootstrap replicate values with the interval marked."""
    values = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.hist(values, bins=min(40, max(10, values.size // 10)), color="#4878a8", alpha=0.85)
    ax.axvline(ci.point, color="#222222", lw=1.5, label=f"estimate {ci.point:.3f}")
    ax.axvline(ci.lower, color="#a83a38", ls="--", lw=1.2, label=f"{ci.level:.0%} {ci.method} CI")
    ax.axvline(ci.upper, color="#a83a38", ls="--", lw=1.2)
    ax.set_xlabel("bootstrap replicate value")
    ax.set_ylabel("replicates")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_coverage_report(reports, path="coverage.png"):
    """Per-cell observed coverage with 2-SE brackets, plus mean interval widths."""
    reports = list(reports)
    labels = [f"{r.config.method}\nn={r.config.n}, rm={r.config.removal_fraction:g}" for r in reports]
    xs = np.arange(len(reports))
    coverages = [r.coverage for r in reports]
    errs = [2 * r.coverage_se for r in reports]
    widths = [r.mean_width for r in reports]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    ax1.bar(xs, coverages, yerr=errs, capsize=4, color="#4878a8")
    ax1.axhline(reports[0].config.level, color="#a83a38", ls="--", lw=1.2, label=f"nominal {reports[0].config.level:.0%}")
    ax1.set_xticks(xs, labels, fontsize=8)
    ax1.set_ylim(0, 1.05)
    ax1.set_ylabel("observed coverage")
    ax1.legend(frameon=False, fontsize=8)

    ax2.bar(xs, widths, color="#7aa874")
    ax2.set_xticks(xs, labels, fontsize=8)
    ax2.set_ylabel("mean interval width")

    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
