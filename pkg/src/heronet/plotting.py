"""Matplotlib figure builders for report payloads.

Each ``plot_*`` function returns a Figure; ``save_figure`` writes it to
disk and releases it. The Agg backend is forced so rendering works on
headless machines.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_FLAG_COLOR = "#d62728"
_MAIN_COLOR = "#1f77b4"


def save_figure(fig, path, dpi: int = 150) -> None:
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)


def close_figure(fig) -> None:
    plt.close(fig)


def plot_sweep(sweep, xlabel: str, title: str = ""):
    """Mean +- std band of the coefficient over a parameter grid.

    Adds an efficiency panel when the sweep carries efficiency series.
    """
    eff_keys = [k for k in sweep.aux if k.startswith("efficiency")]
    ncols = 2 if eff_keys else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.2 * ncols, 4.0), squeeze=False)
    ax = axes[0][0]
    x = np.asarray(sweep.grid)
    mean = np.asarray(sweep.hic_mean)
    std = np.asarray(sweep.hic_std)
    ax.plot(x, mean, "o-", color=_MAIN_COLOR, label="mean")
    ax.fill_between(x, mean - std, mean + std, color=_MAIN_COLOR, alpha=0.2,
                    label="+- std")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("asymmetry coefficient")
    ax.grid(alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    if eff_keys:
        ax2 = axes[0][1]
        for key in eff_keys:
            ax2.plot(x, sweep.aux[key], "o-", label=key.replace("_", " "))
        ax2.set_xlabel(xlabel)
        ax2.set_ylabel("global efficiency")
        ax2.grid(alpha=0.3)
        ax2.legend()
    fig.tight_layout()
    return fig


def plot_sensitivity(table, title: str = "metric sensitivity under removal"):
    """Grouped bars: per topology, sensitivity score of each metric."""
    topos = list(table.rows)
    metrics = list(next(iter(table.rows.values())))
    width = 0.8 / max(len(metrics), 1)
    fig, ax = plt.subplots(figsize=(1.8 * len(topos) + 3, 4.2))
    base = np.arange(len(topos))
    for j, metric in enumerate(metrics):
        vals = [table.rows[t][metric] for t in topos]
        ax.bar(base + j * width, vals, width=width, label=metric)
    ax.set_xticks(base + 0.4 - width / 2)
    ax.set_xticklabels(topos, rotation=20, ha="right")
    ax.set_ylabel("sensitivity")
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def plot_detection(report):
    """Recall/precision per backbone iteration plus retained fraction."""
    it = np.arange(1, len(report.recall_by_iteration) + 1)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(it, report.recall_by_iteration, "o-", label="recall")
    ax.plot(it, report.precision_by_iteration, "s-", label="precision")
    ax.plot(it, report.retained_by_iteration, "^--", color="gray",
            label="retained node fraction")
    ax.set_xlabel("backbone iteration")
    ax.set_ylabel("fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    ax.legend()
    ax.set_title(f"covert detection over {report.seeds} runs")
    fig.tight_layout()
    return fig


def plot_scaling(report):
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.errorbar(report.sizes, report.robustness_mean, yerr=report.robustness_std,
                fmt="o-", color=_MAIN_COLOR, capsize=3, label="robustness")
    ax.set_xscale("log")
    ax.set_xlabel("network size")
    ax.set_ylabel("backbone attack robustness")
    ax.grid(alpha=0.3, which="both")
    ax.set_title(
        f"scaling trend (spearman rho={report.spearman_rho:.3f}, "
        f"p={report.spearman_p:.2g})")
    ax.legend()
    fig.tight_layout()
    return fig


def plot_backbone_trace(trace):
    """Per-step threshold, asymmetry, edge counts and winner share."""
    steps = np.arange(1, len(trace.steps) + 1)
    alphas = [s.alpha for s in trace.steps]
    hics = [s.hic for s in trace.steps]
    active = [s.active.m for s in trace.steps]
    inactive = [s.inactive.m for s in trace.steps]
    winners = [s.winner_fraction for s in trace.steps]
    fig, axes = plt.subplots(2, 2, figsize=(9.5, 7.0))
    axes[0][0].plot(steps, alphas, "o-", color=_MAIN_COLOR)
    axes[0][0].set_ylabel("selected alpha")
    axes[0][1].plot(steps, hics, "o-", color=_FLAG_COLOR)
    axes[0][1].set_ylabel("asymmetry coefficient")
    axes[1][0].plot(steps, active, "o-", label="active")
    axes[1][0].plot(steps, inactive, "s--", label="inactive")
    axes[1][0].set_ylabel("edges")
    axes[1][0].legend()
    axes[1][1].plot(steps, winners, "o-", color="seagreen")
    axes[1][1].set_ylabel("winner fraction in backbone")
    axes[1][1].set_ylim(-0.02, 1.02)
    for ax in axes.flat:
        ax.set_xlabel("step")
        ax.grid(alpha=0.3)
    fig.suptitle(f"iterative backbone (stopped: {trace.stop_reason})")
    fig.tight_layout()
    return fig


def plot_temporal(windows, values, anomaly, stats=None):
    """Windowed coefficient series with anomaly flags and z-scores."""
    labels = [w.start.isoformat() for w in windows]
    x = np.arange(len(labels))
    nrows = 3 if stats else 2
    fig, axes = plt.subplots(nrows, 1, figsize=(max(7.0, 0.5 * len(x)), 2.9 * nrows),
                             sharex=True)
    ax = axes[0]
    ax.plot(x, values, "o-", color=_MAIN_COLOR, label="coefficient")
    flagged = [i for i, f in enumerate(anomaly.flagged) if f]
    if flagged:
        ax.plot(x[flagged], np.asarray(values)[flagged], "o", ms=11,
                mfc="none", mec=_FLAG_COLOR, mew=2, label="flagged")
    ax.set_ylabel("asymmetry coefficient")
    ax.grid(alpha=0.3)
    ax.legend()
    axz = axes[1]
    z = np.asarray(anomaly.z, dtype=float)
    axz.plot(x, z, "s-", color="darkorange", label="z-score")
    axz.axhline(anomaly.threshold, color=_FLAG_COLOR, ls="--", lw=1,
                label=f"threshold {anomaly.threshold:g}")
    axz.axhline(-anomaly.threshold, color=_FLAG_COLOR, ls="--", lw=1)
    axz.set_ylabel("trailing z")
    axz.grid(alpha=0.3)
    axz.legend()
    if stats:
        axs = axes[2]
        axs.plot(x, stats["nodes"], "o-", label="nodes")
        axs.plot(x, stats["edges"], "s-", label="edges")
        axs.set_ylabel("window size")
        axs.grid(alpha=0.3)
        axs.legend()
    axes[-1].set_xticks(x[:: max(1, len(x) // 12)])
    axes[-1].set_xticklabels(labels[:: max(1, len(x) // 12)], rotation=45,
                             ha="right", fontsize=8)
    axes[-1].set_xlabel("window start")
    fig.tight_layout()
    return fig


def plot_null_test(result):
    """Null coefficient histogram with the observed value marked."""
    fig, ax = plt.subplots(figsize=(6.2, 4.2))
    ax.hist(result.null_values, bins=24, color="lightsteelblue",
            edgecolor="white", label="null model")
    ax.axvline(result.real_hic, color=_FLAG_COLOR, lw=2,
               label=f"observed ({result.real_hic:.3f})")
    ax.set_xlabel("asymmetry coefficient")
    ax.set_ylabel("count")
    verdict = "significant" if result.significant else "not significant"
    ax.set_title(f"p={result.p_value:.4f} ({verdict})")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def plot_distance_matrix(matrix, labels=None, title: str = "pairwise dissimilarity"):
    m = np.asarray(matrix, dtype=float)
    fig, ax = plt.subplots(figsize=(0.6 * len(m) + 3.5, 0.6 * len(m) + 3.0))
    im = ax.imshow(m, cmap="viridis", vmin=0.0)
    fig.colorbar(im, ax=ax, shrink=0.85)
    if labels is not None:
        ax.set_xticks(range(len(labels)))
        ax.set_yticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
        ax.set_yticklabels(labels, fontsize=8)
    ax.set_title(title)
    fig.tight_layout()
    return fig
