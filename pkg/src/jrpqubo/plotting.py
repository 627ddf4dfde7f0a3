"""Figures written next to the delimited reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_benchmark(rows, path):
    """Largest subproblem and score ratio against D, one line per K."""
    sizes = sorted({r["K"] for r in rows})
    with plt.rc_context(_STYLE):
        fig, (left, right) = plt.subplots(1, 2, figsize=(7.0, 2.8))
        for K in sizes:
            cell = sorted((r for r in rows if r["K"] == K), key=lambda r: r["D"])
            ds = [r["D"] for r in cell]
            left.plot(ds, [r["mean_largest_subproblem"] for r in cell], marker="o", label=f"K={K}")
            right.plot(ds, [r["score_ratio"] for r in cell], marker="o", label=f"K={K}")
        ticks = sorted({r["D"] for r in rows})
        for ax in (left, right):
            ax.set_xticks(ticks)
        left.set_xlabel("bands D")
        left.set_ylabel("largest subproblem (variables)")
        right.set_xlabel("bands D")
        right.set_ylabel("score, banded / full")
        right.axhline(1.0, color="0.6", lw=0.8, ls="--")
        left.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def plot_bands(report, path):
    bands = report.per_band
    labels = [str(b.index) for b in bands]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.0, 2.8))
        x = range(len(bands))
        grid = [b.agents_considered * b.vacants_considered for b in bands]
        ax.bar([i - 0.2 for i in x], grid, width=0.4, color="0.75", label="agents x vacants")
        ax.bar([i + 0.2 for i in x], [b.variables for b in bands], width=0.4, color="0.25",
               label="variables after pruning")
        ax.set_xticks(list(x), labels)
        ax.set_xlabel("band")
        ax.set_ylabel("count")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
