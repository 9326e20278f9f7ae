"""Matplotlib figures written next to the line-JSON reports."""

from __future__ import annotations

import os
from typing import Iterable, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import ClassificationReport, SweepSummary  # noqa: E402

plt.rcParams.update({
    "figure.dpi": 110,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
})


def polynomial_figure(report: ClassificationReport, path: str) -> str:
    """Bar chart of s_k with the unimodality chain bounds of the first fired verdict."""
    coeffs = report.polynomial
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ks = list(range(len(coeffs)))
    ax.bar(ks, coeffs, color="#4c72b0", width=0.6)
    ax.set_xticks(ks)
    ax.set_xlabel("k")
    ax.set_ylabel("$s_k$")
    lc, uni = report.direct
    ax.set_title(f"{report.graph6}: n={report.n}, alpha={report.alpha}, "
                 f"LC={'yes' if lc else 'no'}, unimodal={'yes' if uni else 'no'}", fontsize=9)
    for v in report.criteria:
        if v.name == "unimodality_LR" and v.premises_hold:
            low, high = v.detail["L"], v.detail["R"]
            ax.axvline(low + 1 + 0.4, color="#55a868", ls="--", lw=1, label=f"L+1={low + 1}")
            ax.axvline(high - 0.4, color="#c44e52", ls=":", lw=1, label=f"R={high}")
            ax.legend(frameon=False, fontsize=8)
            break
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def threshold_figure(points: Sequence[Tuple[int, int, bool]], path: str) -> str:
    """Connected W_2 graphs placed by (3 alpha, n), marked by 2-quasi-regularizability."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    yes = [(3 * a, n) for n, a, q in points if q]
    no = [(3 * a, n) for n, a, q in points if not q]
    if yes:
        ax.scatter(*zip(*yes), marker="o", facecolors="none", edgecolors="#4c72b0",
                   label="2-quasi-regularizable")
    if no:
        ax.scatter(*zip(*no), marker="x", color="#c44e52", label="not 2-quasi-regularizable")
    top = max([n for n, _, _ in points] + [3 * a for _, a, _ in points] + [1]) + 1
    ax.plot([0, top], [0, top], color="grey", lw=0.8, ls="--", label="n = 3 alpha")
    ax.set_xlabel("3 alpha")
    ax.set_ylabel("n")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def summary_figure(summary: SweepSummary, path: str) -> str:
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.6))
    names = list(summary.counts)
    left.barh(names, [summary.counts[k] for k in names], color="#4c72b0")
    left.set_title(f"{summary.corpus}: {summary.total} graphs", fontsize=9)
    left.invert_yaxis()
    theorems = list(summary.violations)
    values = [summary.violations[t] for t in theorems]
    right.barh(theorems, values, color=["#c44e52" if v else "#55a868" for v in values])
    right.set_title("violations", fontsize=9)
    right.set_xlim(0, max(values + [1]))
    right.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def write_sweep_figures(summary: SweepSummary, points: Iterable[Tuple[int, int, bool]],
                        directory: str) -> list:
    os.makedirs(directory, exist_ok=True)
    return [
        summary_figure(summary, os.path.join(directory, "summary.png")),
        threshold_figure(list(points), os.path.join(directory, "threshold.png")),
    ]
