"""File-output matplotlib rendering for trade-off fronts and benchmark summaries."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

RC = {
    "figure.figsize": (6.4, 4.2),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def save_front_figure(fronts, path, title: str | None = None) -> None:
    """Plot labeled (cost, fitness) fronts and write the figure to ``path``.

    ``fronts`` is an iterable of (label, records) with records ascending in
    cost, as produced by ``experiments.export_front``.
    """
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for label, records in fronts:
            if not records:
                continue
            xs = [c for c, _ in records]
            ys = [f for _, f in records]
            ax.step(xs, ys, where="post", label=str(label), linewidth=1.2)
        ax.set_xlabel("cost")
        ax.set_ylabel("coverage")
        if title:
            ax.set_title(title)
        ax.legend(loc="lower right")
        fig.savefig(path)
        plt.close(fig)


def save_report_figure(report, path) -> None:
    """Mean best coverage (with std bars) per algorithm across t_max values."""
    by_algo: dict[str, list] = {}
    for rec in report.records:
        by_algo.setdefault(rec.algorithm, []).append(rec)
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for algorithm, recs in by_algo.items():
            recs = sorted(recs, key=lambda r: r.t_max)
            xs = [r.t_max for r in recs]
            ys = [r.mean for r in recs]
            errs = [r.std for r in recs]
            ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=3,
                        linewidth=1.2, label=algorithm)
        ax.set_xscale("log")
        ax.set_xlabel("fitness evaluations")
        ax.set_ylabel("mean best coverage")
        ax.set_title(f"{report.graph} (n={report.n}, B={report.budget:g}, {report.cost_kind} costs)")
        ax.legend(loc="lower right")
        fig.savefig(path)
        plt.close(fig)
