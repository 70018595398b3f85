"""Figures for benchmark reports."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def figure_size(width: float = 6.5, ratio: float | None = None) -> tuple[float, float]:
    ratio = ratio or (math.sqrt(5) - 1) / 2
    return width, width * ratio


def plot_bench(rows: Sequence[dict], path: str) -> None:
    """States expanded and wall time per instance size, one line per family."""
    by_family: dict[str, list[dict]] = defaultdict(list)
    for row in rows:
        by_family[row["family"]].append(row)
    with plt.rc_context(RC):
        fig, (ax_states, ax_time) = plt.subplots(1, 2, figsize=figure_size(7.0, 0.4))
        for family, fam_rows in sorted(by_family.items()):
            fam_rows = sorted(fam_rows, key=lambda r: r["n"])
            xs = [r["n"] for r in fam_rows]
            ax_states.plot(xs, [max(r["states_mean"], 1) for r in fam_rows], marker="o", label=family)
            ax_time.plot(xs, [max(r["seconds_mean"], 1e-6) for r in fam_rows], marker="o", label=family)
        ax_states.set_yscale("log")
        ax_time.set_yscale("log")
        ax_states.set_xlabel("source vertices")
        ax_time.set_xlabel("source vertices")
        ax_states.set_ylabel("states expanded (mean)")
        ax_time.set_ylabel("seconds per solve (mean)")
        ax_states.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
