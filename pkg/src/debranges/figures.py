"""Figure rendering for CLI reports.

Each renderer draws one diagnostic view to a PNG next to the delimited
output and returns the written path.  All rendering uses the Agg
backend, so figures work in headless runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "criterion_figure",
    "spectra_figure",
    "curve_figure",
    "limit_circle_figure",
]

_STATUS_COLOR = {"holds": "tab:green", "fails": "tab:red",
                 "inconclusive": "tab:orange"}


def _finish(fig, out_path) -> Path:
    out_path = Path(out_path)
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def criterion_figure(verdict: dict, out_path) -> Path:
    """Panel view of the three checks behind a criterion verdict."""
    fig, axes = plt.subplots(1, 3, figsize=(11.5, 3.6))

    c1 = verdict["c1"]["trace"]
    ax = axes[0]
    radii = np.asarray(c1.get("radii", []), dtype=float)
    sums = np.asarray(c1.get("partial_sums", []), dtype=float)
    if radii.size and radii.size == sums.size:
        ax.semilogx(radii, sums, "o-", ms=3.5)
        ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("window radius")
    ax.set_ylabel("symmetric reciprocal sum")
    ax.set_title(f"balance: {verdict['c1']['status']}",
                 color=_STATUS_COLOR.get(verdict["c1"]["status"], "black"))

    c2 = verdict["c2"]["trace"]
    ax = axes[1]
    lp = c2.get("limit_pos")
    ln_ = c2.get("limit_neg")
    if isinstance(lp, (int, float)) and isinstance(ln_, (int, float)):
        ax.bar([0, 1], [float(lp), -float(ln_)], width=0.55,
               color=["C0", "C1"], tick_label=["side +", "-(side -)"])
        gap = c2.get("gap")
        if isinstance(gap, (int, float)):
            ax.set_title(f"density: {verdict['c2']['status']} (gap {float(gap):.2e})",
                         color=_STATUS_COLOR.get(verdict["c2"]["status"], "black"))
    ax.set_ylabel("density limit")
    if not ax.get_title():
        ax.set_title(f"density: {verdict['c2']['status']}",
                     color=_STATUS_COLOR.get(verdict["c2"]["status"], "black"))

    c3 = verdict["c3"]["trace"]
    ax = axes[2]
    xs = np.abs(np.asarray(c3.get("points", []), dtype=float))
    terms = np.asarray(c3.get("terms", []), dtype=float)
    if xs.size and terms.size:
        good = (xs > 0) & (terms > 0)
        if np.any(good):
            ax.loglog(xs[good], terms[good], "o", ms=3)
    ax.set_xlabel("|x_n|")
    ax.set_ylabel("series term")
    ax.set_title(f"series: {verdict['c3']['status']}",
                 color=_STATUS_COLOR.get(verdict["c3"]["status"], "black"))

    fig.suptitle(f"verdict: {verdict['overall']}", y=1.02)
    return _finish(fig, out_path)


def spectra_figure(sequences: dict, out_path, title: str = "spectra") -> Path:
    """Ladder view of one or more real sequences (interlacing at a glance)."""
    fig, ax = plt.subplots(figsize=(8.5, 1.1 + 0.8 * len(sequences)))
    for row, (label, values) in enumerate(sequences.items()):
        values = np.asarray(values, dtype=float)
        if values.size:
            ax.eventplot(values, lineoffsets=row, linelengths=0.7,
                         colors=f"C{row % 10}")
        ax.text(ax.get_xlim()[0], row, f" {label}", va="center", fontsize=9)
    ax.set_yticks(range(len(sequences)))
    ax.set_yticklabels([""] * len(sequences))
    ax.set_xlabel("x")
    ax.set_title(title)
    return _finish(fig, out_path)


def curve_figure(x, y, out_path, xlabel: str = "x", ylabel: str = "value",
                 title: str = "", logy: bool = False) -> Path:
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if logy:
        pos = y > 0
        ax.semilogy(x[pos], y[pos], "o-", ms=3)
    else:
        ax.plot(x, y, "o-", ms=3)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    return _finish(fig, out_path)


def limit_circle_figure(trace, classification: str, out_path) -> Path:
    """Log-log growth of the summed solution norms along the sweep."""
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    trace = list(trace)
    if trace:
        ns = np.asarray([t[0] for t in trace], dtype=float)
        totals = np.asarray([t[1] for t in trace], dtype=float)
        ax.loglog(ns, totals, "o-", ms=4)
    ax.set_xlabel("order N")
    ax.set_ylabel("sum of squared solution values")
    ax.set_title(f"classification: {classification}")
    return _finish(fig, out_path)
