"""Figure rendering for CLI report artifacts.

Figures accompany the delimited outputs: a zero map gets the count
staircase plus the root loci inside the unit disk, a threshold sweep its
curve, a moment table its decay plot.  All rendering targets files
(Agg backend); nothing here ever opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_zero_map", "render_threshold_curve", "render_moment_decay"]

_DPI = 150


def render_zero_map(counts, roots, path, title: str = "") -> None:
    """counts: [(radius, count)]; roots: [(radius, complex root)]."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    radii = [r for r, _ in counts]
    values = [c for _, c in counts]
    ax1.step(radii, values, where="post")
    ax1.set_xlabel("|z|")
    ax1.set_ylabel("zero count of the point kernel")
    ax1.set_title("zero count vs radius")
    ax1.grid(True, alpha=0.3)

    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 256))
    ax2.plot(circle.real, circle.imag, "k--", linewidth=0.8)
    if roots:
        xs = [z.real for _, z in roots]
        ys = [z.imag for _, z in roots]
        cs = [r for r, _ in roots]
        sc = ax2.scatter(xs, ys, c=cs, s=18, cmap="viridis")
        fig.colorbar(sc, ax=ax2, label="|z|")
    ax2.set_aspect("equal")
    ax2.set_xlabel("Re")
    ax2.set_ylabel("Im")
    ax2.set_title("zero loci (xi plane)")
    ax2.grid(True, alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_threshold_curve(rows, path, title: str = "") -> None:
    """rows: [(level n, threshold alpha)]."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [n for n, _ in rows]
    alphas = [a for _, a in rows]
    ax.plot(ns, alphas, "o-")
    ax.set_xlabel("iterate depth n")
    ax.set_ylabel("dominance threshold alpha*")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_moment_decay(rows, path, title: str = "") -> None:
    """rows: [(n, moment)] on a log scale."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [n for n, _ in rows]
    vals = [m for _, m in rows]
    ax.semilogy(ns, vals, "o-", markersize=3)
    ax.set_xlabel("n")
    ax.set_ylabel("moment")
    ax.grid(True, alpha=0.3, which="both")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
