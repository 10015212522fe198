"""Figures for the batch experiments (PNG via the Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

# fail, pass with divisibility, exceptional pass
_GRID_COLORS = ListedColormap(["#d9d9d9", "#2b8cbe", "#f03b20"])
_SAVE_KW = {"dpi": 120, "metadata": {"Software": None}}


def plot_grid(result, path: str | Path) -> Path:
    """Heatmap of the manifold criterion over the (n, p) grid."""
    ns = sorted({c.n for c in result.cells})
    ps = sorted({c.p for c in result.cells})
    row, col = {n: i for i, n in enumerate(ns)}, {p: j for j, p in enumerate(ps)}
    z = [[0] * len(ps) for _ in ns]
    for c in result.cells:
        z[row[c.n]][col[c.p]] = 0 if not c.passing_phases else (1 if c.divisible else 2)

    fig, ax = plt.subplots(figsize=(4.5, 7))
    ax.imshow(z, cmap=_GRID_COLORS, vmin=0, vmax=2, aspect="auto")
    ax.set_xticks(range(len(ps)), [str(p) for p in ps])
    ax.set_yticks(range(len(ns)), [str(n) for n in ns])
    ax.set_xlabel("p")
    ax.set_ylabel("n")
    for c in result.cells:
        if c.passing_phases:
            ax.text(col[c.p], row[c.n], ",".join(map(str, c.passing_phases)),
                    ha="center", va="center", fontsize=7, color="white")
    s = result.summary()
    ax.set_title(f"{s['passing']}/{s['total']} pass, {s['exceptional']} exceptional", fontsize=9)
    handles = [plt.Rectangle((0, 0), 1, 1, color=_GRID_COLORS(k)) for k in range(3)]
    ax.legend(handles, ["fail", "pass, p | n(2n-1)", "pass, other"],
              loc="upper center", bbox_to_anchor=(0.5, -0.07), ncol=3, fontsize=7, frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def plot_poincare_scan(scan, path: str | Path) -> Path:
    """One bar per prime: number of passing phases j for the Poincare sphere."""
    primes = [q for q, _ in scan]
    counts = [len(rep.passing_phases) for _, rep in scan]
    colors = ["#2b8cbe" if c else "#d9d9d9" for c in counts]

    fig, ax = plt.subplots(figsize=(7, 2.8))
    ax.bar(range(len(primes)), [max(c, 0.05) for c in counts], color=colors)
    ax.set_xticks(range(len(primes)), [str(q) for q in primes], fontsize=7)
    ax.set_xlabel("p")
    ax.set_ylabel("passing phases")
    ax.set_ylim(0, max(counts + [1]) + 0.5)
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    for x, (c, (_, rep)) in enumerate(zip(counts, scan)):
        ax.text(x, max(c, 0.05) + 0.05, rep.verdict, ha="center", va="bottom", fontsize=6)
    ax.set_title("Poincare sphere, manifold criterion", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path
