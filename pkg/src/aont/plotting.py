"""Report figures. Everything renders off-screen with the Agg backend."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import r2_upper_basic, r2_upper_qp  # noqa: E402
from .density import pair_counts  # noqa: E402
from .gf2 import BinaryMatrix  # noqa: E402

__all__ = ["plot_floors", "plot_cyclotomy", "plot_pair_heatmap", "render_report"]

FLOORS = {2: 1, 3: 7, 4: 30, 5: 70, 6: 150, 7: 287, 8: 485, 9: 783, 10: 1194, 11: 1744, 12: 2448}
CYCLOTOMY_N2 = {17: 9962, 97: 10831020, 193: 170314008, 241: 414228390, 401: 3177945050,
                433: 4320175230, 449: 4995836216}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_floors(path, floors: dict[int, int] | None = None) -> Path:
    """R_2 lower bounds from known matrices against the two upper bounds."""
    floors = floors or FLOORS
    ss = sorted(floors)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ss, [floors[s] / comb(s, 2) ** 2 for s in ss], "o-", label="best known matrix")
    ax.plot(ss, [float(r2_upper_basic(s)) for s in ss], "s--", label="2s / (3(s-1))")
    qs = [s for s in ss if s >= 4]
    ax.plot(qs, [float(r2_upper_qp(s, 4)) for s in qs], "^--", label="QP bound, rho = 4")
    ax.axhline(0.5, color="grey", lw=0.8, ls=":")
    ax.set_xlabel("s")
    ax.set_ylabel("R_2")
    ax.set_ylim(0, 1.05)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_cyclotomy(path, rows: dict[int, int] | None = None) -> Path:
    rows = rows or CYCLOTOMY_N2
    ps = sorted(rows)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ps, [rows[p] / comb(p, 2) ** 2 for p in ps], "o-", label="circulant from C_0")
    ax.axhline(float(Fraction(63, 128)), color="grey", ls="--", label="63/128")
    ax.set_xlabel("p")
    ax.set_ylabel("R_2")
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_pair_heatmap(m: BinaryMatrix, path, title: str | None = None) -> Path:
    """Invertible 2x2 submatrices contributed by each pair of rows."""
    table = pair_counts(m)
    fig, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(table, cmap="viridis")
    fig.colorbar(im, ax=ax, label="invertible 2x2 count")
    ax.set_xlabel("row")
    ax.set_ylabel("row")
    ticks = range(m.s)
    ax.set_xticks(ticks, [str(i + 1) for i in ticks])
    ax.set_yticks(ticks, [str(i + 1) for i in ticks])
    if title:
        ax.set_title(title)
    return _save(fig, path)


def render_report(directory) -> list[Path]:
    from .bundle import load_matrix

    d = Path(directory)
    return [
        plot_floors(d / "floors.png"),
        plot_cyclotomy(d / "cyclotomy.png"),
        plot_pair_heatmap(load_matrix("example12"), d / "example12_pairs.png", "example12"),
    ]
