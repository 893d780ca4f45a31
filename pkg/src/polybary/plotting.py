"""Figure rendering for grid and equator reports.

Renders the sampled fields produced by the CLI to image files, next to
the delimited output.  Matplotlib is imported lazily with the Agg backend
so that headless runs and the pure-CSV paths never touch a display.
"""

from __future__ import annotations

import numpy as np


def _axes(path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    return plt, fig, ax


def _draw_polygon(ax, poly):
    v = np.vstack([poly.vertices, poly.vertices[:1]])
    ax.plot(v[:, 0], v[:, 1], color="black", linewidth=1.2)


def save_grid_contour(rows, poly, path: str) -> None:
    """Filled contour of the discrepancy norm over the polygon."""
    plt, fig, ax = _axes(path)
    xs = np.array([r[0] for r in rows])
    ys = np.array([r[1] for r in rows])
    values = np.array([r[2] for r in rows])
    if len(rows) >= 4 and np.ptp(values) > 0:
        tri = ax.tricontourf(xs, ys, values, levels=24, cmap="viridis")
        fig.colorbar(tri, ax=ax, label="discrepancy norm")
    else:
        sc = ax.scatter(xs, ys, c=values, s=6, cmap="viridis")
        fig.colorbar(sc, ax=ax, label="discrepancy norm")
    _draw_polygon(ax, poly)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_equator_plot(rows, poly, path: str) -> None:
    """Equator curve inside the reference quadrilateral."""
    plt, fig, ax = _axes(path)
    a = np.array([r[0] for r in rows])
    b = np.array([r[1] for r in rows])
    _draw_polygon(ax, poly)
    ax.plot(a, b, color="tab:blue", linestyle=":", linewidth=1.8, label="equator")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
