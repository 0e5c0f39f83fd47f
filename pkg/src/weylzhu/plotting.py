"""
Figures written next to the delimited CLI output.

Only class membership is drawn; there is no numeric shading.  SVG output is
made byte-stable by fixing the hash salt and dropping the date metadata.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from .exactmath import GaussRat
from .flow import central_charge
from .grading import Tag, classify, mu_grid

TAG_COLORS = {
    Tag.OMEGA_VOA: "#4c72b0",
    Tag.STRIP_CONF_OMEGA: "#dd8452",
    Tag.NOT_OMEGA_GENERATED: "#d9d9d9",
}
TAG_ORDER = [Tag.OMEGA_VOA, Tag.STRIP_CONF_OMEGA, Tag.NOT_OMEGA_GENERATED]

DEFAULT_RE = ("-1/2", "3/2", "1/40")
DEFAULT_IM = ("-1", "1", "1/40")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "weylzhu"
    return plt


def _save(fig, path: str):
    fmt = str(path).rsplit(".", 1)[-1].lower()
    meta = {"Date": None} if fmt == "svg" else None
    fig.savefig(path, format=fmt, metadata=meta, bbox_inches="tight")


def region_map(path: str, re_spec: Tuple = DEFAULT_RE, im_spec: Tuple = DEFAULT_IM,
               points: Sequence[GaussRat] = None) -> dict:
    """Draw the mu-plane tags as cells of the exact grid and return tag counts."""
    plt = _pyplot()
    import numpy as np
    from matplotlib.colors import ListedColormap
    from matplotlib.patches import Patch

    if points is None:
        points = mu_grid(re_spec, im_spec)
    res = sorted({p.re for p in points})
    ims = sorted({p.im for p in points})
    col = {x: i for i, x in enumerate(res)}
    row = {y: i for i, y in enumerate(ims)}
    dx = float(res[1] - res[0]) if len(res) > 1 else 1.0
    dy = float(ims[1] - ims[0]) if len(ims) > 1 else 1.0
    counts = {t.value: 0 for t in TAG_ORDER}

    # cells not in ``points`` stay masked
    cells = np.ma.masked_all((len(ims), len(res)))
    for mu in points:
        tag = classify(mu).tag
        counts[tag.value] += 1
        cells[row[mu.im], col[mu.re]] = TAG_ORDER.index(tag)
    xs = [float(x) - dx / 2 for x in res] + [float(res[-1]) + dx / 2]
    ys = [float(y) - dy / 2 for y in ims] + [float(ims[-1]) + dy / 2]

    fig, ax = plt.subplots(figsize=(6, 5.5))
    cmap = ListedColormap([TAG_COLORS[t] for t in TAG_ORDER])
    ax.pcolormesh(xs, ys, cells, cmap=cmap, vmin=-0.5, vmax=len(TAG_ORDER) - 0.5, shading="flat")
    ax.set_aspect("equal")
    ax.set_xlabel("Re(mu)")
    ax.set_ylabel("Im(mu)")
    ax.set_title("Conformal-flow regions of the Weyl vertex algebra")
    handles = [Patch(facecolor=TAG_COLORS[t], label=t.value) for t in TAG_ORDER if counts[t.value]]
    ax.legend(handles=handles, loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=1, frameon=False)
    _save(fig, path)
    plt.close(fig)
    return counts


def central_charge_plot(path: str, re_spec: Tuple = DEFAULT_RE) -> None:
    """c_mu along the real axis."""
    plt = _pyplot()
    from .grading import rat_range

    xs = rat_range(*re_spec)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([float(x) for x in xs], [float(central_charge(x).re) for x in xs], color="black", lw=1.2)
    ax.axvspan(0, 1, color=TAG_COLORS[Tag.OMEGA_VOA], alpha=0.15, lw=0)
    ax.set_xlabel("mu (real)")
    ax.set_ylabel("central charge")
    _save(fig, path)
    plt.close(fig)
