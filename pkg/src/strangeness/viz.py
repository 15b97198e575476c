"""Figure rendering for reports: static images written to files.

Everything here converts exact rationals to floats for drawing only; no
computation feeds back into the library.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from mpl_toolkits.mplot3d.art3d import Line3DCollection, Poly3DCollection

_FIG_SIZE = (7.0, 6.0)


def render_scene_figure(s, segments, triples, path, title=""):
    """Triangles (translucent), double segments (red) and triple points
    (black markers) in one 3D view."""
    fig = plt.figure(figsize=_FIG_SIZE)
    ax = fig.add_subplot(111, projection="3d")
    polys = []
    for mesh in s.meshes:
        for a, b, c in mesh.triangles:
            polys.append([tuple(float(x) for x in mesh.vertices[i].coords())
                          for i in (a, b, c)])
    ax.add_collection3d(Poly3DCollection(
        polys, facecolors="lightsteelblue", edgecolors="gray",
        linewidths=0.2, alpha=0.25))
    if segments:
        lines = [[tuple(float(x) for x in p.coords()) for p in seg.endpoints]
                 for seg in segments]
        ax.add_collection3d(Line3DCollection(lines, colors="crimson", linewidths=1.4))
    if triples:
        xs = [float(t.location.x) for t in triples]
        ys = [float(t.location.y) for t in triples]
        zs = [float(t.location.z) for t in triples]
        ax.scatter(xs, ys, zs, color="black", s=24, depthshade=False)
    (lo, hi) = s.bounding_box
    for setter, a, b in ((ax.set_xlim, lo[0], hi[0]),
                         (ax.set_ylim, lo[1], hi[1]),
                         (ax.set_zlim, lo[2], hi[2])):
        pad = (float(b) - float(a)) * 0.05 or 0.5
        setter(float(a) - pad, float(b) + pad)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_ledger_figure(entries, first_flip, path, title="move ledger"):
    """Step plot of St2 and its parity across a move script."""
    st = [entries[0].st_before] + [e.st_after for e in entries] if entries else [0]
    steps = list(range(len(st)))
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7.0, 5.0),
                                   height_ratios=[2, 1])
    ax1.step(steps, st, where="post", color="navy", marker="o")
    ax1.set_ylabel("St2")
    ax1.grid(True, alpha=0.3)
    for i, e in enumerate(entries):
        ax1.annotate(e.event.kind, (i + 0.5, (st[i] + st[i + 1]) / 2),
                     ha="center", fontsize=9)
    ax2.step(steps, [v % 2 for v in st], where="post", color="darkred", marker="o")
    ax2.set_ylabel("parity")
    ax2.set_xlabel("scene index")
    ax2.set_yticks([0, 1])
    ax2.grid(True, alpha=0.3)
    if first_flip is not None:
        ax2.axvline(first_flip + 0.5, color="darkred", linestyle="--", alpha=0.6)
    ax1.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
