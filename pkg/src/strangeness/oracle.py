"""Independent voxel-grid recomputation of region structure and Alexander
numbering, used to validate the arrangement and ray-cast paths.

The grid is exact: cell boundaries are rational, occupancy comes from an
integer separating-axis test, and indices propagate by breadth-first search
over cell centers, stepping across the segment between adjacent centers and
counting its signed crossings exactly.  Disagreement with the main path is
always a bug, never noise.  The oracle never replaces the main path; it costs
O(resolution^3).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from ._geom import geometry
from .arrangement import require_generic
from .errors import ConsistencyError, DegenerateSamplingError
from .exactgeom import (HalfInteger, Point3, _point_on_closed_tri,
                        _segment_tri_class, dot3, hom_from_point, tri_normal)
from .surface import Scene

_MIN_RESOLUTION = 12


@dataclass
class VoxelGrid:
    scene: Scene
    resolution: int
    lo: tuple                    # expanded bounding box corner, scaled-int space
    hi: tuple
    lattice: int                 # grid-space units per cell (cell k spans [k*L, (k+1)*L])
    tris: tuple = field(repr=False)          # (verts, normal) in grid space
    cand: dict = field(repr=False)           # cell -> tuple of triangle ids
    cut: set = field(repr=False)             # cells whose closed box meets the surface
    labels: dict = field(repr=False)         # free cell -> region label
    values: dict = field(repr=False)         # cell -> doubled index at its center

    def is_free(self, cell) -> bool:
        return cell not in self.cut

    def label_count(self) -> int:
        return len(set(self.labels.values()))

    def cells(self):
        r = self.resolution
        return ((i, j, k) for i in range(r) for j in range(r) for k in range(r))


def _axis_projections(verts, normal):
    """Per-triangle data for the 13-axis separating-axis test."""
    edges = [tuple(b - a for a, b in zip(verts[i], verts[(i + 1) % 3])) for i in range(3)]
    axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1), normal]
    for e in edges:
        for unit in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            u = (unit[1] * e[2] - unit[2] * e[1],
                 unit[2] * e[0] - unit[0] * e[2],
                 unit[0] * e[1] - unit[1] * e[0])
            if u != (0, 0, 0):
                axes.append(u)
    out = []
    for u in axes:
        ps = [dot3(u, v) for v in verts]
        out.append((u, min(ps), max(ps)))
    return out


def _box_overlaps(axes_data, blo, bhi) -> bool:
    for u, tmin, tmax in axes_data:
        bmin = bmax = 0
        for k in range(3):
            if u[k] > 0:
                bmin += u[k] * blo[k]
                bmax += u[k] * bhi[k]
            else:
                bmin += u[k] * bhi[k]
                bmax += u[k] * blo[k]
        if tmax < bmin or bmax < tmin:
            return False
    return True


def label_regions(s: Scene, resolution: int) -> VoxelGrid:
    """Build the grid: occupancy, free-cell region labels, center indices."""
    if resolution < _MIN_RESOLUTION:
        raise ValueError(f"resolution must be >= {_MIN_RESOLUTION}")
    require_generic(s)
    geom = geometry(s)
    bb = geom.scaled_bbox()
    lo, hi, spans = [], [], []
    for a in range(3):
        span = bb[a + 3] - bb[a]
        pad = max(span // 8, 1)
        lo.append(bb[a] - pad)
        hi.append(bb[a + 3] + pad)
        spans.append(span + 2 * pad)
    lattice = 1
    for sp in spans:
        lattice = lattice * sp // gcd(lattice, sp)
    res = resolution
    # Grid-space integer coordinates: X_a = (x - lo_a) * res * lattice / span_a,
    # so cell k spans [k * lattice, (k + 1) * lattice].
    mult = [res * lattice // spans[a] for a in range(3)]
    gtris = []
    for t in geom.tris:
        gverts = tuple(tuple((v[a] - lo[a]) * mult[a] for a in range(3)) for v in t.verts)
        gtris.append((gverts, tri_normal(*gverts)))
    cand: dict = {}
    cut = set()
    for tid, (gverts, gnormal) in enumerate(gtris):
        cmin = [max(min(v[a] for v in gverts) // lattice, 0) for a in range(3)]
        cmax = [min(max(v[a] for v in gverts) // lattice, res - 1) for a in range(3)]
        axes_data = _axis_projections(gverts, gnormal)
        for i in range(cmin[0], cmax[0] + 1):
            for j in range(cmin[1], cmax[1] + 1):
                for k in range(cmin[2], cmax[2] + 1):
                    cell = (i, j, k)
                    cand.setdefault(cell, []).append(tid)
                    if cell not in cut:
                        blo = (i * lattice, j * lattice, k * lattice)
                        bhi = ((i + 1) * lattice, (j + 1) * lattice, (k + 1) * lattice)
                        if _box_overlaps(axes_data, blo, bhi):
                            cut.add(cell)
    cand = {c: tuple(ts) for c, ts in cand.items()}
    grid = VoxelGrid(scene=s, resolution=res, lo=tuple(lo), hi=tuple(hi),
                     lattice=lattice, tris=tuple(gtris), cand=cand, cut=cut,
                     labels={}, values={})
    _bfs_values(grid)
    _flood_labels(grid)
    return grid


def _shell_cells(res):
    for i in range(res):
        for j in range(res):
            for k in range(res):
                if i in (0, res - 1) or j in (0, res - 1) or k in (0, res - 1):
                    yield (i, j, k)


def _center_hom(cell, lattice):
    return ((2 * cell[0] + 1) * lattice, (2 * cell[1] + 1) * lattice,
            (2 * cell[2] + 1) * lattice, 2)


def _center_off_surface(grid: VoxelGrid, cell) -> bool:
    h = _center_hom(cell, grid.lattice)
    for tid in grid.cand.get(cell, ()):
        verts, n = grid.tris[tid]
        if _point_on_closed_tri(h, *verts, n):
            return False
    return True


def _bfs_values(grid: VoxelGrid) -> None:
    """Propagate doubled indices over cell centers from the outer shell.

    Steps between adjacent centers cross the shared-face region only; a step
    is taken when the center segment has no degenerate contact and at most
    one transversal crossing.  Crossing along the coorientation normal lowers
    the index by one.  Revisits must agree, or the propagation is flagged.
    """
    res = grid.resolution
    values = grid.values
    q = deque()
    for cell in sorted(_shell_cells(res)):
        if grid.cand.get(cell):
            raise ConsistencyError("outer shell cell overlaps scene geometry")
        if cell not in values:
            values[cell] = -1
            q.append(cell)
    off_surface = {}
    while q:
        cell = q.popleft()
        val = values[cell]
        ch = _center_hom(cell, grid.lattice)
        for axis in range(3):
            for step in (-1, 1):
                ncell = list(cell)
                ncell[axis] += step
                ncell = tuple(ncell)
                if not all(0 <= ncell[a] < res for a in range(3)):
                    continue
                tids = set(grid.cand.get(cell, ())) | set(grid.cand.get(ncell, ()))
                if not tids:
                    nval = val
                else:
                    ok = off_surface.get(ncell)
                    if ok is None:
                        ok = _center_off_surface(grid, ncell)
                        off_surface[ncell] = ok
                    if not ok:
                        continue
                    nh = _center_hom(ncell, grid.lattice)
                    crossings = []
                    deg = False
                    for tid in sorted(tids):
                        verts, n = grid.tris[tid]
                        r = _segment_tri_class(ch, nh, *verts, n)
                        if r[0] == "deg":
                            deg = True
                            break
                        if r[0] == "cross":
                            crossings.append(r[1])
                    if deg or len(crossings) > 1:
                        continue
                    nval = val - 2 * crossings[0] if crossings else val
                if ncell in values:
                    if values[ncell] != nval:
                        raise ConsistencyError(
                            f"inconsistent index propagation at cell {ncell}: "
                            f"{values[ncell]} vs {nval}")
                else:
                    values[ncell] = nval
                    q.append(ncell)


def _flood_labels(grid: VoxelGrid) -> None:
    res = grid.resolution
    labels = grid.labels
    next_label = 0
    # Seed from the outer shell first so the infinite region gets label 0.
    all_cells = sorted(_shell_cells(res)) + [c for c in grid.cells() if c not in grid.cut]
    for seed in all_cells:
        if seed in grid.cut or seed in labels:
            continue
        labels[seed] = next_label
        q = deque([seed])
        while q:
            cell = q.popleft()
            for axis in range(3):
                for step in (-1, 1):
                    ncell = list(cell)
                    ncell[axis] += step
                    ncell = tuple(ncell)
                    if not all(0 <= ncell[a] < res for a in range(3)):
                        continue
                    if ncell in grid.cut or ncell in labels:
                        continue
                    labels[ncell] = next_label
                    q.append(ncell)
        next_label += 1


def oracle_index(g: VoxelGrid, s: Scene, cell) -> HalfInteger:
    """Index of a free cell's region, from the BFS over cell centers."""
    if cell in g.cut:
        raise ValueError(f"cell {cell} is cut by the surface")
    if cell not in g.values:
        raise DegenerateSamplingError(
            f"cell {cell} unreached by index propagation; raise the resolution")
    return HalfInteger(g.values[cell])


def _grid_hom_of_point(g: VoxelGrid, p: Point3):
    geom = geometry(g.scene)
    m = geom.scale
    res = g.resolution
    coords = []
    for a, x in enumerate(p.coords()):
        span = g.hi[a] - g.lo[a]
        coords.append((x * m - g.lo[a]) * res * g.lattice / span)
    return hom_from_point(Point3(*coords))


def index_at_point(g: VoxelGrid, p: Point3) -> HalfInteger:
    """Oracle index of the region containing an off-surface point.

    Prefers a valued cell center joined to p by a crossing-free segment
    (provably the same region).  When the point sits in a sliver no lattice
    center shares, it instead walks one exact segment to a valued center and
    adjusts by the signed crossings, using the same sign convention as the
    breadth-first propagation.
    """
    h = _grid_hom_of_point(g, p)
    L = g.lattice
    res = g.resolution
    home = tuple(min(max(h[a] // (h[3] * L), 0), res - 1) for a in range(3))
    if g.is_free(home) and home in g.values:
        # The closed cell is disjoint from the surface, so everything in it
        # shares the center's region.
        inside = [home[a] * L * h[3] <= h[a] <= (home[a] + 1) * L * h[3] for a in range(3)]
        if all(inside):
            return HalfInteger(g.values[home])
    fallback = None
    for radius in range(0, 5):
        shell = []
        for di in range(-radius, radius + 1):
            for dj in range(-radius, radius + 1):
                for dk in range(-radius, radius + 1):
                    if max(abs(di), abs(dj), abs(dk)) != radius:
                        continue
                    c = (home[0] + di, home[1] + dj, home[2] + dk)
                    if all(0 <= c[a] < res for a in range(3)) and c in g.values:
                        shell.append(c)
        for c in sorted(shell):
            ch = _center_hom(c, L)
            deg = False
            sigma_sum = 0
            crossings = 0
            for tid in _segment_candidates(g, h, ch):
                verts, n = g.tris[tid]
                r = _segment_tri_class(h, ch, *verts, n)
                if r[0] == "deg":
                    deg = True
                    break
                if r[0] == "cross":
                    crossings += 1
                    sigma_sum += r[1]
            if deg:
                continue
            if crossings == 0:
                return HalfInteger(g.values[c])
            if fallback is None:
                # ind(p) = ind(center) + sum of signed crossings along p -> center.
                fallback = g.values[c] + 2 * sigma_sum
    if fallback is not None:
        return HalfInteger(fallback)
    raise DegenerateSamplingError(
        "no valued cell center visible from the query point; raise the resolution")


def _segment_candidates(g: VoxelGrid, h1, h2):
    L = g.lattice
    res = g.resolution
    b1 = [h1[a] // (h1[3] * L) for a in range(3)]
    b2 = [h2[a] // (h2[3] * L) for a in range(3)]
    tids = set()
    for i in range(max(min(b1[0], b2[0]), 0), min(max(b1[0], b2[0]), res - 1) + 1):
        for j in range(max(min(b1[1], b2[1]), 0), min(max(b1[1], b2[1]), res - 1) + 1):
            for k in range(max(min(b1[2], b2[2]), 0), min(max(b1[2], b2[2]), res - 1) + 1):
                tids.update(g.cand.get((i, j, k), ()))
    return sorted(tids)


def compare_with_ray_cast(g: VoxelGrid, points, indices) -> list:
    """Mismatches between oracle indices and precomputed ray-cast indices."""
    out = []
    for p, idx in zip(points, indices):
        got = index_at_point(g, p)
        if got != idx:
            out.append((p, idx, got))
    return out
