"""Per-scene integer geometry context shared by arrangement, numbering and
the voxel oracle.

All vertex coordinates of a scene are rescaled onto one integer lattice; the
exact predicates then run on plain (big)ints.  Query points that are not
lattice points travel as homogeneous integer 4-tuples.  The context also owns
a bounding-volume tree over the triangles, used purely as a broad phase: it
must never change any output, only skip guaranteed-empty pair tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactgeom import (Point3, _point_on_closed_tri, _segment_tri_class,
                        hom_from_point, tri_normal)
from .surface import Scene


@dataclass
class TriRec:
    tid: int
    mesh: int
    local: int
    verts: tuple          # three integer coordinate triples
    vids: tuple           # global vertex ids (for adjacency exclusion)
    normal: tuple         # integer coorientation normal
    bbox: tuple           # (minx, miny, minz, maxx, maxy, maxz) ints


class AabbTree:
    """Static median-split AABB tree over triangle ids."""

    __slots__ = ("nodes",)
    _LEAF = 8

    def __init__(self, tris: list[TriRec]):
        # node: (bbox, left, right, items); leaves carry items, inner nodes children.
        self.nodes = []
        if tris:
            self._build(list(range(len(tris))), tris)

    def _build(self, ids, tris) -> int:
        bb = _merge_bboxes([tris[i].bbox for i in ids])
        idx = len(self.nodes)
        self.nodes.append(None)
        if len(ids) <= self._LEAF:
            self.nodes[idx] = (bb, -1, -1, tuple(ids))
            return idx
        spans = [bb[3] - bb[0], bb[4] - bb[1], bb[5] - bb[2]]
        axis = spans.index(max(spans))
        ids.sort(key=lambda i: tris[i].bbox[axis] + tris[i].bbox[axis + 3])
        mid = len(ids) // 2
        left = self._build(ids[:mid], tris)
        right = self._build(ids[mid:], tris)
        self.nodes[idx] = (bb, left, right, ())
        return idx

    def query(self, bbox) -> list[int]:
        """All triangle ids whose boxes overlap the query box."""
        out = []
        if not self.nodes:
            return out
        stack = [0]
        qx0, qy0, qz0, qx1, qy1, qz1 = bbox
        while stack:
            bb, left, right, items = self.nodes[stack.pop()]
            if (bb[0] > qx1 or bb[3] < qx0 or bb[1] > qy1 or bb[4] < qy0
                    or bb[2] > qz1 or bb[5] < qz0):
                continue
            if items:
                out.extend(items)
            else:
                stack.append(left)
                stack.append(right)
        return out


def _merge_bboxes(boxes):
    return (min(b[0] for b in boxes), min(b[1] for b in boxes),
            min(b[2] for b in boxes), max(b[3] for b in boxes),
            max(b[4] for b in boxes), max(b[5] for b in boxes))


class SceneGeometry:
    def __init__(self, s: Scene):
        self.scene = s
        m = 1
        for mesh in s.meshes:
            for v in mesh.vertices:
                for q in v.coords():
                    m = m * q.denominator // gcd(m, q.denominator)
        self.scale = m
        self.verts = []
        self.tris: list[TriRec] = []
        self.mesh_tri_ranges = []
        for mi, mesh in enumerate(s.meshes):
            off = len(self.verts)
            for v in mesh.vertices:
                self.verts.append((int(v.x * m), int(v.y * m), int(v.z * m)))
            start = len(self.tris)
            for li, (a, b, c) in enumerate(mesh.triangles):
                va, vb, vc = self.verts[off + a], self.verts[off + b], self.verts[off + c]
                n = tri_normal(va, vb, vc)
                bbox = (min(va[0], vb[0], vc[0]), min(va[1], vb[1], vc[1]),
                        min(va[2], vb[2], vc[2]), max(va[0], vb[0], vc[0]),
                        max(va[1], vb[1], vc[1]), max(va[2], vb[2], vc[2]))
                self.tris.append(TriRec(len(self.tris), mi, li, (va, vb, vc),
                                        (off + a, off + b, off + c), n, bbox))
            self.mesh_tri_ranges.append((start, len(self.tris)))
        self.tree = AabbTree(self.tris)

    # -- coordinate plumbing ------------------------------------------------

    def hom(self, p: Point3):
        """Homogeneous integer coordinates of a rational point in scaled space."""
        return hom_from_point(Point3(p.x * self.scale, p.y * self.scale,
                                     p.z * self.scale))

    def unscale_hom(self, h) -> Point3:
        x, y, z, w = h
        d = w * self.scale
        return Point3(Fraction(x, d), Fraction(y, d), Fraction(z, d))

    def scaled_bbox(self):
        (x0, y0, z0), (x1, y1, z1) = self.scene.bounding_box
        m = self.scale
        return (int(x0 * m), int(y0 * m), int(z0 * m),
                int(x1 * m), int(y1 * m), int(z1 * m))

    def pairs_excluded(self, t1: TriRec, t2: TriRec) -> bool:
        """Triangle pairs sharing a mesh vertex are triangulation artifacts."""
        return t1.mesh == t2.mesh and bool(set(t1.vids) & set(t2.vids))

    # -- exact queries ------------------------------------------------------

    def candidates_for_hom(self, h, pad: int = 0):
        x, y, z, w = h
        bb = (x // w - pad, y // w - pad, z // w - pad,
              -((-x) // w) + pad, -((-y) // w) + pad, -((-z) // w) + pad)
        return self.tree.query(bb)

    def candidates_for_segment(self, h1, h2):
        b1 = self._hom_bbox(h1)
        b2 = self._hom_bbox(h2)
        return self.tree.query((min(b1[0], b2[0]), min(b1[1], b2[1]),
                                min(b1[2], b2[2]), max(b1[3], b2[3]),
                                max(b1[4], b2[4]), max(b1[5], b2[5])))

    @staticmethod
    def _hom_bbox(h):
        x, y, z, w = h
        return (x // w, y // w, z // w, -((-x) // w), -((-y) // w), -((-z) // w))

    def point_on_surface(self, h) -> bool:
        """Does the point lie on any triangle's closure?"""
        for tid in self.candidates_for_hom(h):
            t = self.tris[tid]
            if _point_on_closed_tri(h, *t.verts, t.normal):
                return True
        return False

    def segment_classification(self, h1, h2, skip=()):
        """Classify segment [h1, h2] against every nearby triangle.

        Returns ("deg", tid) on the first degenerate contact, otherwise
        ("ok", [(tid, sigma), ...]) listing transversal interior crossings,
        sigma = +1 when the step h1 -> h2 agrees with the coorientation normal.
        """
        crossings = []
        for tid in self.candidates_for_segment(h1, h2):
            if tid in skip:
                continue
            t = self.tris[tid]
            res = _segment_tri_class(h1, h2, *t.verts, t.normal)
            if res[0] == "deg":
                return ("deg", tid)
            if res[0] == "cross":
                crossings.append((tid, res[1]))
        return ("ok", crossings)


def geometry(s: Scene) -> SceneGeometry:
    if "geom" not in s._cache:
        s._cache["geom"] = SceneGeometry(s)
    return s._cache["geom"]
