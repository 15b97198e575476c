"""Self-intersection structure of a scene: double-curve segments, stitched
double curves, triple points, and the PL genericity decision.

Everything is computed pairwise with exact integer predicates; a
bounding-volume tree prunes the candidate pairs but never changes output.
Degenerate configurations abort analysis (or show up as genericity witnesses)
rather than being perturbed away.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._geom import SceneGeometry, geometry
from .errors import ConsistencyError, GenericityError
from .exactgeom import (Vector3, _interval_of_triangle, _tri_tri_int, add3,
                        cross3, det3, dot3, hom_normalize, mul3, sign, sub3)
from .surface import Scene, require_valid


@dataclass(frozen=True)
class DoubleSegment:
    endpoints: tuple            # (Point3, Point3)
    triangle_pair: tuple        # global triangle ids (i, j), i < j


@dataclass(frozen=True)
class DoubleCurve:
    segment_ids: tuple          # cyclic, deterministic start and direction


@dataclass(frozen=True)
class TriplePoint:
    location: Point3
    triangle_triple: tuple      # global triangle ids, sorted
    plane_normals: tuple        # coorientation normals (Vector3) of the three triangles


@dataclass(frozen=True)
class GenericityReport:
    verdict: str                # "Generic" | "NonGeneric"
    witnesses: tuple            # (description, location-or-None) pairs

    @property
    def is_generic(self) -> bool:
        return self.verdict == "Generic"


@dataclass
class _SegRec:
    sid: int
    pair: tuple
    h1: tuple                   # normalized homogeneous endpoints in scaled space
    h2: tuple


# ---------------------------------------------------------------------------
# Pair scan
# ---------------------------------------------------------------------------

def _candidate_pairs(geom: SceneGeometry):
    pairs = set()
    for t in geom.tris:
        for j in geom.tree.query(t.bbox):
            if j <= t.tid:
                continue
            u = geom.tris[j]
            if geom.pairs_excluded(t, u):
                continue
            pairs.add((t.tid, j))
    return sorted(pairs)


def _scan(s: Scene) -> dict:
    """Pairwise intersection scan plus triple-point collation, cached."""
    if "scan" in s._cache:
        return s._cache["scan"]
    require_valid(s)
    geom = geometry(s)
    witnesses = []
    segrecs: list[_SegRec] = []
    for i, j in _candidate_pairs(geom):
        t, u = geom.tris[i], geom.tris[j]
        res = _tri_tri_int(t.verts, t.normal, u.verts, u.normal)
        if res[0] == "contact":
            loc = None
            witnesses.append((f"non-generic contact between triangles {i} and {j}: {res[1]}", loc))
        elif res[0] == "segment":
            h1 = hom_normalize(res[1])
            h2 = hom_normalize(res[2])
            if h2 < h1:
                h1, h2 = h2, h1
            segrecs.append(_SegRec(len(segrecs), (i, j), h1, h2))
    witnesses.extend(_adjacent_pair_witnesses(geom))
    triples, tri_witnesses = _collate_triples(geom, segrecs)
    witnesses.extend(tri_witnesses)
    out = {
        "geom": geom,
        "witnesses": witnesses,
        "segrecs": segrecs,
        "triples": triples,
    }
    s._cache["scan"] = out
    return out


def _adjacent_pair_witnesses(geom: SceneGeometry):
    """Same-mesh triangle pairs sharing a vertex or edge must intersect in
    exactly the shared simplex."""
    out = []
    by_vert = {}
    for t in geom.tris:
        for v in t.vids:
            by_vert.setdefault(v, []).append(t.tid)
    seen = set()
    for tids in by_vert.values():
        for ai in range(len(tids)):
            for bi in range(ai + 1, len(tids)):
                key = (min(tids[ai], tids[bi]), max(tids[ai], tids[bi]))
                if key in seen:
                    continue
                seen.add(key)
                t, u = geom.tris[key[0]], geom.tris[key[1]]
                shared = set(t.vids) & set(u.vids)
                msg = _check_adjacent(geom, t, u, shared)
                if msg:
                    out.append((f"triangles {key[0]} and {key[1]}: {msg}", None))
    return out


def _check_adjacent(geom, t, u, shared):
    if len(shared) >= 3:
        return "duplicate triangle"
    tv = dict(zip(t.vids, t.verts))
    uv = dict(zip(u.vids, u.verts))
    coplanar = all(
        sign(det3(sub3(t.verts[1], t.verts[0]), sub3(t.verts[2], t.verts[0]),
                  sub3(p, t.verts[0]))) == 0
        for p in u.verts)
    if len(shared) == 2:
        a, b = sorted(shared)
        c = next(p for v, p in tv.items() if v not in shared)
        d = next(p for v, p in uv.items() if v not in shared)
        if coplanar:
            g = cross3(t.normal, sub3(tv[b], tv[a]))
            s1 = sign(sum(gi * (ci - ai) for gi, ci, ai in zip(g, c, tv[a])))
            s2 = sign(sum(gi * (di - ai) for gi, di, ai in zip(g, d, tv[a])))
            if s1 == s2:
                return "coplanar fold across a shared edge"
        return None
    # Single shared vertex.
    a = next(iter(shared))
    if coplanar:
        if _coplanar_share_vertex_overlap(t, u, tv[a]):
            return "coplanar triangles overlap beyond their shared vertex"
        return None
    d = cross3(t.normal, u.normal)
    if d == (0, 0, 0):
        return None                      # parallel distinct planes: only the vertex
    c1 = dot3(t.normal, t.verts[0])
    c2 = dot3(u.normal, u.verts[0])
    p0num = add3(mul3(cross3(u.normal, d), c1), mul3(cross3(d, t.normal), c2))
    w = dot3(d, d)
    lo1, hi1, _, _ = _interval_of_triangle(t.verts, t.normal, p0num, w, d)
    lo2, hi2, _, _ = _interval_of_triangle(u.verts, u.normal, p0num, w, d)
    if lo1 is None or lo2 is None:
        return None
    alpha, beta = max(lo1, lo2), min(hi1, hi2)
    if alpha < beta:
        return "triangles sharing a vertex intersect beyond it"
    return None


def _coplanar_share_vertex_overlap(t, u, shared_vert) -> bool:
    n = t.normal
    axis = max(range(3), key=lambda i: abs(n[i]))
    i, j = [k for k in range(3) if k != axis]

    def proj(tri):
        return [(v[i], v[j]) for v in tri.verts]

    p1, p2 = proj(t), proj(u)
    sv = (shared_vert[i], shared_vert[j])

    def orient(a, b, c):
        return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    def inside_closed(poly, x):
        o = orient(poly[0], poly[1], poly[2])
        ss = [orient(poly[k], poly[(k + 1) % 3], x) * o for k in range(3)]
        return all(v >= 0 for v in ss)

    for x in p2:
        if x != sv and inside_closed(p1, x):
            return True
    for x in p1:
        if x != sv and inside_closed(p2, x):
            return True
    for k in range(3):
        a, b = p1[k], p1[(k + 1) % 3]
        for l in range(3):
            c, d = p2[l], p2[(l + 1) % 3]
            o1, o2 = orient(a, b, c), orient(a, b, d)
            o3, o4 = orient(c, d, a), orient(c, d, b)
            if o1 * o2 < 0 and o3 * o4 < 0:
                return True
    return False


# ---------------------------------------------------------------------------
# Triple points
# ---------------------------------------------------------------------------

def _collate_triples(geom: SceneGeometry, segrecs):
    """Cross double segments on their host triangles; collate crossing points."""
    witnesses = []
    on_tri = {}
    for rec in segrecs:
        for tid in rec.pair:
            on_tri.setdefault(tid, []).append(rec)
    found = {}          # hom point -> {"tris": set, "hits": int}
    for tid in sorted(on_tri):
        host = geom.tris[tid]
        n = host.normal
        axis = max(range(3), key=lambda i: abs(n[i]))
        i, j = [k for k in range(3) if k != axis]
        recs = on_tri[tid]
        flat = []
        for rec in recs:
            p = (rec.h1[i], rec.h1[j], rec.h1[3])
            q = (rec.h2[i], rec.h2[j], rec.h2[3])
            other = rec.pair[0] if rec.pair[1] == tid else rec.pair[1]
            flat.append((rec, p, q, other))
        for a in range(len(flat)):
            rec1, p1, q1, o1 = flat[a]
            for b in range(a + 1, len(flat)):
                rec2, p2, q2, o2 = flat[b]
                if o1 == o2:
                    continue
                if rec1.h1 in (rec2.h1, rec2.h2) or rec1.h2 in (rec2.h1, rec2.h2):
                    continue        # double curve continuing across a mesh edge
                d1 = det3(p1, q1, p2)
                d2 = det3(p1, q1, q2)
                d3 = det3(p2, q2, p1)
                d4 = det3(p2, q2, q1)
                s1, s2, s3, s4 = sign(d1), sign(d2), sign(d3), sign(d4)
                if s1 == 0 and s2 == 0 and s3 == 0 and s4 == 0:
                    witnesses.append((
                        f"collinear double segments on triangle {tid} "
                        f"(pairs {rec1.pair} and {rec2.pair})",
                        geom.unscale_hom(rec1.h1)))
                    continue
                if s1 * s2 < 0 and s3 * s4 < 0:
                    key = _segment_cross_point(rec1.h1, rec1.h2, d3, d4)
                    entry = found.setdefault(key, {"tris": set(), "hits": 0})
                    entry["tris"].update((tid, o1, o2))
                    entry["hits"] += 1
                elif (s1 * s2 < 0 and (s3 == 0 or s4 == 0)) or \
                        (s3 * s4 < 0 and (s1 == 0 or s2 == 0)) or \
                        ((s1 == 0 or s2 == 0) and (s3 == 0 or s4 == 0)):
                    witnesses.append((
                        f"double segments touch without crossing on triangle {tid} "
                        f"(pairs {rec1.pair} and {rec2.pair})",
                        geom.unscale_hom(rec1.h1)))
    triples = []
    for key in sorted(found):
        info = found[key]
        tris = sorted(info["tris"])
        if len(tris) > 3:
            witnesses.append((
                f"four or more sheets through one point (triangles {tris})",
                geom.unscale_hom(key)))
            continue
        if info["hits"] != 3:
            raise ConsistencyError(
                f"triple point {key} discovered {info['hits']} times, expected 3")
        n1, n2, n3 = (geom.tris[t].normal for t in tris)
        if det3(n1, n2, n3) == 0:
            witnesses.append((
                f"triple point with dependent sheet normals (triangles {tris})",
                geom.unscale_hom(key)))
            continue
        triples.append((key, tuple(tris)))
    return triples, witnesses


def _segment_cross_point(h1, h2, d3, d4):
    """Exact crossing point of two properly crossing coplanar segments.

    d3 and d4 are the homogeneous 2D orientation determinants of h1 and h2
    against the other segment; the zero of the linear side function along
    [h1, h2] sits at t = d3*w2 / (d3*w2 - d4*w1).
    """
    w1, w2 = h1[3], h2[3]
    tn = d3 * w2
    td = d3 * w2 - d4 * w1
    num = tuple(h1[k] * w2 * (td - tn) + h2[k] * w1 * tn for k in range(3))
    return hom_normalize((num[0], num[1], num[2], w1 * w2 * td))


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def genericity_check(s: Scene) -> GenericityReport:
    """Decide PL genericity; degenerate contacts become witnesses, not errors."""
    scan = _scan(s)
    if scan["witnesses"]:
        return GenericityReport("NonGeneric", tuple(scan["witnesses"]))
    return GenericityReport("Generic", ())


def require_generic(s: Scene) -> dict:
    scan = _scan(s)
    if scan["witnesses"]:
        desc, loc = scan["witnesses"][0]
        raise GenericityError(desc, witness=loc)
    return scan


def double_segments(s: Scene) -> list[DoubleSegment]:
    """All interior-interior intersection segments, sorted by triangle pair."""
    scan = require_generic(s)
    geom = scan["geom"]
    out = [DoubleSegment((geom.unscale_hom(r.h1), geom.unscale_hom(r.h2)), r.pair)
           for r in scan["segrecs"]]
    return sorted(out, key=lambda d: d.triangle_pair)


def stitch_curves(segs: list[DoubleSegment]) -> list[DoubleCurve]:
    """Partition double segments into closed polygonal loops.

    Every endpoint must be shared by exactly two segments; an open chain or a
    branch point signals an upstream genericity or validation bug.
    """
    by_end = {}
    for sid, seg in enumerate(segs):
        for p in seg.endpoints:
            by_end.setdefault(p.coords(), []).append(sid)
    for key, sids in by_end.items():
        if len(sids) != 2:
            raise ConsistencyError(
                f"double-curve endpoint {key} shared by {len(sids)} segments, expected 2")
    curves = []
    used = [False] * len(segs)
    for start in range(len(segs)):
        if used[start]:
            continue
        loop = [start]
        used[start] = True
        here = segs[start].endpoints[1].coords()
        first = segs[start].endpoints[0].coords()
        while here != first:
            a, b = by_end[here]
            nxt = b if used[a] or a == loop[-1] else a
            if used[nxt]:
                raise ConsistencyError("open double-curve chain detected")
            loop.append(nxt)
            used[nxt] = True
            e1, e2 = segs[nxt].endpoints
            here = e2.coords() if e1.coords() == here else e1.coords()
        curves.append(DoubleCurve(_canonical_cycle(loop)))
    return curves


def _canonical_cycle(loop):
    k = loop.index(min(loop))
    rot = loop[k:] + loop[:k]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def triple_points(s: Scene) -> list[TriplePoint]:
    """Points in the open interiors of exactly three triangles, in
    deterministic location order."""
    scan = require_generic(s)
    geom = scan["geom"]
    out = []
    for key, tris in scan["triples"]:
        loc = geom.unscale_hom(key)
        normals = tuple(_scene_normal(s, geom, t) for t in tris)
        out.append(TriplePoint(loc, tris, normals))
    out.sort(key=lambda t: t.location.coords())
    return out


def _scene_normal(s: Scene, geom: SceneGeometry, tid: int) -> Vector3:
    rec = geom.tris[tid]
    mesh = s.meshes[rec.mesh]
    a, b, c = (mesh.vertices[k] for k in mesh.triangles[rec.local])
    return (b - a).cross(c - a)
