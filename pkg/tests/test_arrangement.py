from fractions import Fraction as F

import pytest

from strangeness.arrangement import (double_segments, genericity_check,
                                     stitch_curves, triple_points)
from strangeness.errors import GenericityError
from strangeness.exactgeom import pt, vec
from strangeness.surface import apply, gen_sphere, scale, scene, translate


def _segment_graph_components(segs):
    """Independent connectivity oracle: union-find over shared endpoints."""
    parent = list(range(len(segs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_end = {}
    for i, s in enumerate(segs):
        for p in s.endpoints:
            by_end.setdefault(p.coords(), []).append(i)
    for ids in by_end.values():
        for j in ids[1:]:
            ri, rj = find(ids[0]), find(j)
            if ri != rj:
                parent[rj] = ri
    return len({find(i) for i in range(len(segs))})


def test_disjoint_spheres_have_no_segments():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1, "a"),
              gen_sphere(pt(5, 0, 0), 1, 1, "b"))
    assert double_segments(s) == []
    assert stitch_curves([]) == []
    assert triple_points(s) == []


def test_two_spheres_one_double_curve(catalog):
    s = catalog("two-spheres")
    segs = double_segments(s)
    assert len(segs) > 0
    curves = stitch_curves(segs)
    assert len(curves) == 1
    # Independent oracle: the segment graph has one connected component.
    assert _segment_graph_components(segs) == 1
    assert triple_points(s) == []


def test_three_slabs_structure(catalog):
    s = catalog("three-slabs")
    assert genericity_check(s).is_generic
    segs = double_segments(s)
    curves = stitch_curves(segs)
    tps = triple_points(s)
    assert len(tps) == 8
    locs = {t.location.coords() for t in tps}
    q = F(1, 4)
    assert locs == {(sx * q, sy * q, sz * q)
                    for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)}
    assert _segment_graph_components(segs) == len(curves)
    assert len(curves) == 4


def test_three_spheres_two_triple_points(catalog):
    s = catalog("three-spheres")
    tps = triple_points(s)
    assert len(tps) == 2
    curves = stitch_curves(double_segments(s))
    assert len(curves) == 3


def test_triple_point_normals_independent(catalog):
    from strangeness.exactgeom import det3
    for t in triple_points(catalog("three-slabs")):
        n1, n2, n3 = (tuple(v.coords()) for v in t.plane_normals)
        assert det3(n1, n2, n3) != 0


def test_every_triple_point_on_three_segments(catalog):
    s = catalog("three-slabs")
    segs = double_segments(s)
    curves = stitch_curves(segs)
    seg_to_curve = {}
    for ci, c in enumerate(curves):
        for sid in c.segment_ids:
            seg_to_curve[sid] = ci
    for t in triple_points(s):
        hosting = []
        for sid, seg in enumerate(segs):
            a, b = seg.endpoints
            d = b - a
            x = t.location - a
            if d.cross(x).is_zero():
                lo = min(a.coords(), b.coords())
                hi = max(a.coords(), b.coords())
                if lo <= t.location.coords() <= hi:
                    hosting.append(sid)
        assert len(hosting) == 3
        assert len({seg_to_curve[sid] for sid in hosting}) == 3


def test_determinism(catalog):
    from strangeness.moves import canned_scene
    s1 = canned_scene("three-slabs")
    s2 = canned_scene("three-slabs")
    d1 = [(d.triangle_pair, tuple(p.coords() for p in d.endpoints))
          for d in double_segments(s1)]
    d2 = [(d.triangle_pair, tuple(p.coords() for p in d.endpoints))
          for d in double_segments(s2)]
    assert d1 == d2
    t1 = [t.location.coords() for t in triple_points(s1)]
    t2 = [t.location.coords() for t in triple_points(s2)]
    assert t1 == t2


def test_triple_points_transform_with_scene(catalog):
    s = catalog("three-slabs")
    base = [t.location.coords() for t in triple_points(s)]
    v = vec(F(1, 3), F(2, 7), F(-5, 13))
    moved = apply(translate(v), s)
    got = [t.location.coords() for t in triple_points(moved)]
    assert got == sorted((x + v.x, y + v.y, z + v.z) for x, y, z in base)
    scaled = apply(scale(F(7, 3)), s)
    got = [t.location.coords() for t in triple_points(scaled)]
    assert got == sorted((x * F(7, 3), y * F(7, 3), z * F(7, 3)) for x, y, z in base)


def test_tangent_spheres_not_generic(catalog):
    rep = genericity_check(catalog("tangent-spheres"))
    assert not rep.is_generic
    assert rep.witnesses


def test_four_slabs_quadruple_point_witness(catalog):
    rep = genericity_check(catalog("four-slabs"))
    assert not rep.is_generic
    assert any("four or more sheets" in w[0] for w in rep.witnesses)
    q = F(1, 4)
    assert any(w[1] is not None and w[1].coords() == (q, q, q)
               for w in rep.witnesses)


def test_double_segments_raises_on_non_generic(catalog):
    with pytest.raises(GenericityError):
        double_segments(catalog("tangent-spheres"))


def test_genericity_check_is_a_value(catalog):
    rep = genericity_check(catalog("sphere"))
    assert rep.is_generic
    assert rep.witnesses == ()


def test_symmetric_slabs_are_degenerate():
    # Three origin-centered square slabs put the face-quad triangulation
    # diagonals exactly through the corner triple points: a PL degeneracy.
    # The canned three-slabs scene breaks the lateral symmetry for this
    # reason.
    from strangeness.surface import gen_slab
    s = scene(gen_slab(pt(0, 0, 0), "x", F(1, 4), 2, "x"),
              gen_slab(pt(0, 0, 0), "y", F(1, 4), F(11, 5), "y"),
              gen_slab(pt(0, 0, 0), "z", F(1, 4), F(12, 5), "z"))
    assert not genericity_check(s).is_generic


def test_stitch_rejects_open_chain():
    from strangeness.arrangement import DoubleSegment
    from strangeness.errors import ConsistencyError
    segs = [DoubleSegment((pt(0, 0, 0), pt(1, 0, 0)), (0, 1)),
            DoubleSegment((pt(1, 0, 0), pt(2, 0, 0)), (0, 2))]
    with pytest.raises(ConsistencyError):
        stitch_curves(segs)
