import random
from fractions import Fraction as F

import pytest

from strangeness._geom import geometry
from strangeness.arrangement import triple_points
from strangeness.errors import ConsistencyError
from strangeness.exactgeom import HalfInteger, pt
from strangeness.numbering import (alexander_index, index_opposite_pair,
                                   octant_samples, st2, triple_point_index,
                                   SIGN_PATTERNS)
from strangeness.surface import gen_sphere, reverse_all, scene

LAW = (0, 1, 1, 1, 2, 2, 2, 3)


def test_point_on_surface_rejected():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 0))
    with pytest.raises(ValueError):
        alexander_index(pt(1, 0, 0), s, 3)     # a vertex of the octahedron


def test_seed_independence(catalog):
    s = catalog("three-slabs")
    probes = [pt(0, 0, 0), pt(F(1, 3), F(1, 5), F(1, 7)), pt(5, 5, 5),
              pt(0, F(3, 7), F(-9, 5))]
    for p in probes:
        values = {alexander_index(p, s, seed).doubled for seed in range(10)}
        assert len(values) == 1


def test_segment_crossing_parity_property(catalog):
    # Two points joined by a segment crossing no triangle share an index;
    # crossing exactly one changes it by the coorientation sign.
    s = catalog("three-slabs")
    geom = geometry(s)
    rng = random.Random(20240803)
    n = 1 << 10
    checked = 0
    while checked < 25:
        coords = [F(rng.randrange(-3 * n, 4 * n), n) for _ in range(6)]
        p, q = pt(*coords[:3]), pt(*coords[3:])
        hp, hq = geom.hom(p), geom.hom(q)
        if geom.point_on_surface(hp) or geom.point_on_surface(hq):
            continue
        res = geom.segment_classification(hp, hq)
        if res[0] != "ok" or len(res[1]) > 1:
            continue
        ip = alexander_index(p, s, 3)
        iq = alexander_index(q, s, 3)
        if not res[1]:
            assert ip == iq
        else:
            sigma = res[1][0][1]
            assert iq.doubled == ip.doubled - 2 * sigma
        checked += 1


def test_octant_samples_distinct_patterns_and_stability(catalog):
    s = catalog("three-slabs")
    t = triple_points(s)[0]
    samples = octant_samples(t, s)
    assert set(samples) == set(SIGN_PATTERNS)
    # Sign pattern of (sample - t) against the coorientation normals.
    for pat, p in samples.items():
        d = p - t.location
        for si, n in zip(pat, t.plane_normals):
            dot = d.dot(n)
            assert (dot > 0) == (si > 0) and dot != 0


def test_octant_sample_halving_keeps_indices(catalog):
    s = catalog("three-slabs")
    t = triple_points(s)[0]
    samples = octant_samples(t, s)
    for pat, p in samples.items():
        mid = pt((p.x + t.location.x) / 2, (p.y + t.location.y) / 2,
                 (p.z + t.location.z) / 2)
        assert alexander_index(mid, s, 3) == alexander_index(p, s, 3)


def test_eight_region_law_and_integrality(catalog):
    s = catalog("three-slabs")
    for i, t in enumerate(triple_points(s)):
        ti = triple_point_index(t, s, position=i)
        doubled = sorted(v.doubled for v in ti.octant_indices.values())
        base = doubled[0]
        assert [(v - base) // 2 for v in doubled] == list(LAW)
        # ind = d + 3/2 with d the minimum octant value, and 8*ind equals the
        # octant sum exactly.
        assert 2 * ti.ind == base + 3
        assert 16 * ti.ind == sum(doubled)


def test_opposite_pairs_all_give_ind(catalog):
    s = catalog("three-slabs")
    t = triple_points(s)[0]
    ti = triple_point_index(t, s)
    classes = []
    for pat in SIGN_PATTERNS:
        avg, label = index_opposite_pair(ti, pat)
        assert avg == ti.ind
        classes.append(label)
    # Eight ordered transitions: d->d+3 and d+3->d once each, the middle
    # transitions three times each.
    assert classes.count("d->d+3") == 1
    assert classes.count("d+3->d") == 1
    assert classes.count("d+1->d+2") == 3
    assert classes.count("d+2->d+1") == 3


def test_index_opposite_pair_accepts_strings(catalog):
    s = catalog("three-slabs")
    ti = triple_point_index(triple_points(s)[0], s)
    avg, label = index_opposite_pair(ti, "+++")
    assert avg == ti.ind
    with pytest.raises(ValueError):
        index_opposite_pair(ti, "++")


def test_st2_three_slabs(catalog):
    r = st2(catalog("three-slabs"))
    assert r.value == 8
    assert r.parity == 0
    assert [ti.ind for ti in r.per_triple_point] == [1] * 8


def test_st2_empty_and_sphere(catalog):
    assert st2(catalog("sphere")).value == 0
    assert st2(catalog("two-spheres")).value == 0


def test_st2_three_spheres(catalog):
    r = st2(catalog("three-spheres"))
    assert r.value == 2
    assert [ti.ind for ti in r.per_triple_point] == [1, 1]


def test_reversal_involution(catalog):
    # Flipping every coorientation maps each region index x to -1-x: every
    # crossing sign flips while the anchor at infinity stays -1/2.
    s = catalog("three-slabs")
    r = reverse_all(s)
    probes = [pt(0, 0, 0), pt(0, 0, F(3, 8)), pt(7, 1, 2), pt(F(1, 3), 0, 0)]
    for p in probes:
        a = alexander_index(p, s, 3)
        b = alexander_index(p, r, 3)
        assert b.doubled == -2 - a.doubled
    rs = st2(r)
    base = st2(s)
    n = len(base.per_triple_point)
    assert [ti.ind for ti in rs.per_triple_point] == \
        [-1 - ti.ind for ti in base.per_triple_point]
    assert rs.value == -n - base.value
    assert rs.parity == base.parity


def test_region_sample_bundles_point_and_index(catalog):
    from strangeness.numbering import region_sample
    s = catalog("three-slabs")
    rs = region_sample(pt(0, 0, 0), s, 3)
    assert rs.point == pt(0, 0, 0)
    assert rs.index.doubled == 5      # inside all three slabs


def test_half_integer_codomain(catalog):
    s = catalog("three-slabs")
    idx = alexander_index(pt(0, 0, 0), s, 3)
    assert isinstance(idx, HalfInteger)
    assert idx.doubled % 2 == 1
