from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strangeness.exactgeom import (HalfInteger, Ray, format_rational,
                                   orient3d, parse_rational, pt,
                                   ray_triangle_crossing,
                                   triangle_triangle_intersection, vec)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=10 ** 4)
points = st.builds(pt, rationals, rationals, rationals)


def test_orient3d_unit_tetrahedron():
    assert orient3d(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)) == 1


def test_orient3d_mirror():
    assert orient3d(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, -1)) == -1


def test_orient3d_coplanar():
    assert orient3d(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(3, -2, 0)) == 0


@given(a=points, b=points, c=points, d=points)
@settings(max_examples=60, deadline=None)
def test_orient3d_antisymmetric(a, b, c, d):
    s = orient3d(a, b, c, d)
    assert orient3d(b, a, c, d) == -s
    assert orient3d(a, c, b, d) == -s
    assert orient3d(a, b, d, c) == -s


TRI_Z = (pt(-1, -1, F(1, 2)), pt(2, -1, F(1, 2)), pt(-1, 2, F(1, 2)))


def test_ray_crossing_axis_aligned():
    r = Ray(pt(0, 0, 0), vec(0, 0, 1))
    res = ray_triangle_crossing(r, TRI_Z)
    assert res.kind == "crossing"
    assert res.t == F(1, 2)
    assert res.agree is True


def test_ray_crossing_orientation_reversal_flips_agree():
    r = Ray(pt(0, 0, 0), vec(0, 0, 1))
    flipped = (TRI_Z[0], TRI_Z[2], TRI_Z[1])
    res = ray_triangle_crossing(r, flipped)
    assert res.kind == "crossing"
    assert res.agree is False


def test_ray_through_vertex_is_degenerate():
    r = Ray(pt(-1, -1, 0), vec(0, 0, 1))
    assert ray_triangle_crossing(r, TRI_Z).kind == "degenerate"


def test_ray_behind_origin_misses():
    r = Ray(pt(0, 0, 1), vec(0, 0, 1))
    assert ray_triangle_crossing(r, TRI_Z).kind == "miss"


def test_ray_in_plane_is_degenerate():
    r = Ray(pt(5, 5, F(1, 2)), vec(1, 0, 0))
    assert ray_triangle_crossing(r, TRI_Z).kind == "degenerate"


def test_ray_origin_on_triangle_is_degenerate():
    r = Ray(pt(0, 0, F(1, 2)), vec(1, 2, 3))
    assert ray_triangle_crossing(r, TRI_Z).kind == "degenerate"


@given(scale=st.fractions(min_value=F(1, 1000), max_value=1000,
                          max_denominator=10 ** 4))
@settings(max_examples=40, deadline=None)
def test_ray_crossing_scale_invariant(scale):
    # Rescaling all coordinates by a positive rational never changes the
    # classification or the coorientation agreement.
    r = Ray(pt(F(1, 7), F(1, 11), 0), vec(1, 2, 5))
    base = ray_triangle_crossing(r, TRI_Z)

    def sc(p):
        return pt(p.x * scale, p.y * scale, p.z * scale)

    r2 = Ray(sc(r.origin), r.direction)
    tri2 = tuple(sc(p) for p in TRI_Z)
    res = ray_triangle_crossing(r2, tri2)
    assert res.kind == base.kind
    assert res.agree == base.agree


def test_tri_tri_coordinate_planes():
    # Both triangles contain a neighborhood of the common segment in their
    # interiors; the result is clipped by the smaller one only.
    t1 = (pt(-1, -1, 0), pt(2, -1, 0), pt(-1, 2, 0))   # z = 0
    t2 = (pt(0, -2, -1), pt(0, 3, -1), pt(0, -2, 4))   # x = 0, strictly larger
    res = triangle_triangle_intersection(t1, t2)
    assert res.kind == "segment"
    ends = sorted([res.p.coords(), res.q.coords()])
    assert ends == [(0, -1, 0), (0, 1, 0)]


def test_tri_tri_disjoint():
    t1 = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0))
    t2 = (pt(0, 0, 5), pt(1, 0, 5), pt(0, 1, 5))
    assert triangle_triangle_intersection(t1, t2).kind == "empty"


def test_tri_tri_coplanar_overlap_is_contact():
    t1 = (pt(0, 0, 0), pt(2, 0, 0), pt(0, 2, 0))
    t2 = (pt(1, 1, 0), pt(3, 1, 0), pt(1, 3, 0))
    res = triangle_triangle_intersection(t1, t2)
    assert res.kind == "contact"


def test_tri_tri_vertex_touch_is_contact():
    t1 = (pt(-1, -1, 0), pt(2, -1, 0), pt(-1, 2, 0))
    t2 = (pt(0, 0, 0), pt(1, 0, 3), pt(0, 1, 3))       # vertex on t1's interior
    assert triangle_triangle_intersection(t1, t2).kind == "contact"


def test_tri_tri_single_point_touch_is_contact():
    t1 = (pt(-1, -1, 0), pt(2, -1, 0), pt(-1, 2, 0))
    t2 = (pt(0, 0, 0), pt(1, 0, 3), pt(0, 1, 3))
    assert triangle_triangle_intersection(t1, t2).kind == "contact"


@given(st.integers(0, 5))
@settings(max_examples=6, deadline=None)
def test_tri_tri_symmetric(k):
    t1 = (pt(-1, -1, 0), pt(2, -1, 0), pt(-1, 2, 0))
    t2 = (pt(F(1, 7), F(-k - 1, 3), -1), pt(F(1, 7), 2, -1), pt(F(1, 7), F(k, 5), 2))
    r12 = triangle_triangle_intersection(t1, t2)
    r21 = triangle_triangle_intersection(t2, t1)
    assert r12.kind == r21.kind
    if r12.kind == "segment":
        assert {r12.p.coords(), r12.q.coords()} == {r21.p.coords(), r21.q.coords()}


def test_half_integer_arithmetic():
    h = HalfInteger(-1)
    assert str(h) == "-1/2"
    assert (h + 1).doubled == 1
    assert (h - 1).doubled == -3
    assert (h + 2) - h == 2
    assert -h == HalfInteger(1)
    with pytest.raises(ValueError):
        HalfInteger(2)
    assert HalfInteger.from_fraction(F(3, 2)).doubled == 3
    with pytest.raises(ValueError):
        HalfInteger.from_fraction(F(1, 3))


def test_rational_parse_format_roundtrip():
    for text in ("3/4", "-7/2", "5", "0", "-12"):
        q = parse_rational(text)
        assert parse_rational(format_rational(q)) == q
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(-8, 2)) == "-4"
