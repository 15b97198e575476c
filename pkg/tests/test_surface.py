from fractions import Fraction as F

import pytest

from strangeness.errors import ParseError
from strangeness.exactgeom import pt, vec
from strangeness.surface import (Mesh, Scene, apply, dump_scene, gen_box,
                                 gen_slab, gen_sphere, parse_scene, perturb,
                                 reverse_all, reverse_orientation, scale,
                                 scene, translate, validate)
from strangeness.numbering import alexander_index, st2


def test_octahedron_is_valid_and_small():
    m = gen_sphere(pt(0, 0, 0), 1, 0)
    assert len(m.triangles) == 8
    assert validate(m) == []
    assert m.euler_characteristic() == 2


@pytest.mark.parametrize("sub", [0, 1, 2])
def test_sphere_generator_valid(sub):
    m = gen_sphere(pt(F(1, 3), F(-2, 7), 5), F(3, 4), sub)
    assert validate(m) == []
    assert len(m.triangles) == 8 * 4 ** sub
    assert m.euler_characteristic() == 2


def test_sphere_vertices_near_radius():
    r = F(3, 4)
    m = gen_sphere(pt(0, 0, 0), r, 2)
    for v in m.vertices:
        d2 = v.x * v.x + v.y * v.y + v.z * v.z
        assert abs(d2 - r * r) <= r * r * F(1, 500)


def test_sphere_is_convex():
    m = gen_sphere(pt(0, 0, 0), 1, 2)
    # Every vertex lies strictly on the inner side of every face plane.
    from strangeness.exactgeom import orient3d
    for a, b, c in m.triangles:
        va, vb, vc = (m.vertices[i] for i in (a, b, c))
        for j, v in enumerate(m.vertices):
            if j in (a, b, c):
                continue
            assert orient3d(va, vb, vc, v) < 0


def test_slab_generator():
    m = gen_slab(pt(0, 0, 0), "z", F(1, 4), 10)
    assert len(m.triangles) == 12
    assert validate(m) == []
    assert m.euler_characteristic() == 2
    zs = sorted({v.z for v in m.vertices})
    assert zs == [F(-1, 4), F(1, 4)]


def test_slab_requires_thin():
    with pytest.raises(ValueError):
        gen_slab(pt(0, 0, 0), "z", 2, 1)


def test_box_orientation_corrected():
    m = gen_box(pt(0, 0, 0), vec(0, 1, 0), vec(1, 0, 0), vec(0, 0, 1))
    assert validate(m) == []
    # Outward coorientation regardless of the handedness of the edge triple.
    s = scene(m)
    assert alexander_index(pt(0, 0, 0), s, 3).doubled == 1


def test_validate_reports_reversed_cycle():
    m = gen_sphere(pt(0, 0, 0), 1, 0)
    tris = list(m.triangles)
    a, b, c = tris[0]
    tris[0] = (a, c, b)
    bad = Mesh(m.vertices, tuple(tris), "bad")
    problems = validate(bad)
    assert any("same direction" in p for p in problems)


def test_validate_reports_degenerate_triangle():
    m = gen_sphere(pt(0, 0, 0), 1, 0)
    tris = list(m.triangles)
    tris[0] = (0, 0, 1)
    bad = Mesh(m.vertices, tuple(tris), "bad")
    assert any("degenerate triangle" in p for p in validate(bad))


def test_validate_reports_open_edge():
    m = gen_sphere(pt(0, 0, 0), 1, 0)
    bad = Mesh(m.vertices, m.triangles[:-1], "bad")
    assert any("no opposite-direction partner" in p for p in validate(bad))


def test_translate_roundtrip_identity():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1))
    v = vec(F(3, 7), F(-1, 5), 2)
    back = apply(translate(-v), apply(translate(v), s))
    assert back.meshes[0].vertices == s.meshes[0].vertices


def test_scale_preserves_st2(catalog):
    s = catalog("three-slabs")
    scaled = apply(scale(3), s)
    assert st2(scaled).value == st2(s).value


def test_translate_preserves_st2(catalog):
    s = catalog("three-slabs")
    moved = apply(translate(vec(F(1, 3), F(-2, 7), F(5, 11))), s)
    assert st2(moved).value == st2(s).value


def test_reverse_orientation_flips_inside_index():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1))
    assert alexander_index(pt(0, 0, 0), s, 3).doubled == 1           # +1/2
    r = apply(reverse_orientation(0), s)
    assert alexander_index(pt(0, 0, 0), r, 3).doubled == -3          # -3/2


def test_nested_spheres_index():
    s = scene(gen_sphere(pt(0, 0, 0), 2, 1, "outer"),
              gen_sphere(pt(0, 0, 0), 1, 1, "inner"))
    assert alexander_index(pt(0, 0, 0), s, 3).doubled == 3           # +3/2


def test_far_point_is_outside():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1))
    assert alexander_index(pt(5, 7, 11), s, 3).doubled == -1         # -1/2


def test_perturb_deterministic():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1))
    a = apply(perturb(11, F(1, 128)), s)
    b = apply(perturb(11, F(1, 128)), s)
    assert a.meshes[0].vertices == b.meshes[0].vertices
    c = apply(perturb(12, F(1, 128)), s)
    assert a.meshes[0].vertices != c.meshes[0].vertices


def test_perturb_bounded():
    s = scene(gen_sphere(pt(0, 0, 0), 1, 1))
    mag = F(1, 64)
    moved = apply(perturb(5, mag), s)
    for old, new in zip(s.meshes[0].vertices, moved.meshes[0].vertices):
        for a, b in zip(old.coords(), new.coords()):
            assert abs(b - a) <= mag


def test_reverse_all_reverses_every_mesh(catalog):
    s = catalog("two-spheres")
    r = reverse_all(s)
    for before, after in zip(s.meshes, r.meshes):
        assert after.triangles == tuple((a, c, b) for a, b, c in before.triangles)


def test_scene_roundtrip_through_text(catalog):
    s = catalog("three-slabs")
    text = dump_scene(s)
    back = parse_scene(text)
    assert len(back.meshes) == len(s.meshes)
    for m1, m2 in zip(s.meshes, back.meshes):
        assert m1.vertices == m2.vertices
        assert m1.triangles == m2.triangles
        assert m1.label == m2.label


def test_parse_rejects_missing_header():
    with pytest.raises(ParseError):
        parse_scene("mesh m\nv 0 0 0\n")


def test_parse_rejects_bad_directive():
    with pytest.raises(ParseError):
        parse_scene("IMMV1\nmesh m\nv 0 0 0\nq 1 2 3\n")


def test_parse_allows_comments_and_integer_shorthand():
    text = """IMMV1
# a tetrahedron-ish fragment won't validate, but parses
mesh t
v 0 0 0
v 1/1 0 0
v 0 1 0
v 0 0 1
f 0 1 2
f 0 3 1
f 1 3 2
f 0 2 3
"""
    s = parse_scene(text)
    assert s.meshes[0].vertices[1] == pt(1, 0, 0)
    assert len(s.meshes[0].triangles) == 4


def test_scene_requires_meshes():
    with pytest.raises(ValueError):
        Scene(())
