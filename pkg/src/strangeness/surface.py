"""Data model for PL immersions of closed oriented surfaces.

A Scene is a disjoint union of closed, coherently oriented triangle meshes,
treated as the image of one immersed surface.  Generators produce exact
rational meshes; the near-sphere generator rounds unit directions onto a
common integer lattice so every scene admits one global denominator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import ParseError, SceneValidationError
from .exactgeom import (Point3, Vector3, format_rational, parse_rational, pt)

SCENE_HEADER = "IMMV1"


@dataclass(frozen=True)
class Mesh:
    vertices: tuple
    triangles: tuple            # ordered vertex-index triples, ccw from the coorientation side
    label: str = "mesh"

    def euler_characteristic(self) -> int:
        edges = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                edges.add((u, v) if u < v else (v, u))
        return len(self.vertices) - len(edges) + len(self.triangles)


@dataclass(frozen=True)
class Scene:
    meshes: tuple
    _cache: dict = field(default_factory=dict, hash=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.meshes:
            raise ValueError("a scene needs at least one mesh")

    @property
    def bounding_box(self):
        """((minx, miny, minz), (maxx, maxy, maxz)) over all vertices."""
        if "bbox" not in self._cache:
            xs, ys, zs = [], [], []
            for m in self.meshes:
                for v in m.vertices:
                    xs.append(v.x)
                    ys.append(v.y)
                    zs.append(v.z)
            self._cache["bbox"] = ((min(xs), min(ys), min(zs)),
                                   (max(xs), max(ys), max(zs)))
        return self._cache["bbox"]

    def triangle_count(self) -> int:
        return sum(len(m.triangles) for m in self.meshes)

    def vertex_count(self) -> int:
        return sum(len(m.vertices) for m in self.meshes)


def scene(*meshes: Mesh) -> Scene:
    return Scene(tuple(meshes))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(mesh: Mesh) -> list[str]:
    """Check the closed-oriented-surface invariants; empty list means Ok.

    Violations name the failing edge, triangle or vertex.
    """
    violations = []
    nv = len(mesh.vertices)
    seen = {}
    for i, v in enumerate(mesh.vertices):
        key = v.coords()
        if key in seen:
            violations.append(f"duplicate vertex: {seen[key]} and {i} coincide")
        else:
            seen[key] = i
    directed = {}
    for ti, tri in enumerate(mesh.triangles):
        a, b, c = tri
        if len({a, b, c}) != 3:
            violations.append(f"degenerate triangle {ti}: repeated index in {tri}")
            continue
        if not all(0 <= k < nv for k in tri):
            violations.append(f"triangle {ti}: vertex index out of range in {tri}")
            continue
        va, vb, vc = (mesh.vertices[k] for k in tri)
        if (vb - va).cross(vc - va).is_zero():
            violations.append(f"degenerate triangle {ti}: collinear vertices")
            continue
        for u, v in ((a, b), (b, c), (c, a)):
            if (u, v) in directed:
                violations.append(
                    f"edge ({u},{v}) used twice with same direction "
                    f"(triangles {directed[(u, v)]} and {ti})")
            else:
                directed[(u, v)] = ti
    for (u, v), ti in directed.items():
        if (v, u) not in directed:
            violations.append(f"edge ({u},{v}) of triangle {ti} has no opposite-direction partner")
    return violations


def require_valid(s: Scene) -> None:
    problems = []
    for m in s.meshes:
        for v in validate(m):
            problems.append(f"{m.label}: {v}")
    if problems:
        raise SceneValidationError(problems)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_box(center: Point3, e1: Vector3, e2: Vector3, e3: Vector3,
            label: str = "box") -> Mesh:
    """Closed, outward-cooriented parallelepiped spanned by +-e1, +-e2, +-e3."""
    d = e1.cross(e2).dot(e3)
    if d == 0:
        raise ValueError("box edge vectors must be linearly independent")
    if d < 0:
        e1, e2 = e2, e1
    corners = {}
    verts = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            for s3 in (-1, 1):
                p = center.translate(e1.scale(s1) + e2.scale(s2) + e3.scale(s3))
                corners[(s1, s2, s3)] = len(verts)
                verts.append(p)

    tris = []

    def quad(i, j, k, l):
        tris.append((i, j, k))
        tris.append((i, k, l))

    # Outward cycles: seen from outside along the face normal, counterclockwise.
    quad(corners[(1, 1, 1)], corners[(-1, 1, 1)], corners[(-1, -1, 1)], corners[(1, -1, 1)])      # +e3
    quad(corners[(1, 1, -1)], corners[(1, -1, -1)], corners[(-1, -1, -1)], corners[(-1, 1, -1)])  # -e3
    quad(corners[(1, 1, 1)], corners[(1, -1, 1)], corners[(1, -1, -1)], corners[(1, 1, -1)])      # +e1
    quad(corners[(-1, 1, 1)], corners[(-1, 1, -1)], corners[(-1, -1, -1)], corners[(-1, -1, 1)])  # -e1
    quad(corners[(1, 1, 1)], corners[(1, 1, -1)], corners[(-1, 1, -1)], corners[(-1, 1, 1)])      # +e2
    quad(corners[(1, -1, 1)], corners[(-1, -1, 1)], corners[(-1, -1, -1)], corners[(1, -1, -1)])  # -e2
    return Mesh(tuple(verts), tuple(tris), label)


_AXES = {"x": 0, "y": 1, "z": 2}


def gen_slab(center: Point3, normal_axis: str, half_thickness: Fraction,
             half_width: Fraction, label: str | None = None) -> Mesh:
    """Thin closed axis-aligned box whose two large faces act as near-planar sheets."""
    half_thickness = Fraction(half_thickness)
    half_width = Fraction(half_width)
    if not 0 < half_thickness < half_width:
        raise ValueError("need 0 < half_thickness < half_width")
    axis = _AXES[normal_axis]
    exts = [half_width] * 3
    exts[axis] = half_thickness
    units = [Vector3(Fraction(1), Fraction(0), Fraction(0)),
             Vector3(Fraction(0), Fraction(1), Fraction(0)),
             Vector3(Fraction(0), Fraction(0), Fraction(1))]
    return gen_box(center, units[0].scale(exts[0]), units[1].scale(exts[1]),
                   units[2].scale(exts[2]), label or f"slab-{normal_axis}")


_OCTA_DIRS = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
_OCTA_FACES = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
               (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]

_SPHERE_LATTICE = 4096      # round projected directions to multiples of 1/4096


def _round_div(num: int, den: int) -> int:
    """Round num/den to the nearest integer, den > 0, half away from zero."""
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((-2 * num + den) // (2 * den))


def gen_sphere(center: Point3, radius: Fraction, subdivisions: int,
               label: str = "sphere") -> Mesh:
    """Convex, closed, outward-cooriented near-sphere with exact rational vertices.

    Subdivided octahedron; midpoints are pushed out to the radius and rounded
    onto the lattice (1/4096) * radius so all vertices share one denominator.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if subdivisions < 0:
        raise ValueError("subdivisions must be >= 0")
    w = _SPHERE_LATTICE
    # Work with integer lattice directions: unit sphere scaled by w.
    verts = [(d[0] * w, d[1] * w, d[2] * w) for d in _OCTA_DIRS]
    faces = list(_OCTA_FACES)
    midpoint_of = {}

    def snap_to_sphere(p):
        # Scale integer vector p to length ~ w, exactly on the integer lattice.
        q = p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
        m = 1 << 32
        s = isqrt(q * m * m)        # ~ m * sqrt(q)
        return tuple(_round_div(c * w * m, s) for c in p)

    def midpoint(i, j):
        key = (i, j) if i < j else (j, i)
        if key not in midpoint_of:
            a, b = verts[i], verts[j]
            # The midpoint direction only matters up to positive scale.
            p = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            midpoint_of[key] = len(verts)
            verts.append(snap_to_sphere(p))
        return midpoint_of[key]

    for _ in range(subdivisions):
        new_faces = []
        for a, b, c in faces:
            ab = midpoint(a, b)
            bc = midpoint(b, c)
            ca = midpoint(c, a)
            new_faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        faces = new_faces
    scale = radius / w
    points = tuple(Point3(center.x + v[0] * scale, center.y + v[1] * scale,
                          center.z + v[2] * scale) for v in verts)
    return Mesh(points, tuple(faces), label)


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SceneTransform:
    kind: str                                   # translate | scale | reverse_orientation | perturb
    offset: Vector3 | None = None               # translate
    factor: Fraction | None = None              # scale
    mesh_index: int | None = None               # reverse_orientation
    seed: int | None = None                     # perturb
    magnitude: Fraction | None = None           # perturb


def translate(v: Vector3) -> SceneTransform:
    return SceneTransform("translate", offset=v)


def scale(r) -> SceneTransform:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("scale factor must be positive")
    return SceneTransform("scale", factor=r)


def reverse_orientation(mesh_index: int) -> SceneTransform:
    return SceneTransform("reverse_orientation", mesh_index=mesh_index)


def perturb(seed: int, magnitude) -> SceneTransform:
    magnitude = Fraction(magnitude)
    if magnitude <= 0:
        raise ValueError("perturbation magnitude must be positive")
    return SceneTransform("perturb", seed=seed, magnitude=magnitude)


def apply(t: SceneTransform, s: Scene) -> Scene:
    """Apply a transform, returning a new scene; the input is never mutated."""
    if t.kind == "translate":
        v = t.offset
        return Scene(tuple(
            Mesh(tuple(p.translate(v) for p in m.vertices), m.triangles, m.label)
            for m in s.meshes))
    if t.kind == "scale":
        r = t.factor
        return Scene(tuple(
            Mesh(tuple(Point3(p.x * r, p.y * r, p.z * r) for p in m.vertices),
                 m.triangles, m.label)
            for m in s.meshes))
    if t.kind == "reverse_orientation":
        if not 0 <= t.mesh_index < len(s.meshes):
            raise IndexError(f"mesh index {t.mesh_index} out of range")
        meshes = list(s.meshes)
        m = meshes[t.mesh_index]
        meshes[t.mesh_index] = Mesh(m.vertices,
                                    tuple((a, c, b) for a, b, c in m.triangles),
                                    m.label)
        return Scene(tuple(meshes))
    if t.kind == "perturb":
        rng = random.Random(t.seed)
        n = 1 << 16
        mag = t.magnitude
        out = []
        for m in s.meshes:
            moved = []
            for p in m.vertices:
                d = [Fraction(rng.randrange(-n, n + 1), n) * mag for _ in range(3)]
                moved.append(Point3(p.x + d[0], p.y + d[1], p.z + d[2]))
            out.append(Mesh(tuple(moved), m.triangles, m.label))
        return Scene(tuple(out))
    raise ValueError(f"unknown transform kind {t.kind!r}")


def reverse_all(s: Scene) -> Scene:
    """Flip the coorientation of every mesh in the scene."""
    out = s
    for i in range(len(s.meshes)):
        out = apply(reverse_orientation(i), out)
    return out


# ---------------------------------------------------------------------------
# IMMV1 scene files
# ---------------------------------------------------------------------------

def save_scene(s: Scene, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_scene(s))


def dump_scene(s: Scene) -> str:
    lines = [SCENE_HEADER]
    for m in s.meshes:
        lines.append(f"mesh {m.label}")
        for v in m.vertices:
            lines.append("v " + " ".join(format_rational(c) for c in v.coords()))
        for a, b, c in m.triangles:
            lines.append(f"f {a} {b} {c}")
    return "\n".join(lines) + "\n"


def load_scene(path) -> Scene:
    with open(path, "r", encoding="utf-8") as f:
        return parse_scene(f.read(), source=str(path))


def parse_scene(text: str, source: str = "<string>") -> Scene:
    lines = text.splitlines()
    if not lines or lines[0].strip() != SCENE_HEADER:
        raise ParseError(f"{source}: missing {SCENE_HEADER} header")
    meshes = []
    label = None
    verts: list[Point3] = []
    tris: list[tuple] = []

    def flush():
        if label is not None:
            if not verts or not tris:
                raise ParseError(f"{source}: mesh {label!r} is empty")
            meshes.append(Mesh(tuple(verts), tuple(tris), label))

    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "mesh":
            flush()
            label = parts[1] if len(parts) > 1 else f"mesh{len(meshes)}"
            verts, tris = [], []
        elif parts[0] == "v":
            if label is None:
                raise ParseError(f"{source}:{ln}: vertex before any 'mesh' line")
            if len(parts) != 4:
                raise ParseError(f"{source}:{ln}: expected 'v x y z'")
            try:
                verts.append(pt(*(parse_rational(p) for p in parts[1:])))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"{source}:{ln}: bad rational ({e})") from e
        elif parts[0] == "f":
            if label is None:
                raise ParseError(f"{source}:{ln}: face before any 'mesh' line")
            if len(parts) != 4:
                raise ParseError(f"{source}:{ln}: expected 'f i j k'")
            try:
                tris.append(tuple(int(p) for p in parts[1:]))
            except ValueError as e:
                raise ParseError(f"{source}:{ln}: bad face index ({e})") from e
        else:
            raise ParseError(f"{source}:{ln}: unknown directive {parts[0]!r}")
    flush()
    if not meshes:
        raise ParseError(f"{source}: no meshes")
    return Scene(tuple(meshes))
