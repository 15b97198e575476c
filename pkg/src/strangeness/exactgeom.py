"""Exact rational arithmetic and the geometric predicates the rest of the
package is built on.

Every coordinate in the library is an exact rational (``fractions.Fraction``);
there is no floating-point path and no epsilon anywhere.  Degenerate contacts
are reported to the caller as values, never perturbed away internally.

Internally the predicates run on homogeneous integer coordinates: a point is a
tuple ``(x, y, z, w)`` of Python ints with ``w > 0``, representing
``(x/w, y/w, z/w)``.  Sign computations factor out the positive denominators,
so the integer determinants decide the exact rational predicates.  Scene
vertices are pre-scaled to a common integer lattice (``w == 1``) once per
scene, which keeps the hot paths in plain bignum arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``num/den`` or a plain integer into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    """Render a rational as ``num/den``, or a bare integer when den == 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class HalfInteger:
    """A value in Z - 1/2, stored as its (odd) doubled numerator.

    This is the codomain of the region numbering; keeping it distinct from
    plain integers makes the "region index" vs "triple point index" split
    explicit in every interface.
    """

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        if doubled % 2 == 0:
            raise ValueError(f"HalfInteger needs an odd doubled value, got {doubled}")
        self.doubled = doubled

    @classmethod
    def from_fraction(cls, q: Fraction) -> "HalfInteger":
        if q.denominator != 2:
            raise ValueError(f"{q} is not in Z - 1/2")
        return cls(q.numerator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other: int) -> "HalfInteger":
        if not isinstance(other, int):
            return NotImplemented
        return HalfInteger(self.doubled + 2 * other)

    def __sub__(self, other):
        if isinstance(other, int):
            return HalfInteger(self.doubled - 2 * other)
        if isinstance(other, HalfInteger):
            return (self.doubled - other.doubled) // 2
        return NotImplemented

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.doubled)

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfInteger) and self.doubled == other.doubled

    def __lt__(self, other: "HalfInteger") -> bool:
        return self.doubled < other.doubled

    def __le__(self, other: "HalfInteger") -> bool:
        return self.doubled <= other.doubled

    def __hash__(self) -> int:
        return hash(("HalfInteger", self.doubled))

    def __repr__(self) -> str:
        return f"HalfInteger({self.doubled}/2)"

    def __str__(self) -> str:
        return f"{self.doubled}/2"


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


@dataclass(frozen=True)
class Vector3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __add__(self, o: "Vector3") -> "Vector3":
        return Vector3(self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o: "Vector3") -> "Vector3":
        return Vector3(self.x - o.x, self.y - o.y, self.z - o.z)

    def __neg__(self) -> "Vector3":
        return Vector3(-self.x, -self.y, -self.z)

    def scale(self, r) -> "Vector3":
        r = _as_fraction(r)
        return Vector3(self.x * r, self.y * r, self.z * r)

    def dot(self, o: "Vector3") -> Fraction:
        return self.x * o.x + self.y * o.y + self.z * o.z

    def cross(self, o: "Vector3") -> "Vector3":
        return Vector3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def coords(self):
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __sub__(self, o: "Point3") -> Vector3:
        return Vector3(self.x - o.x, self.y - o.y, self.z - o.z)

    def translate(self, v: Vector3) -> "Point3":
        return Point3(self.x + v.x, self.y + v.y, self.z + v.z)

    def coords(self):
        return (self.x, self.y, self.z)


def pt(x, y, z) -> Point3:
    """Build a Point3 from ints, Fractions or ``num/den`` strings."""
    return Point3(_as_fraction(x), _as_fraction(y), _as_fraction(z))


def vec(x, y, z) -> Vector3:
    return Vector3(_as_fraction(x), _as_fraction(y), _as_fraction(z))


@dataclass(frozen=True)
class Ray:
    origin: Point3
    direction: Vector3

    def __post_init__(self):
        if self.direction.is_zero():
            raise ValueError("ray direction must be nonzero")


# ---------------------------------------------------------------------------
# Homogeneous integer machinery.
# ---------------------------------------------------------------------------

def hom_from_point(p: Point3):
    """Exact homogeneous integer coordinates (x, y, z, w), w > 0."""
    dx, dy, dz = p.x.denominator, p.y.denominator, p.z.denominator
    w = dx * dy // gcd(dx, dy)
    w = w * dz // gcd(w, dz)
    return (p.x.numerator * (w // dx), p.y.numerator * (w // dy),
            p.z.numerator * (w // dz), w)


def hom_normalize(h):
    x, y, z, w = h
    if w < 0:
        x, y, z, w = -x, -y, -z, -w
    g = gcd(gcd(abs(x), abs(y)), gcd(abs(z), w))
    if g > 1:
        x, y, z, w = x // g, y // g, z // g, w // g
    return (x, y, z, w)


def hom_to_point(h) -> Point3:
    x, y, z, w = h
    return Point3(Fraction(x, w), Fraction(y, w), Fraction(z, w))


def hom_scale(h, scale: Fraction):
    """Multiply the represented point by a rational scale factor."""
    x, y, z, w = h
    return hom_normalize((x * scale.numerator, y * scale.numerator,
                          z * scale.numerator, w * scale.denominator))


def sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def add3(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def mul3(a, k):
    return (a[0] * k, a[1] * k, a[2] * k)


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def det3(r1, r2, r3):
    return (r1[0] * (r2[1] * r3[2] - r2[2] * r3[1])
            - r1[1] * (r2[0] * r3[2] - r2[2] * r3[0])
            + r1[2] * (r2[0] * r3[1] - r2[1] * r3[0]))


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def hom_sub_dir(a, b):
    """Integer direction numerator of (a - b); denominator a.w * b.w > 0."""
    aw, bw = a[3], b[3]
    return (a[0] * bw - b[0] * aw, a[1] * bw - b[1] * aw, a[2] * bw - b[2] * aw)


def tri_normal(a, b, c):
    """Coorientation normal of an oriented integer triangle (w == 1 points).

    Right-hand rule on the vertex cycle: n = (b - a) x (c - a).
    """
    return cross3(sub3(b, a), sub3(c, a))


# ---------------------------------------------------------------------------
# orient3d
# ---------------------------------------------------------------------------

def orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    """Sign of det(b - a, c - a, d - a); exact, no rounding."""
    ha, hb, hc, hd = (hom_from_point(p) for p in (a, b, c, d))
    return _iorient3d(ha, hb, hc, hd)


def _iorient3d(ha, hb, hc, hd) -> int:
    return sign(det3(hom_sub_dir(hb, ha), hom_sub_dir(hc, ha), hom_sub_dir(hd, ha)))


# ---------------------------------------------------------------------------
# Ray / triangle crossing
# ---------------------------------------------------------------------------

MISS = "miss"
CROSSING = "crossing"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class RayTriangleResult:
    kind: str                       # "miss" | "crossing" | "degenerate"
    t: Fraction | None = None       # crossing parameter, > 0
    agree: bool | None = None       # ray direction agrees with coorientation normal

    @property
    def is_crossing(self) -> bool:
        return self.kind == CROSSING


def _ray_tri_int(o_hom, v, a, b, c, n):
    """Classify an infinite ray against a closed integer triangle.

    o_hom: homogeneous ray origin; v: integer direction; a, b, c: integer
    triangle vertices (w == 1); n: precomputed coorientation normal.

    Returns ("miss",) | ("deg",) | ("cross", sigma, t_num, t_den) where sigma
    is +1 when the direction agrees with the coorientation normal and the
    exact parameter is t_num / t_den > 0.
    """
    ow = o_hom[3]
    oxyz = (o_hom[0], o_hom[1], o_hom[2])
    ao = sub3(mul3(a, ow), oxyz)
    nv = dot3(n, v)
    d0 = dot3(n, ao)                      # n . (a - o), scaled by ow > 0
    if nv == 0:
        # Parallel: in the plane (degenerate) or strictly off it (miss).
        return ("deg",) if d0 == 0 else ("miss",)
    bo = sub3(mul3(b, ow), oxyz)
    co = sub3(mul3(c, ow), oxyz)
    w1 = sign(det3(ao, bo, v))
    w2 = sign(det3(bo, co, v))
    w3 = sign(det3(co, ao, v))
    has_pos = w1 > 0 or w2 > 0 or w3 > 0
    has_neg = w1 < 0 or w2 < 0 or w3 < 0
    if has_pos and has_neg:
        return ("miss",)                  # line pierces the plane outside the triangle
    st = sign(d0) * sign(nv)              # sign of the crossing parameter
    if w1 != 0 and w2 != 0 and w3 != 0:
        if st < 0:
            return ("miss",)
        if st == 0:
            return ("deg",)               # origin on the open triangle
        t_num, t_den = d0, nv * ow
        if t_den < 0:
            t_num, t_den = -t_num, -t_den
        return ("cross", 1 if nv > 0 else -1, t_num, t_den)
    # Line meets the triangle boundary (edge or vertex).
    if st < 0:
        return ("miss",)                  # contact strictly behind the origin
    return ("deg",)


def ray_triangle_crossing(r: Ray, tri: tuple[Point3, Point3, Point3]) -> RayTriangleResult:
    """Exact ray vs open-triangle crossing with coorientation agreement.

    InteriorCrossing iff the ray meets the open triangle transversally at
    parameter t > 0.  ``agree`` is true iff direction . normal > 0.  Any
    boundary, vertex, in-plane or origin-on-triangle contact is Degenerate;
    the caller owns the re-sampling policy.
    """
    a, b, c = tri
    scale, (ia, ib, ic) = _common_scale_tri(a, b, c)
    if tri_normal(ia, ib, ic) == (0, 0, 0):
        raise ValueError("degenerate triangle")
    o = hom_from_point(Point3(r.origin.x * scale, r.origin.y * scale,
                              r.origin.z * scale))
    dnum = hom_from_point(Point3(r.direction.x, r.direction.y, r.direction.z))
    v = (dnum[0], dnum[1], dnum[2])       # positive denominator dropped
    res = _ray_tri_int(o, v, ia, ib, ic, tri_normal(ia, ib, ic))
    if res[0] == "miss":
        return RayTriangleResult(MISS)
    if res[0] == "deg":
        return RayTriangleResult(DEGENERATE)
    _, sigma, t_num, t_den = res
    # The parameter is measured in scaled space with the unscaled direction
    # numerator; undo both factors to report t for the caller's ray.
    t = Fraction(t_num, t_den) / (scale * dnum[3])
    return RayTriangleResult(CROSSING, t=t, agree=sigma > 0)


def _common_scale_tri(a: Point3, b: Point3, c: Point3):
    """Scale three rational points onto a common integer lattice."""
    dens = [q.denominator for p in (a, b, c) for q in p.coords()]
    m = 1
    for d in dens:
        m = m * d // gcd(m, d)
    out = []
    for p in (a, b, c):
        out.append((int(p.x * m), int(p.y * m), int(p.z * m)))
    return Fraction(m), tuple(out)


# ---------------------------------------------------------------------------
# Point / segment vs triangle helpers (integer level)
# ---------------------------------------------------------------------------

def _point_plane_side(p_hom, a, n):
    """Sign of n . (p - a) for integer triangle vertex a and normal n."""
    return sign(dot3(n, (p_hom[0], p_hom[1], p_hom[2])) - p_hom[3] * dot3(n, a))


def _edge_funcs(a, b, c, n):
    """Linear edge functions h(x) = g . x + k, >= 0 on the closed triangle."""
    out = []
    for u, v in ((a, b), (b, c), (c, a)):
        g = cross3(n, sub3(v, u))
        k = -dot3(cross3(sub3(v, u), u), n)
        out.append((g, k))
    return out


def _point_in_tri_plane(p_hom, funcs):
    """For an on-plane point: 1 open interior, 0 boundary, -1 outside."""
    res = 1
    for g, k in funcs:
        s = sign(dot3(g, (p_hom[0], p_hom[1], p_hom[2])) + k * p_hom[3])
        if s < 0:
            return -1
        if s == 0:
            res = 0
    return res


def _point_on_closed_tri(p_hom, a, b, c, n, funcs=None) -> bool:
    if _point_plane_side(p_hom, a, n) != 0:
        return False
    if funcs is None:
        funcs = _edge_funcs(a, b, c, n)
    return _point_in_tri_plane(p_hom, funcs) >= 0


def _segment_tri_class(p_hom, q_hom, a, b, c, n):
    """Classify the closed segment [p, q] against a closed integer triangle.

    Returns ("none",) | ("deg",) | ("cross", sigma) where sigma = +1 iff the
    step direction q - p agrees with the coorientation normal.  "cross" is
    only reported for a single transversal crossing strictly interior to both
    the segment and the triangle; every touching case is "deg".
    """
    dp = _point_plane_side(p_hom, a, n)
    dq = _point_plane_side(q_hom, a, n)
    if dp != 0 and dp == dq:
        return ("none",)
    funcs = _edge_funcs(a, b, c, n)
    if dp == 0 and dq == 0:
        # Segment in the triangle's plane: any closure contact is degenerate.
        return ("deg",) if _coplanar_segment_touches(p_hom, q_hom, a, b, c, n, funcs) else ("none",)
    if dp == 0:
        return ("deg",) if _point_in_tri_plane(p_hom, funcs) >= 0 else ("none",)
    if dq == 0:
        return ("deg",) if _point_in_tri_plane(q_hom, funcs) >= 0 else ("none",)
    # Strictly opposite sides: the open segment crosses the plane once.
    v = hom_sub_dir(q_hom, p_hom)
    ow = p_hom[3]
    oxyz = (p_hom[0], p_hom[1], p_hom[2])
    w1 = sign(det3(sub3(mul3(a, ow), oxyz), sub3(mul3(b, ow), oxyz), v))
    w2 = sign(det3(sub3(mul3(b, ow), oxyz), sub3(mul3(c, ow), oxyz), v))
    w3 = sign(det3(sub3(mul3(c, ow), oxyz), sub3(mul3(a, ow), oxyz), v))
    has_pos = w1 > 0 or w2 > 0 or w3 > 0
    has_neg = w1 < 0 or w2 < 0 or w3 < 0
    if has_pos and has_neg:
        return ("none",)
    if w1 == 0 or w2 == 0 or w3 == 0:
        return ("deg",)                   # pierces exactly on the boundary
    return ("cross", 1 if dot3(n, v) > 0 else -1)


def _coplanar_segment_touches(p_hom, q_hom, a, b, c, n, funcs) -> bool:
    """Does an in-plane closed segment touch the closed triangle?"""
    if _point_in_tri_plane(p_hom, funcs) >= 0 or _point_in_tri_plane(q_hom, funcs) >= 0:
        return True
    # Both endpoints outside: touch iff the segment crosses some edge.
    axis = max(range(3), key=lambda i: abs(n[i]))
    i, j = [k for k in range(3) if k != axis]
    pw, qw = p_hom[3], q_hom[3]
    p2 = (p_hom[i], p_hom[j], pw)
    q2 = (q_hom[i], q_hom[j], qw)
    for u, v in ((a, b), (b, c), (c, a)):
        u2 = (u[i], u[j], 1)
        v2 = (v[i], v[j], 1)
        o1 = _orient2d_hom(p2, q2, u2)
        o2 = _orient2d_hom(p2, q2, v2)
        o3 = _orient2d_hom(u2, v2, p2)
        o4 = _orient2d_hom(u2, v2, q2)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return True
        if o1 == 0 and _between2d(p2, q2, u2):
            return True
        if o2 == 0 and _between2d(p2, q2, v2):
            return True
    return False


def _orient2d_hom(a, b, c):
    """Sign of the 2D orientation of homogeneous (x, y, w) points, w > 0."""
    return sign(det3((a[0], a[1], a[2]), (b[0], b[1], b[2]), (c[0], c[1], c[2])))


def _between2d(p, q, x) -> bool:
    """For collinear homogeneous 2D points: does x lie within segment [p, q]?"""
    lo0, hi0 = sorted((p[0] * q[2], q[0] * p[2]))
    lo1, hi1 = sorted((p[1] * q[2], q[1] * p[2]))
    xw = x[2]
    pw = p[2] * q[2]
    return (lo0 * xw <= x[0] * pw <= hi0 * xw) and (lo1 * xw <= x[1] * pw <= hi1 * xw)


# ---------------------------------------------------------------------------
# Triangle / triangle intersection
# ---------------------------------------------------------------------------

EMPTY = "empty"
SEGMENT = "segment"
NON_GENERIC_CONTACT = "contact"


@dataclass(frozen=True)
class TriTriResult:
    kind: str                      # "empty" | "segment" | "contact"
    p: Point3 | None = None
    q: Point3 | None = None
    reason: str | None = None


def _interval_of_triangle(tri, n, p0num, w, d):
    """Clip the line L(t) = (p0num + t*w*d)/w to a closed integer triangle.

    Returns (lo, hi, vertex_params, online_edges) with exact Fraction bounds;
    (None, None, ...) when the line misses the triangle entirely.
    vertex_params lists parameters of triangle vertices lying on L;
    online_edges lists (t_u, t_v) spans of edges collinear with L.
    """
    a, b, c = tri
    lo = None
    hi = None
    lo_set = hi_set = False
    online = []
    for (g, k), (u, v) in zip(_edge_funcs(a, b, c, n), ((a, b), (b, c), (c, a))):
        P = dot3(g, p0num) + k * w
        Q = w * dot3(g, d)
        if Q == 0:
            if P < 0:
                return None, None, [], []
            if P == 0:
                online.append((u, v))
            continue
        t_bound = Fraction(-P, Q)
        if Q > 0:
            if not lo_set or t_bound > lo:
                lo, lo_set = t_bound, True
        else:
            if not hi_set or t_bound < hi:
                hi, hi_set = t_bound, True
    if not lo_set or not hi_set:
        # The triangle is bounded, so a line not clipped on both sides can
        # only happen through collinear-edge degeneracies; treat the span of
        # the on-line edges as the interval.
        pts = [x for uv in online for x in uv]
        if not pts:
            return None, None, [], []
        params = [_param_on_line(x, p0num, w, d) for x in pts]
        lo2, hi2 = min(params), max(params)
        lo = lo2 if not lo_set else max(lo, lo2)
        hi = hi2 if not hi_set else min(hi, hi2)
    if lo > hi:
        return None, None, [], []
    vparams = []
    dd = dot3(d, d)
    for x in (a, b, c):
        rel = sub3(mul3(x, w), p0num)
        if cross3(rel, d) == (0, 0, 0):
            vparams.append(Fraction(dot3(rel, d), w * dd))
    online_params = [(_param_on_line(u, p0num, w, d), _param_on_line(v, p0num, w, d))
                     for u, v in online]
    return lo, hi, vparams, online_params


def _param_on_line(x, p0num, w, d):
    rel = sub3(mul3(x, w), p0num)
    return Fraction(dot3(rel, d), w * dot3(d, d))


def _tri_tri_int(t1, n1, t2, n2):
    """Integer-level triangle intersection.

    Returns ("empty",) | ("contact", reason) | ("segment", hom_p, hom_q).
    """
    d = cross3(n1, n2)
    if d == (0, 0, 0):
        if _point_plane_side((t2[0][0], t2[0][1], t2[0][2], 1), t1[0], n1) != 0:
            return ("empty",)
        return _coplanar_tri_tri(t1, t2, n1)
    s1 = [_point_plane_side((v[0], v[1], v[2], 1), t2[0], n2) for v in t1]
    if all(s > 0 for s in s1) or all(s < 0 for s in s1):
        return ("empty",)
    s2 = [_point_plane_side((v[0], v[1], v[2], 1), t1[0], n1) for v in t2]
    if all(s > 0 for s in s2) or all(s < 0 for s in s2):
        return ("empty",)
    c1 = dot3(n1, t1[0])
    c2 = dot3(n2, t2[0])
    p0num = add3(mul3(cross3(n2, d), c1), mul3(cross3(d, n1), c2))
    w = dot3(d, d)
    lo1, hi1, vp1, oe1 = _interval_of_triangle(t1, n1, p0num, w, d)
    if lo1 is None:
        return ("empty",)
    lo2, hi2, vp2, oe2 = _interval_of_triangle(t2, n2, p0num, w, d)
    if lo2 is None:
        return ("empty",)
    alpha = max(lo1, lo2)
    beta = min(hi1, hi2)
    if alpha > beta:
        return ("empty",)
    for tu, tv in oe1:
        if max(lo2, min(tu, tv)) <= min(hi2, max(tu, tv)):
            return ("contact", "edge of first triangle lies on the second")
    for tu, tv in oe2:
        if max(lo1, min(tu, tv)) <= min(hi1, max(tu, tv)):
            return ("contact", "edge of second triangle lies on the first")
    for t in vp1:
        if lo2 <= t <= hi2:
            return ("contact", "vertex of first triangle on the second")
    for t in vp2:
        if lo1 <= t <= hi1:
            return ("contact", "vertex of second triangle on the first")
    if alpha == beta:
        return ("contact", "single-point touch")
    if (alpha == lo1 and alpha == lo2) or (beta == hi1 and beta == hi2):
        return ("contact", "intersection endpoint on edges of both triangles")
    return ("segment", _line_point(p0num, w, d, alpha), _line_point(p0num, w, d, beta))


def _line_point(p0num, w, d, t: Fraction):
    num = add3(mul3(p0num, t.denominator), mul3(d, w * t.numerator))
    return hom_normalize((num[0], num[1], num[2], w * t.denominator))


def _coplanar_tri_tri(t1, t2, n):
    """Coplanar triangles: Empty when closures are disjoint, else a contact."""
    axis = max(range(3), key=lambda i: abs(n[i]))
    i, j = [k for k in range(3) if k != axis]

    def project(tri):
        p = [(v[i], v[j]) for v in tri]
        area = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0])
        if area < 0:
            p = [p[0], p[2], p[1]]
        return p

    q1, q2 = project(t1), project(t2)
    for poly, other in ((q1, q2), (q2, q1)):
        for k in range(3):
            ux, uy = poly[k]
            vx, vy = poly[(k + 1) % 3]
            ex, ey = vx - ux, vy - uy
            # The interior of a counterclockwise polygon lies on the positive
            # side of each edge; strict negativity of all of the other
            # triangle's vertices separates the closures.
            if all(ex * (y - uy) - ey * (x - ux) < 0 for x, y in other):
                return ("empty",)
    return ("contact", "coplanar triangles with touching closures")


def triangle_triangle_intersection(t1, t2) -> TriTriResult:
    """Exact transverse intersection of two rational triangles.

    Segment is the closure of the transverse intersection of the two open
    triangles when it is a nondegenerate segment.  Every touching, coplanar,
    or incidence configuration is NonGenericContact.  Symmetric in its
    arguments up to segment endpoint order.
    """
    dens = [q.denominator for tri in (t1, t2) for p in tri for q in p.coords()]
    m = 1
    for den in dens:
        m = m * den // gcd(m, den)
    it1 = tuple((int(p.x * m), int(p.y * m), int(p.z * m)) for p in t1)
    it2 = tuple((int(p.x * m), int(p.y * m), int(p.z * m)) for p in t2)
    n1 = tri_normal(*it1)
    n2 = tri_normal(*it2)
    if n1 == (0, 0, 0) or n2 == (0, 0, 0):
        raise ValueError("degenerate triangle")
    res = _tri_tri_int(it1, n1, it2, n2)
    if res[0] == "empty":
        return TriTriResult(EMPTY)
    if res[0] == "contact":
        return TriTriResult(NON_GENERIC_CONTACT, reason=res[1])
    _, hp, hq = res
    scale = Fraction(1, m)
    pa = hom_to_point(hom_scale(hp, scale))
    pb = hom_to_point(hom_scale(hq, scale))
    if pb.coords() < pa.coords():
        pa, pb = pb, pa
    return TriTriResult(SEGMENT, p=pa, q=pb)
