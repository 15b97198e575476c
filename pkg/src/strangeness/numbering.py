"""Alexander numbering of complement regions by exact ray casting, triple
point indices, and the St2 invariant.

Sign convention (documented, fixed): walking from a point toward infinity,
crossing a sheet along its coorientation normal contributes +1, against it
-1, and ind(p) = -1/2 + sum of contributions.  Equivalently, region indices
increase as one moves against the coorientation from infinity inward.  The
index of the unbounded region is -1/2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ._geom import SceneGeometry, geometry
from .arrangement import TriplePoint, require_generic, triple_points
from .errors import ConsistencyError, DegenerateSamplingError
from .exactgeom import (HalfInteger, Point3, _ray_tri_int, cross3, det3,
                        hom_normalize)
from .surface import Scene

DEFAULT_SEED = 7

_MAX_RAY_ATTEMPTS = 32
_MAX_EPS_SHRINKS = 48
_DIR_BOUND = 1 << 20

SIGN_PATTERNS = tuple((s1, s2, s3) for s1 in (-1, 1) for s2 in (-1, 1) for s3 in (-1, 1))

_PAIR_CLASS_LABELS = {0: "d->d+3", 1: "d+1->d+2", 2: "d+2->d+1", 3: "d+3->d"}


@dataclass(frozen=True)
class RegionSample:
    point: Point3
    index: HalfInteger


@dataclass(frozen=True)
class TriplePointIndex:
    triple_point: int               # position in triple_points(scene) order
    location: Point3
    octant_indices: dict            # sign pattern -> HalfInteger
    ind: int
    samples: dict                   # sign pattern -> Point3 (certified octant samples)


@dataclass(frozen=True)
class St2Result:
    value: int
    parity: int
    per_triple_point: tuple


def _random_direction(rng: random.Random):
    while True:
        v = (rng.randrange(-_DIR_BOUND, _DIR_BOUND + 1),
             rng.randrange(-_DIR_BOUND, _DIR_BOUND + 1),
             rng.randrange(-_DIR_BOUND, _DIR_BOUND + 1))
        if v != (0, 0, 0):
            return v


def _ray_index_doubled(geom: SceneGeometry, h, rng: random.Random) -> int:
    """Doubled Alexander index of the region containing the point h.

    Casts a seeded pseudo-random rational ray and counts signed crossings;
    any degenerate contact re-samples the direction from the seed sequence.
    """
    ox, oy, oz, ow = h
    for _ in range(_MAX_RAY_ATTEMPTS):
        v = _random_direction(rng)
        total = 0
        ok = True
        for t in geom.tris:
            bb = t.bbox
            # A box entirely behind the ray on some axis can never be hit.
            if v[0] >= 0 and bb[3] * ow < ox:
                continue
            if v[0] <= 0 and bb[0] * ow > ox:
                continue
            if v[1] >= 0 and bb[4] * ow < oy:
                continue
            if v[1] <= 0 and bb[1] * ow > oy:
                continue
            if v[2] >= 0 and bb[5] * ow < oz:
                continue
            if v[2] <= 0 and bb[2] * ow > oz:
                continue
            res = _ray_tri_int(h, v, *t.verts, t.normal)
            if res[0] == "deg":
                ok = False
                break
            if res[0] == "cross":
                total += res[1]
        if ok:
            return -1 + 2 * total
    raise DegenerateSamplingError(
        f"no non-degenerate ray direction found in {_MAX_RAY_ATTEMPTS} attempts")


def alexander_index(p: Point3, s: Scene, ray_seed: int = DEFAULT_SEED) -> HalfInteger:
    """ind(p) for a point off the surface of a Generic scene.

    ind(p) = -1/2 + sum over interior ray crossings of sigma, sigma = +1 when
    the ray direction agrees with the crossed sheet's coorientation normal.
    """
    require_generic(s)
    geom = geometry(s)
    h = geom.hom(p)
    if geom.point_on_surface(h):
        raise ValueError(f"point {p.coords()} lies on the surface")
    return HalfInteger(_ray_index_doubled(geom, h, random.Random(ray_seed)))


def region_sample(p: Point3, s: Scene, ray_seed: int = DEFAULT_SEED) -> RegionSample:
    """A witness point bundled with its computed region index."""
    return RegionSample(p, alexander_index(p, s, ray_seed))


# ---------------------------------------------------------------------------
# Octant sampling at triple points
# ---------------------------------------------------------------------------

def _dual_offsets(n1, n2, n3):
    """Integer vectors u_i with u_i . n_j = 0 for i != j and > 0 for i == j."""
    d = det3(n1, n2, n3)
    if d == 0:
        raise ConsistencyError("triple point sheets are not transversal")
    cols = (cross3(n2, n3), cross3(n3, n1), cross3(n1, n2))
    s = 1 if d > 0 else -1
    out = []
    for c in cols:
        g = gcd(gcd(abs(c[0]), abs(c[1])), abs(c[2])) or 1
        out.append(tuple(s * comp // g for comp in c))
    return out


def _octant_sample_homs(geom: SceneGeometry, t_hom, tri_ids):
    """Certified sample points, one per sign octant of the three sheets."""
    n1, n2, n3 = (geom.tris[tid].normal for tid in tri_ids)
    u = _dual_offsets(n1, n2, n3)
    bb = geom.scaled_bbox()
    span = max(bb[3] - bb[0], bb[4] - bb[1], bb[5] - bb[2])
    maxu = max(max(abs(c) for c in ui) for ui in u)
    eps0 = Fraction(span, 16 * maxu)
    hosts = set(tri_ids)
    tx, ty, tz, tw = t_hom
    for k in range(_MAX_EPS_SHRINKS):
        eps = eps0 / (4 ** k)
        en, ed = eps.numerator, eps.denominator
        samples = {}
        ok = True
        for pattern in SIGN_PATTERNS:
            o = (sum(si * ui[0] for si, ui in zip(pattern, u)),
                 sum(si * ui[1] for si, ui in zip(pattern, u)),
                 sum(si * ui[2] for si, ui in zip(pattern, u)))
            h = hom_normalize((tx * ed + en * o[0] * tw,
                               ty * ed + en * o[1] * tw,
                               tz * ed + en * o[2] * tw,
                               tw * ed))
            if geom.point_on_surface(h):
                ok = False
                break
            # The sample's segment back to the triple point must cross
            # nothing; the three host sheets are excluded because the open
            # segment is strictly off their planes by construction.
            res = geom.segment_classification(t_hom, h, skip=hosts)
            if res[0] != "ok" or res[1]:
                ok = False
                break
            samples[pattern] = h
        if ok:
            return samples
    raise DegenerateSamplingError(
        f"could not certify octant samples after {_MAX_EPS_SHRINKS} shrinks")


def octant_samples(t: TriplePoint, s: Scene) -> dict:
    """Eight certified off-surface points keyed by sign pattern (s1, s2, s3).

    Pattern component s_i is the sign of (sample - t) . n_i for the i-th
    sheet's coorientation normal n_i.
    """
    require_generic(s)
    geom = geometry(s)
    homs = _octant_sample_homs(geom, geom.hom(t.location), t.triangle_triple)
    return {pat: geom.unscale_hom(h) for pat, h in homs.items()}


_LAW_DIFFS_DOUBLED = (0, 2, 2, 2, 4, 4, 4, 6)


def triple_point_index(t: TriplePoint, s: Scene,
                       ray_seed: int = DEFAULT_SEED,
                       position: int = -1) -> TriplePointIndex:
    """Eight octant indices, the eight-region law check, and ind = average."""
    require_generic(s)
    geom = geometry(s)
    t_hom = geom.hom(t.location)
    homs = _octant_sample_homs(geom, t_hom, t.triangle_triple)
    octants = {}
    for pat, h in homs.items():
        doubled = _ray_index_doubled(geom, h, random.Random(ray_seed))
        octants[pat] = HalfInteger(doubled)
    doubled_sorted = sorted(v.doubled for v in octants.values())
    base = doubled_sorted[0]
    if tuple(v - base for v in doubled_sorted) != _LAW_DIFFS_DOUBLED:
        raise ConsistencyError(
            f"eight-region law violated at {t.location.coords()}: "
            f"{[Fraction(v, 2) for v in doubled_sorted]}")
    total = sum(v.doubled for v in octants.values())
    if total % 16 != 0:
        raise ConsistencyError(f"triple point index not an integer at {t.location.coords()}")
    ind = total // 16
    for pat in SIGN_PATTERNS:
        neg = tuple(-c for c in pat)
        if octants[pat].doubled + octants[neg].doubled != 4 * ind:
            raise ConsistencyError(
                f"opposite-pair average mismatch at {t.location.coords()} for {pat}")
    return TriplePointIndex(
        triple_point=position,
        location=t.location,
        octant_indices=octants,
        ind=ind,
        samples={pat: geom.unscale_hom(h) for pat, h in homs.items()},
    )


def st2(s: Scene, ray_seed: int = DEFAULT_SEED) -> St2Result:
    """St2(S) = sum of ind(t) over all triple points; always an integer."""
    key = ("st2", ray_seed)
    if key not in s._cache:
        tps = triple_points(s)
        per = tuple(triple_point_index(t, s, ray_seed, position=i)
                    for i, t in enumerate(tps))
        value = sum(ti.ind for ti in per)
        s._cache[key] = St2Result(value=value, parity=value % 2,
                                  per_triple_point=per)
    return s._cache[key]


def index_opposite_pair(t: TriplePointIndex, pair_key) -> tuple[int, str]:
    """Average of an opposite octant pair (always equal to ind) plus the
    ordered transition class of the pair, used by move classification."""
    key = _normalize_pattern(pair_key)
    neg = tuple(-c for c in key)
    v1 = t.octant_indices[key]
    v2 = t.octant_indices[neg]
    total = v1.doubled + v2.doubled
    if total % 4 != 0:
        raise ConsistencyError("opposite pair average is not an integer")
    avg = total // 4
    if avg != t.ind:
        raise ConsistencyError("opposite pair average differs from ind")
    d = min(v.doubled for v in t.octant_indices.values())
    k = (v1.doubled - d) // 2
    return avg, _PAIR_CLASS_LABELS[k]


def _normalize_pattern(pair_key):
    if isinstance(pair_key, str):
        if len(pair_key) != 3 or any(c not in "+-" for c in pair_key):
            raise ValueError(f"bad sign pattern {pair_key!r}")
        return tuple(1 if c == "+" else -1 for c in pair_key)
    key = tuple(pair_key)
    if key not in SIGN_PATTERNS:
        raise ValueError(f"bad sign pattern {pair_key!r}")
    return key


def pattern_label(pattern) -> str:
    return "".join("+" if c > 0 else "-" for c in pattern)
