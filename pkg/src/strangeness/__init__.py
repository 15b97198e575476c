"""Exact-arithmetic computation of the St2 triple-point invariant for
generic immersed closed oriented surfaces in 3-space."""

from .errors import (CatalogueError, ConsistencyError, DegenerateSamplingError,
                     GenericityError, MoveInputError, ParseError,
                     SceneValidationError, StrangenessError)
from .exactgeom import (HalfInteger, Point3, Rational, Ray, Vector3,
                        format_rational, orient3d, parse_rational, pt,
                        ray_triangle_crossing, triangle_triangle_intersection,
                        vec)
from .surface import (Mesh, Scene, SceneTransform, apply, dump_scene, gen_box,
                      gen_slab, gen_sphere, load_scene, parse_scene, perturb,
                      reverse_all, reverse_orientation, save_scene, scale,
                      scene, translate, validate)
from .arrangement import (DoubleCurve, DoubleSegment, GenericityReport,
                          TriplePoint, double_segments, genericity_check,
                          stitch_curves, triple_points)
from .numbering import (DEFAULT_SEED, RegionSample, St2Result,
                        TriplePointIndex, alexander_index, index_opposite_pair,
                        octant_samples, region_sample, st2,
                        triple_point_index)
from .oracle import VoxelGrid, index_at_point, label_regions, oracle_index
from .moves import (LedgerEntry, MoveEvent, MoveScript, ScriptResult,
                    canned_event, canned_names, canned_scene, classify_q,
                    load_script, run_script, save_script, verify_event)

__all__ = [
    "CatalogueError", "ConsistencyError", "DegenerateSamplingError",
    "GenericityError", "MoveInputError", "ParseError", "SceneValidationError",
    "StrangenessError",
    "HalfInteger", "Point3", "Rational", "Ray", "Vector3", "format_rational",
    "orient3d", "parse_rational", "pt", "ray_triangle_crossing",
    "triangle_triangle_intersection", "vec",
    "Mesh", "Scene", "SceneTransform", "apply", "dump_scene", "gen_box",
    "gen_slab", "gen_sphere", "load_scene", "parse_scene", "perturb",
    "reverse_all", "reverse_orientation", "save_scene", "scale", "scene",
    "translate", "validate",
    "DoubleCurve", "DoubleSegment", "GenericityReport", "TriplePoint",
    "double_segments", "genericity_check", "stitch_curves", "triple_points",
    "DEFAULT_SEED", "RegionSample", "St2Result", "TriplePointIndex",
    "alexander_index", "index_opposite_pair", "octant_samples",
    "region_sample", "st2", "triple_point_index",
    "VoxelGrid", "index_at_point", "label_regions", "oracle_index",
    "LedgerEntry", "MoveEvent", "MoveScript", "ScriptResult", "canned_event",
    "canned_names", "canned_scene", "classify_q", "load_script", "run_script",
    "save_script", "verify_event",
]

__version__ = "0.1.0"
