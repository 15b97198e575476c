"""Command-line surface: scene analysis, move verification, script ledgers,
scene generation and oracle cross-checks, with machine-readable output.

Exit codes: 0 ok; 2 parse failure; 3 validation failure; 4 non-generic
scene; 5 inconsistency (failed verification, oracle disagreement).  Reports
render rationals as num/den and half-integers as k/2; no decimal output.
Output is byte-identical across runs for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import moves, oracle, viz
from .arrangement import (double_segments, genericity_check, stitch_curves,
                          triple_points)
from .errors import (CatalogueError, ConsistencyError, DegenerateSamplingError,
                     GenericityError, MoveInputError, ParseError,
                     SceneValidationError)
from .exactgeom import Point3, format_rational, parse_rational, pt
from .numbering import DEFAULT_SEED, alexander_index, st2, pattern_label
from .surface import load_scene, save_scene

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATE = 3
EXIT_NON_GENERIC = 4
EXIT_INCONSISTENT = 5

REPORT_VERSION = 1


def _point_text(p: Point3) -> str:
    return ",".join(format_rational(c) for c in p.coords())


def _parse_point_arg(text: str) -> Point3:
    body = text.strip().strip("()")
    parts = body.split(",")
    if len(parts) != 3:
        raise ParseError(f"bad point {text!r}; expected x,y,z")
    return pt(*(parse_rational(c) for c in parts))


def build_report(scene_path, s, ray_seed: int) -> dict:
    """Full structured analysis of a Generic scene."""
    segs = double_segments(s)
    curves = stitch_curves(segs)
    result = st2(s, ray_seed)
    tps = triple_points(s)
    records = []
    for i, (tp, ti) in enumerate(zip(tps, result.per_triple_point)):
        records.append({
            "id": i,
            "location": [format_rational(c) for c in tp.location.coords()],
            "triangles": list(tp.triangle_triple),
            "octants": {pattern_label(pat): str(ti.octant_indices[pat])
                        for pat in sorted(ti.octant_indices)},
            "ind": ti.ind,
        })
    return {
        "report_version": REPORT_VERSION,
        "scene": str(scene_path),
        "seed": ray_seed,
        "genericity": "Generic",
        "stats": {
            "vertices": s.vertex_count(),
            "triangles": s.triangle_count(),
            "double_segments": len(segs),
            "double_curves": len(curves),
            "triple_points": len(tps),
        },
        "triple_points": records,
        "st2": result.value,
        "parity": result.parity,
    }


def _render_report_text(rep: dict) -> str:
    lines = [f"report_version: {rep['report_version']}",
             f"scene: {rep['scene']}",
             f"seed: {rep['seed']}",
             f"genericity: {rep['genericity']}"]
    for key in ("vertices", "triangles", "double_segments", "double_curves",
                "triple_points"):
        lines.append(f"{key}: {rep['stats'][key]}")
    for r in rep["triple_points"]:
        octs = ",".join(f"{k}:{v}" for k, v in sorted(r["octants"].items()))
        lines.append(f"tp {r['id']} location={','.join(r['location'])} "
                     f"ind={r['ind']} octants={octs}")
    lines.append(f"st2: {rep['st2']}")
    lines.append(f"parity: {rep['parity']}")
    return "\n".join(lines) + "\n"


def _emit(rep: dict, fmt: str, text_renderer) -> None:
    if fmt == "structured":
        sys.stdout.write(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text_renderer(rep))


def cmd_analyze(args) -> int:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    s = load_scene(args.scene)
    report = genericity_check(s)
    if not report.is_generic:
        _print_witnesses(args.scene, report)
        return EXIT_NON_GENERIC
    rep = build_report(args.scene, s, seed)
    _emit(rep, args.format, _render_report_text)
    if args.figure:
        viz.render_scene_figure(s, double_segments(s), triple_points(s),
                                args.figure, title=str(args.scene))
        sys.stderr.write(f"figure written to {args.figure}\n")
    return EXIT_OK


def _print_witnesses(path, report) -> None:
    sys.stdout.write(f"scene: {path}\ngenericity: NonGeneric\n")
    for desc, loc in report.witnesses:
        where = f" at {_point_text(loc)}" if loc is not None else ""
        sys.stdout.write(f"witness: {desc}{where}\n")


def cmd_verify_move(args) -> int:
    before = load_scene(args.before)
    after = load_scene(args.after)
    for path, s in ((args.before, before), (args.after, after)):
        report = genericity_check(s)
        if not report.is_generic:
            _print_witnesses(path, report)
            return EXIT_NON_GENERIC
    witness = None
    if args.witness:
        halves = args.witness.split("->")
        if len(halves) != 2:
            raise ParseError(f"bad witness {args.witness!r}; expected (x,y,z)->(x,y,z)")
        witness = (_parse_point_arg(halves[0]), _parse_point_arg(halves[1]))
    locus = None
    if args.locus:
        close = args.locus.rfind(")")
        if close < 0 or "," not in args.locus[close:]:
            raise ParseError(f"bad locus {args.locus!r}; expected (x,y,z),r")
        locus = (_parse_point_arg(args.locus[:close + 1]),
                 parse_rational(args.locus[close + 2:]))
    seed = DEFAULT_SEED if args.seed is None else args.seed
    event = moves.MoveEvent(args.kind, before, after,
                            claimed_q_class=args.qclass, witness=witness,
                            locus=locus)
    entry = moves.verify_event(event, seed)
    rep = _ledger_entry_dict(entry)
    if event.kind == "Q" and witness is not None:
        try:
            rep["classified"] = moves.classify_q(event, seed)
        except MoveInputError as exc:
            rep["classified"] = f"error: {exc}"
    _emit(rep, args.format, _render_ledger_entry_text)
    return EXIT_OK if entry.consistent else EXIT_INCONSISTENT


def _ledger_entry_dict(entry) -> dict:
    rep = {
        "kind": entry.event.kind,
        "st_before": entry.st_before,
        "st_after": entry.st_after,
        "delta": entry.delta,
        "verdict": entry.verdict,
    }
    if entry.reason:
        rep["reason"] = entry.reason
    if entry.sheet_delta is not None:
        rep["sheet_delta"] = entry.sheet_delta
        rep["static_triple_shift"] = entry.static_triple_shift
    return rep


def _render_ledger_entry_text(rep: dict) -> str:
    line = (f"kind={rep['kind']} st_before={rep['st_before']} "
            f"st_after={rep['st_after']} delta={rep['delta']} "
            f"verdict={rep['verdict']}")
    if "sheet_delta" in rep:
        line += (f" sheet_delta={rep['sheet_delta']} "
                 f"static_triple_shift={rep['static_triple_shift']}")
    if "classified" in rep:
        line += f" classified={rep['classified']}"
    out = line + "\n"
    if rep.get("reason"):
        out += f"reason: {rep['reason']}\n"
    return out


def cmd_run_script(args) -> int:
    script = moves.load_script(args.script)
    for i, s in enumerate(script.scenes):
        report = genericity_check(s)
        if not report.is_generic:
            _print_witnesses(f"{args.script}[scene {i}]", report)
            return EXIT_NON_GENERIC
    res = moves.run_script(script, args.seed)   # None: use the script's seed
    rep = {
        "script": str(args.script),
        "title": script.title,
        "events": [_ledger_entry_dict(e) for e in res.entries],
        "first_parity_flip": res.first_parity_flip,
        "consistent": res.consistent,
    }
    _emit(rep, args.format, _render_script_text)
    if args.figure:
        viz.render_ledger_figure(res.entries, res.first_parity_flip,
                                 args.figure, title=script.title or "move ledger")
        sys.stderr.write(f"figure written to {args.figure}\n")
    return EXIT_OK if res.consistent else EXIT_INCONSISTENT


def _render_script_text(rep: dict) -> str:
    lines = [f"script: {rep['script']}"]
    if rep["title"]:
        lines.append(f"title: {rep['title']}")
    for i, e in enumerate(rep["events"]):
        line = (f"event {i} kind={e['kind']} st_before={e['st_before']} "
                f"st_after={e['st_after']} delta={e['delta']} verdict={e['verdict']}")
        lines.append(line)
        if e.get("reason"):
            lines.append(f"  reason: {e['reason']}")
    flip = rep["first_parity_flip"]
    lines.append(f"first_parity_flip={'none' if flip is None else flip}")
    lines.append(f"consistent: {rep['consistent']}")
    return "\n".join(lines) + "\n"


def cmd_gen_scene(args) -> int:
    obj = moves.canned_scene(args.name)
    if isinstance(obj, moves.MoveScript):
        moves.save_script(obj, args.out)
    else:
        save_scene(obj, args.out)
    sys.stdout.write(f"wrote {args.out}\n")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    resolution = args.resolution_flag if args.resolution_flag else args.resolution
    if resolution is None:
        raise ParseError("oracle-check needs a resolution (positional or --resolution)")
    s = load_scene(args.scene)
    report = genericity_check(s)
    if not report.is_generic:
        _print_witnesses(args.scene, report)
        return EXIT_NON_GENERIC
    seed = DEFAULT_SEED if args.seed is None else args.seed
    grid = oracle.label_regions(s, resolution)
    result = st2(s, seed)
    agree = 0
    disagreements = []
    for ti in result.per_triple_point:
        for pat in sorted(ti.samples):
            p = ti.samples[pat]
            got = oracle.index_at_point(grid, p)
            if got == ti.octant_indices[pat]:
                agree += 1
            else:
                disagreements.append((p, ti.octant_indices[pat], got))
    extra = 0
    if args.points:
        rng = random.Random(seed)
        (lo, hi) = s.bounding_box
        span = [hi[i] - lo[i] for i in range(3)]
        n = 1 << 12
        while extra < args.points:
            p = pt(*(lo[i] + span[i] * Fraction(rng.randrange(-n // 8, n + n // 8), n)
                     for i in range(3)))
            try:
                want = alexander_index(p, s, seed)
            except ValueError:
                continue
            got = oracle.index_at_point(grid, p)
            extra += 1
            if got == want:
                agree += 1
            else:
                disagreements.append((p, want, got))
    total = agree + len(disagreements)
    sys.stdout.write(f"resolution={resolution} labels={grid.label_count()} "
                     f"checked={total} agree={agree} disagree={len(disagreements)}\n")
    if disagreements:
        p, want, got = disagreements[0]
        sys.stdout.write(f"first disagreement at {_point_text(p)}: "
                         f"ray={want} voxel={got}\n")
        return EXIT_INCONSISTENT
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strangeness",
        description="St2 invariant of immersed closed oriented surfaces, "
                    "in exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figure=False):
        p.add_argument("--seed", type=int, default=None,
                       help=f"ray-casting seed (default {DEFAULT_SEED}; "
                            "run-script defaults to the script's own seed)")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if figure:
            p.add_argument("--figure", metavar="PATH",
                           help="also render a figure to this file")

    p = sub.add_parser("analyze", help="full report on one scene")
    p.add_argument("scene")
    common(p, figure=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-move", help="check one before/after jump")
    p.add_argument("before")
    p.add_argument("after")
    p.add_argument("--kind", required=True, choices=("E", "H", "T", "Q"))
    p.add_argument("--qclass", choices=("Q0", "Q1", "Q2", "Q3"))
    p.add_argument("--witness", help="(x,y,z)->(x,y,z) region witness points")
    p.add_argument("--locus", help="(x,y,z),r ball holding the affected triple points")
    common(p)
    p.set_defaults(func=cmd_verify_move)

    p = sub.add_parser("run-script", help="verify a move script and its ledger")
    p.add_argument("script")
    common(p, figure=True)
    p.set_defaults(func=cmd_run_script)

    p = sub.add_parser("gen-scene", help="write a canned scene or script")
    p.add_argument("name", help=f"one of: {', '.join(moves.canned_names())}")
    p.add_argument("out")
    p.set_defaults(func=cmd_gen_scene)

    p = sub.add_parser("oracle-check", help="voxel oracle vs ray casting")
    p.add_argument("scene")
    p.add_argument("resolution", nargs="?", type=int, default=None)
    p.add_argument("--resolution", dest="resolution_flag", type=int, default=None)
    p.add_argument("--points", type=int, default=0,
                   help="additional random off-surface comparison points")
    common(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except FileNotFoundError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except CatalogueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except SceneValidationError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        return EXIT_VALIDATE
    except GenericityError as exc:
        sys.stderr.write(f"non-generic scene: {exc}\n")
        return EXIT_NON_GENERIC
    except (MoveInputError, ConsistencyError, DegenerateSamplingError) as exc:
        sys.stderr.write(f"inconsistency: {exc}\n")
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
