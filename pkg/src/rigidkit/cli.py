"""``rigidkit`` command line: check, realize, rank, svg, oracle.

Exit codes: 0 success or true verdict, 1 false verdict, 2 input or domain
error, 3 sampling exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .errors import DomainError, NonGenericSamplingExhausted, RigidkitError
from .genmat import build_pattern, generic_rank
from .io import Document, Slider
from .realize import (
    AXIS_NORMALS,
    DirectionAssignment,
    SliderAssignment,
    sample_generic_directions,
    sample_generic_sliders,
    solve_direction_network,
    solve_direction_slider,
)
from .sparsity import check_color_looped_laman, check_graded, check_sparse

MODELS = ("laman", "tight22", "looped-laman", "looped22", "color-looped-laman")
PATTERNS = ("m11", "m11dot", "m101", "m22", "m202", "m202c", "m23", "m203")

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_SAMPLING = 0, 1, 2, 3


def _witness_json(verdict) -> dict:
    w = verdict.witness
    count = w.edges if verdict.scope == "edges" else w.elements
    return {
        "vertices": sorted(w.vertices),
        "edges": w.edges,
        "loops": w.loops,
        "counted": verdict.scope,
        "count": count,
        "bound": verdict.k * w.size - verdict.l,
    }


def _coloring_json(g, coloring) -> dict:
    out = {}
    for col, (edges, loops) in coloring.classes().items():
        out[col] = {"edges": [list(g.edges[k]) for k in edges], "loops": [g.loops[k].v for k in loops]}
    return out


def cmd_check(args) -> int:
    doc = io.load(args.input)
    g = doc.graph
    if args.model == "color-looped-laman":
        res = check_color_looped_laman(g)
        out = {"model": args.model, "class": res.graded.cls, "color_looped": res.ok}
        if res.graded.witness is not None:
            out["witness"] = _witness_json(res.graded)
        if res.coloring is not None:
            out["coloring"] = _coloring_json(g, res.coloring)
        _emit(out)
        return EXIT_OK if res.ok else EXIT_FALSE
    if args.model == "laman":
        verdict = check_sparse(g, 2, 3)
    elif args.model == "tight22":
        verdict = check_sparse(g, 2, 2)
    else:
        verdict = check_graded(g, "203" if args.model == "looped-laman" else "202")
    out = {"model": args.model, "class": verdict.cls}
    if verdict.witness is not None:
        out["witness"] = _witness_json(verdict)
    _emit(out)
    return EXIT_OK if verdict.is_tight else EXIT_FALSE


def _slider_data(doc: Document) -> SliderAssignment:
    g = doc.graph
    normals = []
    for loop, s in zip(g.loops, doc.sliders):
        if s.normal is not None:
            normals.append(s.normal)
        elif loop.color is not None:
            normals.append(AXIS_NORMALS[loop.color])
        else:
            raise DomainError(f"slider on vertex {loop.v} has no normal and its loop no color")
    return SliderAssignment(tuple(normals), tuple(s.offset for s in doc.sliders))


def cmd_realize(args) -> int:
    doc = io.load(args.input)
    g = doc.graph
    slider_mode = args.slider or args.axis_parallel or bool(g.loops)
    if args.seed is not None:
        if slider_mode:
            d, sl = sample_generic_sliders(g, args.seed, args.bound, axis_parallel=args.axis_parallel)
        else:
            d = sample_generic_directions(g, args.seed, args.bound)
            sl = None
    else:
        if doc.directions is None:
            raise DomainError("document has no directions; pass --seed to sample them")
        d = DirectionAssignment(doc.directions)
        sl = None
        if slider_mode:
            if doc.sliders is None:
                raise DomainError("document has no sliders; pass --seed to sample them")
            sl = _slider_data(doc)
            if args.axis_parallel and sl.normals != tuple(AXIS_NORMALS.get(l.color) for l in g.loops):
                raise DomainError("axis-parallel mode needs colored loops with normals matching their colors")
    rep = solve_direction_network(g, d) if sl is None else solve_direction_slider(g, d, sl)
    out = doc.updated(
        directions=d.directions,
        sliders=None if sl is None else tuple(Slider(s, nv) for nv, s in zip(sl.normals, sl.offsets)),
        unique=rep.unique,
        solvable=rep.solvable,
    )
    if rep.realization is not None:
        real = rep.realization
        out = out.updated(
            points=real.points,
            collapsed=tuple(g.edges[k] for k in real.collapsed_edges),
            faithful=real.faithful,
            normalization=real.normalization,
        )
    else:
        out = out.updated(points=None, collapsed=None, faithful=None, normalization=None)
    _write(io.dumps(out), args.output)
    return EXIT_OK


def cmd_rank(args) -> int:
    doc = io.load(args.input)
    g = doc.graph
    kind = {"m11dot": "M11dot"}.get(args.pattern, args.pattern.upper())
    if kind in ("M23", "M203"):
        from .rigidity import Framework, build_rigidity_matrix

        if doc.points is None:
            raise DomainError(f"pattern {args.pattern} needs points")
        normals = ()
        if kind == "M203":
            if g.loops and doc.sliders is None:
                raise DomainError("pattern m203 needs sliders")
            normals = _slider_data(doc).normals if g.loops else ()
        fw = Framework(g, doc.points, normals)
        rank = build_rigidity_matrix(fw, kind).rank()
        _emit({"pattern": args.pattern, "rank": rank, "exact": True})
        return EXIT_OK
    res = generic_rank(build_pattern(g, kind), seed=args.seed, trials=args.trials)
    _emit({"pattern": args.pattern, "rank": res.rank, "exact": False, "trials": res.trials, "note": res.note()})
    return EXIT_OK


def cmd_svg(args) -> int:
    from .svg import render

    doc = io.load(args.input)
    _write(render(doc), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .suites import run_suite

    report = run_suite(args.suite, args.max_n, args.seed, args.jobs)
    if "first_counterexample" in report:
        ce = report["first_counterexample"]
        ce["graph"] = io.graph_to_json(ce["graph"])
    _emit(report)
    return EXIT_OK if report["failed"] == 0 else EXIT_FALSE


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _write(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _default_jobs() -> int:
    raw = os.environ.get("RIGIDKIT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidkit", description="Sparsity, direction networks and rigidity.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide tightness for a combinatorial model")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="solve a direction (or direction-slider) network exactly")
    p.add_argument("input")
    p.add_argument("--slider", action="store_true")
    p.add_argument("--axis-parallel", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("rank", help="rank of a matrix pattern")
    p.add_argument("input")
    p.add_argument("--pattern", required=True, choices=PATTERNS)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("svg", help="draw a realization document")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("oracle", help="cross-check fast code against brute force")
    p.add_argument("--suite", required=True, choices=("sparsity", "decomposition", "realization"))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "jobs", 0) is None:
        args.jobs = _default_jobs()
    try:
        return args.func(args)
    except NonGenericSamplingExhausted as exc:
        print(f"rigidkit: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except (RigidkitError, OSError) as exc:
        print(f"rigidkit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
