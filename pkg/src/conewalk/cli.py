"""Command-line entry point.

Documents go to standard output (or ``--out``), diagnostics to standard
error. Exit status is 0 on success, 1 on a domain error and 2 on a usage
error.
"""
import argparse
import json
import logging
import os
import sys

from .assigner import MODES, assign_all
from .complex import validate_complex
from .coning import classify_edges, triangulate
from .errors import BudgetExceeded, ConewalkError
from .face_cycles import compute_face_cycles, orient_cycles
from .geometry import export_coordinates, verify_nonflat
from .io import (builtin_example, builtin_names, generate_random_complex, parse_complex,
                 parse_triangulation, write_triangulation)
from .oracle import DEFAULT_BUDGET, b_face_restriction, oracle_solve
from .templates import KINDS, build_template

log = logging.getLogger("conewalk")


def default_seed():
    return int(os.environ.get("CONEWALK_SEED", "0"))


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def template_document(kind):
    tpl = build_template(kind)
    out = [f"template {kind}", f"vertices {tpl.n_vertices}"]
    out += [f"vertex {i} " + " ".join(repr(x) for x in p) for i, p in enumerate(tpl.coordinates)]
    out.append(f"faces {len(tpl.faces)}")
    out += [f"face {f} : " + " ".join(str(v) for v in face) for f, face in enumerate(tpl.faces)]
    if tpl.opposite is not None:
        out += [f"opposite {f} {g}" for f, g in enumerate(tpl.opposite)]
    return "\n".join(out) + "\n"


def cycle_lines(cx, seed):
    out = []
    for i, cyc in enumerate(orient_cycles(compute_face_cycles(cx), seed)):
        out.append(f"cycle {i} length {len(cyc)} : " + " ".join(str(t) for t in cyc.two_cells))
        out += [f"owner {tc} {c} {f}" for tc, (c, f) in zip(cyc.two_cells, cyc.exits)]
    return out


def run_triangulate(args):
    cx = parse_complex(_read(args.input))
    report = ["report conewalk"] + validate_complex(cx).lines()
    asg = assign_all(cx, args.mode, args.seed, args.budget)
    if all(t.opposite is not None for t in cx.templates) and args.mode != "triangle":
        report += cycle_lines(cx, args.seed)
    report += asg.dump()
    report += [f"note {n}" for n in asg.notes]
    for tc in sorted(asg.step):
        log.info("two-cell %d assigned by %s", tc, asg.step[tc])
    tri, cones = triangulate(cx, asg)
    problems = tri.check()
    if problems:
        raise ConewalkError("invalid triangulation: " + "; ".join(problems[:3]))
    kinds = classify_edges(cx, tri)
    report.append(f"triangulation tets {tri.size} edges {sum(kinds.values())} "
                  + " ".join(f"{k} {v}" for k, v in kinds.items()))
    if args.geometry:
        cert = verify_nonflat(cx, cones, eps=args.eps)
        report += cert.lines()
        for line in cert.lines():
            print(line, file=sys.stderr)
        if args.export:
            with open(args.export, "w", encoding="utf-8") as fh:
                json.dump(export_coordinates(cx, cones), fh, indent=1)
                fh.write("\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(report) + "\n")
    _emit(write_triangulation(tri), args.out)
    return 0


def run_verify(args):
    tri = parse_triangulation(_read(args.input))
    problems = tri.check()
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return 1
    print(f"valid tets {tri.size} edges {len(tri.edge_classes())} "
          f"vertices {len(tri.vertex_classes())} euler {tri.euler()}")
    return 0


def run_oracle(args):
    cx = parse_complex(_read(args.input))
    restriction = b_face_restriction(cx, args.seed) if args.restrict else None
    try:
        result = oracle_solve(cx, restriction=restriction, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"budget-exceeded nodes {exc.nodes}", file=sys.stderr)
        return 1
    _emit("\n".join(result.lines()) + "\n", args.out)
    return 0 if result.status == "sat" else 1


def run_generate(args):
    _emit(generate_random_complex(args.cells, args.kind, args.seed), args.out)
    return 0


def run_template(args):
    _emit(template_document(args.kind), args.out)
    return 0


def run_example(args):
    if args.list:
        print("\n".join(builtin_names()))
        return 0
    if not args.name:
        raise SystemExit(2)
    _emit(builtin_example(args.name), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="conewalk",
                                     description="Triangulate ideal polyhedral cell complexes by coning.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangulate", help="assign diagonals, cone every cell, write the gluing table")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=("auto",) + MODES, default="auto")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--report", help="write the text report to this file")
    p.add_argument("--trace", action="store_true", help="log which step assigned each 2-cell")
    p.add_argument("--geometry", action="store_true", help="run the per-cell non-flatness certificate")
    p.add_argument("--export", help="with --geometry, write tetrahedron coordinates as JSON")
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=run_triangulate)

    p = sub.add_parser("verify", help="check a triangulation document")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("oracle", help="exhaustive search for a valid diagonal assignment")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--restrict", action="store_true", help="limit B-faces to their allowed apex pair")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=run_oracle)

    p = sub.add_parser("generate", help="random closed complex")
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, default="dodecahedron")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=run_generate)

    p = sub.add_parser("template", help="dump a canonical polyhedron template")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out")
    p.set_defaults(func=run_template)

    p = sub.add_parser("example", help="print a built-in complex document")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=run_example)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = default_seed()
    if args.command == "generate" and args.cells < 1:
        parser.error("--cells must be at least 1")
    level = logging.INFO if (args.verbose or getattr(args, "trace", False)) else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args)
    except ConewalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
