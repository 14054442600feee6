"""Command line front end: JSON documents in, JSON documents out.

Input documents look like ``{"support": [[6,0,0],[0,6,0],...], "point": [3,2,0],
"points": [[1,1,0], ...]}``; ``point`` and ``points`` are optional and are
overridden by ``--point`` / ``--points``.

Exit status: 0 success, 1 malformed input, 2 polyhedron not convenient,
3 point already in the polyhedron, 4 failed property check.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .core import SupportSet, build_polyhedron, gamma_minus, nu_from_volumes, plane_label
from .errors import (
    GeometryError,
    MalformedInput,
    NotConvenient,
    PointInPolyhedron,
    TheoremViolation,
)
from .mesh import gamma_minus_mesh, write_obj
from .monotonicity import classify, enumerate_equal, nu_drop
from .oracle import GeneratorConfig, cross_check

EXIT_MALFORMED = 1
EXIT_NOT_CONVENIENT = 2
EXIT_POINT_IN_POLYHEDRON = 3
EXIT_CHECK_FAILED = 4


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are malformed input, not the NotConvenient status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def rational(x: Fraction) -> str:
    return str(Fraction(x))


def load_document(path: str) -> dict:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path) as fh:
                doc = json.load(fh)
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path} is not valid JSON: {e}") from None
    if not isinstance(doc, dict) or "support" not in doc:
        raise MalformedInput("input document must be an object with a 'support' list")
    if not isinstance(doc["support"], list):
        raise MalformedInput("'support' must be a list of integer points")
    return doc


def parse_point(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise MalformedInput(f"cannot parse point {text!r}; expected x,y,z") from None


def parse_points(text: str) -> list:
    return [parse_point(chunk) for chunk in text.split(";") if chunk.strip()]


def _support(doc) -> SupportSet:
    return SupportSet.of(doc["support"])


def _volume_doc(region) -> dict:
    vols = region.volumes()
    return {f"V{i}": rational(v) for i, v in reversed(list(enumerate(vols)))}


def cmd_nu(args) -> dict:
    support = _support(load_document(args.input))
    poly = build_polyhedron(support)
    region = gamma_minus(poly)
    return {
        "nu": nu_from_volumes(region.volumes()),
        "dimension": support.dim,
        "convenient": poly.convenient,
        "support": support.as_lists(),
        "volumes": _volume_doc(region),
    }


def _doc_point(doc, key, flag):
    if flag is not None:
        return flag
    if key not in doc:
        raise MalformedInput(f"no {key!r} given in the document or on the command line")
    return doc[key]


def cmd_classify(args) -> dict:
    doc = load_document(args.input)
    point = _doc_point(doc, "point", parse_point(args.point) if args.point else None)
    if not isinstance(point, (list, tuple)):
        raise MalformedInput("'point' must be a list of integers")
    support = _support(doc)
    poly = build_polyhedron(support)
    cls = classify(poly, point)
    before = nu_from_volumes(gamma_minus(poly).volumes())
    after_support = SupportSet.of(list(support.points) + [tuple(point)])
    after = nu_from_volumes(gamma_minus(build_polyhedron(after_support)).volumes())
    out = cls.to_dict()
    if cls.equal:
        out["nu"] = before
        out["nu_before"] = before
        out["nu_after"] = after
        return out
    return {"relation": out["relation"], "nu_before": before, "nu_after": after, "reasons": out["reasons"]}


def cmd_add(args) -> dict:
    doc = load_document(args.input)
    points = _doc_point(doc, "points", parse_points(args.points) if args.points else None)
    if not isinstance(points, list):
        raise MalformedInput("'points' must be a list of integer points")
    support = _support(doc)
    report = nu_drop(support, points)
    nu_after = nu_from_volumes(gamma_minus(build_polyhedron(report.support)).volumes())
    return {
        "support": report.support.as_lists(),
        "nu_before": nu_after + report.total,
        "nu_after": nu_after,
        "total_drop": report.total,
        "steps": list(report.steps),
        "skipped": list(report.skipped),
    }


def cmd_enumerate_equal(args) -> dict:
    support = _support(load_document(args.input))
    hits = enumerate_equal(support)
    poly = build_polyhedron(support)
    return {
        "nu": nu_from_volumes(gamma_minus(poly).volumes()),
        "count": len(hits),
        "points": [{"point": list(h.point), "plane": plane_label(h.axis), "apex": list(h.apex)} for h in hits],
    }


def cmd_check(args) -> dict:
    try:
        config = GeneratorConfig(args.seed, args.max_intercept, args.extra)
    except ValueError as e:
        raise MalformedInput(str(e)) from None
    if args.iters < 1:
        raise MalformedInput("--iters must be >= 1")
    report = cross_check(config, args.iters, points_per_support=args.points_per_support)
    out = report.to_dict()
    if not report.ok:
        print(json.dumps(out))
        raise CheckFailed(f"{len(report.failures)} property failures")
    return out


def cmd_mesh(args) -> dict:
    support = _support(load_document(args.input))
    vertices, faces = gamma_minus_mesh(support)
    try:
        with open(args.out, "w") as fh:
            write_obj(fh, vertices, faces, comment=f"region under the Newton polyhedron of {support.as_lists()}")
    except OSError as e:
        raise MalformedInput(f"cannot write {args.out}: {e.strerror}") from None
    return {"out": args.out, "vertices": len(vertices), "faces": len(faces)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="newton-number", description="Newton numbers of 3D Newton polyhedra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nu", help="Newton number and volumes")
    p.add_argument("--input", required=True, help="JSON document ('-' for stdin)")
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("classify", help="does adding a point keep the Newton number?")
    p.add_argument("--input", required=True)
    p.add_argument("--point", help="x,y,z")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("add", help="add points one by one and report the drops")
    p.add_argument("--input", required=True)
    p.add_argument("--points", help='"x,y,z;x,y,z;..."')
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("enumerate-equal", help="all lattice points whose addition keeps the Newton number")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_enumerate_equal)

    p = sub.add_parser("check", help="randomized cross check of the theorem and the oracle")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--max-intercept", type=int, default=12)
    p.add_argument("--extra", type=int, default=6)
    p.add_argument("--points-per-support", type=int, default=20)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mesh", help="OBJ surface of the region under the polyhedron")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mesh)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except NotConvenient as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_CONVENIENT
    except PointInPolyhedron as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_POINT_IN_POLYHEDRON
    except (CheckFailed, TheoremViolation, GeometryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except MalformedInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    print(json.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
