"""Command line interface: ``permorb {cover,dim,table,sew,check-ring}``.

Exit codes: 0 ok, 2 inadmissible monodromy, 3 bad file/schema/ring or usage,
4 incomplete module assignment, 5 enumeration cap exceeded, 6 bad sewing pair,
70 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .covering import build_covering, describe, export_dot
from .errors import (
    BadLabel,
    BadMarkedChoice,
    CombinatorialBlowup,
    GroundMismatch,
    IncompleteAssignment,
    InternalConsistencyError,
    InvalidRing,
    NoRemainingPoints,
    NotAdmissible,
    ParseError,
    SchemaError,
    SewPairNotInverse,
)
from .fusion import FusionRing, render_fusion_table, validate_ring
from .monodromy import MonodromyData
from .perm import IndexSet, format_cycles, parse_cycles
from .schema import (
    BUNDLED_RINGS,
    Problem,
    dumps,
    load_problem,
    load_ring,
    problem_to_dict,
)
from .sewing import SewSpec, covering_commutes, factorization_check, sew, sewn_assignment
from .twisted import DEFAULT_CAP, component_factors, twisted_fusion_table

EXIT_OK = 0
EXIT_INADMISSIBLE = 2
EXIT_SCHEMA = 3
EXIT_INCOMPLETE = 4
EXIT_BLOWUP = 5
EXIT_SEW_PAIR = 6
EXIT_INTERNAL = 70


class Output:
    def __init__(self, fmt: str, quiet: bool):
        self.fmt = fmt
        self.quiet = quiet

    @property
    def json(self) -> bool:
        return self.fmt == "json"

    def emit(self, text: str):
        sys.stdout.write(text)

    def emit_json(self, obj):
        sys.stdout.write(dumps(obj))

    def error(self, code: int, kind: str, message: str, **extra):
        if not self.quiet:
            print(f"permorb: error: {message}", file=sys.stderr)
        if self.json:
            self.emit_json({"error": kind, "message": message, **extra})
        return code


def _ring_arg(ref: str, validate: bool) -> FusionRing:
    return load_ring(ref, Path.cwd(), validate)


def _problem_ring(problem: Problem, override: Optional[str], validate: bool) -> FusionRing:
    if override:
        return _ring_arg(override, validate)
    if problem.ring is None:
        raise SchemaError("no fusion ring: give 'ring' in the problem file or --ring")
    return problem.ring


def _orbit_names(data: MonodromyData, orbit) -> list[str]:
    return [data.ground.name(e) for e in orbit]


def cmd_cover(args, out: Output) -> int:
    problem = load_problem(args.problem, not args.no_validate)
    report = build_covering(problem.data)
    data = problem.data
    if args.dot:
        out.emit(export_dot(report))
    elif out.json:
        out.emit_json({
            "total_degree": report.total_degree,
            "components": [
                {
                    "orbit": _orbit_names(data, c.orbit),
                    "degree": c.degree,
                    "genus": c.genus,
                    "branches": [
                        {
                            "point": data.points[b.point].id,
                            "orbit": _orbit_names(data, b.elements),
                            "index": b.index,
                            "marked": data.ground.name(b.marked_element),
                        }
                        for b in c.branches
                    ],
                }
                for c in report.components
            ],
        })
    elif out.quiet:
        out.emit("genera: " + " ".join(str(c.genus) for c in report.components) + "\n")
    else:
        out.emit(describe(report))
    return EXIT_OK


def cmd_dim(args, out: Output) -> int:
    problem = load_problem(args.problem, not args.no_validate)
    ring = _problem_ring(problem, args.ring, not args.no_validate)
    if problem.assignment is None:
        raise IncompleteAssignment(problem.data.orbit_refs())
    data = problem.data
    factors = component_factors(data, ring, problem.assignment)
    dim = 1
    for f in factors:
        dim *= f.factor
    L = ring.labels
    if out.json:
        out.emit_json({
            "components": [
                {"orbit": _orbit_names(data, f.orbit), "genus": f.genus,
                 "labels": [L[x] for x in f.labels], "factor": f.factor}
                for f in factors
            ],
            "dimension": dim,
        })
    elif out.quiet:
        out.emit(f"{dim}\n")
    else:
        lines = []
        for f in factors:
            orbit = "{" + ", ".join(_orbit_names(data, f.orbit)) + "}"
            lines.append(f"component {orbit}: N({f.genus}; {', '.join(L[x] for x in f.labels)}) = {f.factor}")
        lines.append(f"dimension: {dim}")
        out.emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_table(args, out: Output) -> int:
    ring = _ring_arg(args.ring, not args.no_validate)
    ground = IndexSet(args.size)
    g1 = parse_cycles(args.g1, ground)
    g2 = parse_cycles(args.g2, ground)
    table = twisted_fusion_table(ring, args.size, g1, g2, cap=args.cap)
    if out.json:
        name = ground.name

        def mod(m):
            return {name(r): ring.labels[l] for r, l in m.items()}

        out.emit_json({
            "g1": format_cycles(g1), "g2": format_cycles(g2),
            "g3": format_cycles(table.data.gens[2]),
            "rows": [{"in1": mod(a), "in2": mod(b), "out": mod(c), "dim": v} for a, b, c, v in table.rows],
        })
    elif args.csv:
        out.emit(table.render_csv())
    else:
        out.emit(table.render_text())
    return EXIT_OK


def _point_index(data: MonodromyData, point_id: Optional[str], side: str) -> int:
    if point_id is None:
        return 0
    try:
        return data.point_index(point_id)
    except KeyError:
        raise SchemaError(f"{side} file has no point {point_id!r}") from None


def cmd_sew(args, out: Output) -> int:
    validate = not args.no_validate
    left = load_problem(args.left, validate)
    right = load_problem(args.right, validate)
    spec = SewSpec(left.data, right.data,
                   _point_index(left.data, args.left_point, "left"),
                   _point_index(right.data, args.right_point, "right"))
    sewn = sew(spec)
    assignment = None
    if left.assignment is not None and right.assignment is not None:
        assignment = sewn_assignment(spec, left.assignment, right.assignment)
    ring_ref = left.ring_ref
    if (isinstance(ring_ref, str) and ring_ref not in BUNDLED_RINGS) or (isinstance(ring_ref, dict) and "path" in ring_ref):
        ring_ref = None  # relative paths do not survive relocation; inline the ring instead
    sewn_problem = Problem(
        sewn, assignment, left.ring, ring_ref,
        provenance=f"sewn from {Path(args.left).name} and {Path(args.right).name}",
        sewing={
            "left_point": left.data.points[spec.sew_left].id,
            "right_point": right.data.points[spec.sew_right].id,
            "left_rotation": spec.sew_left,
            "right_rotation": spec.sew_right,
        },
    )
    sewn_obj = problem_to_dict(sewn_problem)

    checks = {}
    failed = False
    if args.check_covering:
        rep = covering_commutes(spec, strict=False)
        genera = [c[1] for c in rep.direct]
        checks["covering"] = {"equal": rep.equal, "components": len(rep.direct), "genera": genera,
                              "tubes": list(rep.ledger.tubes)}
        failed |= not rep.equal
    if args.check_factorization:
        ring = _problem_ring(left, args.ring, validate)
        for side in (left, right):
            if side.assignment is None:
                raise IncompleteAssignment(side.data.orbit_refs())
        rep = factorization_check(spec, ring, left.assignment, right.assignment, strict=False)
        checks["factorization"] = {"equal": rep.equal, "lhs": rep.lhs, "rhs": rep.rhs, "terms": rep.terms}
        failed |= not rep.equal

    if args.output:
        Path(args.output).write_text(dumps(sewn_obj), encoding="utf-8")
    if out.json:
        obj = {"output": args.output} if args.output else {"sewn": sewn_obj}
        obj["checks"] = checks
        out.emit_json(obj)
    else:
        if not args.output and not out.quiet:
            out.emit(dumps(sewn_obj))
        if "covering" in checks and not out.quiet:
            c = checks["covering"]
            out.emit(f"covering check: {'OK' if c['equal'] else 'MISMATCH'} "
                     f"(components {c['components']}, genera {c['genera']})\n")
        if "factorization" in checks and not out.quiet:
            c = checks["factorization"]
            rel = "=" if c["equal"] else "!="
            out.emit(f"factorization check: LHS = {c['lhs']} {rel} RHS = {c['rhs']}"
                     f" ({'OK' if c['equal'] else 'MISMATCH'})\n")
    if failed:
        return out.error(EXIT_INTERNAL, "internal_consistency", "a sewing consistency check failed")
    return EXIT_OK


def cmd_check_ring(args, out: Output) -> int:
    ring = load_ring(args.ring, Path.cwd(), validate=False)
    violations = validate_ring(ring)
    if out.json:
        out.emit_json({
            "valid": not violations,
            "violations": [{"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail} for v in violations],
        })
    elif not out.quiet:
        if violations:
            out.emit("".join(f"FAIL {v}\n" for v in violations))
        else:
            out.emit("OK\n")
            if args.table:
                out.emit(render_fusion_table(ring))
    return EXIT_SCHEMA if violations else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SCHEMA, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="output format (default text)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only the headline result, no diagnostics")
    common.add_argument("--no-validate", action="store_true", default=argparse.SUPPRESS,
                        help="load fusion rings without checking the axioms")

    parser = _Parser(prog="permorb", parents=[common],
                                     description="Permutation coverings and twisted conformal block dimensions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cover", parents=[common], help="components, branch data and genera of the covering")
    p.add_argument("problem")
    p.add_argument("--dot", action="store_true", help="emit a Graphviz description")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("dim", parents=[common], help="dimension of the twisted conformal block space")
    p.add_argument("problem")
    p.add_argument("--ring", help="bundled ring name or ring file, overriding the problem's")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("table", parents=[common], help="twisted fusion table for g1, g2 and (g1 g2)^-1")
    p.add_argument("ring", help="bundled ring name or ring file")
    p.add_argument("--size", type=int, required=True, help="size of the ground set E")
    p.add_argument("--g1", required=True, help="cycle notation, e.g. '(1 2)'")
    p.add_argument("--g2", required=True, help="cycle notation")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of table rows")
    p.add_argument("--csv", action="store_true", help="CSV instead of aligned text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sew", parents=[common], help="sew two problems along a pair of points")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--left-point", help="id of the sewn point on the left (default: first)")
    p.add_argument("--right-point", help="id of the sewn point on the right (default: first)")
    p.add_argument("-o", "--output", help="write the sewn problem file here")
    p.add_argument("--check-covering", action="store_true")
    p.add_argument("--check-factorization", action="store_true")
    p.add_argument("--ring", help="ring for --check-factorization, overriding the left file's")
    p.set_defaults(func=cmd_sew)

    p = sub.add_parser("check-ring", parents=[common], help="validate the fusion ring axioms")
    p.add_argument("ring", help="bundled ring name or ring file")
    p.add_argument("--table", action="store_true", help="also print the fusion table")
    p.set_defaults(func=cmd_check_ring)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(getattr(args, "format", "text"), getattr(args, "quiet", False))
    args.no_validate = getattr(args, "no_validate", False)
    try:
        return args.func(args, out)
    except NotAdmissible as exc:
        witness = format_cycles(exc.witness)
        return out.error(EXIT_INADMISSIBLE, "not_admissible",
                         f"monodromy is not admissible: ordered product is {witness}", witness=witness)
    except IncompleteAssignment as exc:
        return out.error(EXIT_INCOMPLETE, "incomplete_assignment", str(exc))
    except CombinatorialBlowup as exc:
        return out.error(EXIT_BLOWUP, "blowup", str(exc), rows=exc.count, cap=exc.cap)
    except (SewPairNotInverse, NoRemainingPoints) as exc:
        return out.error(EXIT_SEW_PAIR, "bad_sew_pair", str(exc))
    except InternalConsistencyError as exc:
        return out.error(EXIT_INTERNAL, "internal_consistency", str(exc))
    except (SchemaError, ParseError, InvalidRing, BadLabel, BadMarkedChoice, GroundMismatch, ValueError) as exc:
        return out.error(EXIT_SCHEMA, "schema", str(exc))


if __name__ == "__main__":
    sys.exit(main())
