"""Command-line interface.

Every subcommand parses to a plain command dict, runs through
run_pipeline, and prints either the verdict or, with --json, the whole
report.  Complexes and data files accept builtin:<name> for packaged
inputs.  Errors leave as one JSON object on stderr and the library exit
codes: 2 validation, 3 size guard, 4 degenerate geometry, 5 certificate
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ObstructaError
from .reports import RunConfig, run_pipeline


def _int_list(text):
    return [int(x) for x in text.split(",") if x != ""]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--size-guard", type=int, default=None,
                        help="abort before building anything larger than this")
    common.add_argument("--json", action="store_true", dest="json_output",
                        help="print the full report as JSON")
    common.add_argument("-o", "--out", default=None,
                        help="append the report to this JSON Lines file")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for sampling helpers; certificates ignore it")

    p = argparse.ArgumentParser(
        prog="obstructa",
        description="exact cochain obstructions on deleted products")
    sub = p.add_subparsers(dest="op", required=True)

    s = sub.add_parser("complex", parents=[common],
                       help="validate a complex and report its census")
    s.add_argument("complex")

    s = sub.add_parser("dp", parents=[common], help="deleted product statistics")
    s.add_argument("what", choices=["stats"])
    s.add_argument("complex")
    s.add_argument("-n", type=int, default=2, help="number of factors")

    s = sub.add_parser("linalg", help="exact integer linear algebra")
    ls = s.add_subparsers(dest="linalg_op", required=True)
    t = ls.add_parser("snf", parents=[common],
                      help="Smith normal form of a matrix JSON file")
    t.add_argument("matrix")
    t = ls.add_parser("solve", parents=[common],
                      help="solve A x = b from {matrix, rhs} JSON")
    t.add_argument("system")

    s = sub.add_parser("geom", parents=[common],
                       help="validate an almost-embedding")
    s.add_argument("complex")
    s.add_argument("--map", required=True, help="PL map JSON")

    s = sub.add_parser("vk", parents=[common],
                       help="double-point obstruction class")
    s.add_argument("complex")
    s.add_argument("-d", type=int, default=None, help="ambient dimension")
    s.add_argument("--map", default=None, help="PL map JSON; default moment curve")
    s.add_argument("--params", type=_int_list, default=None,
                   help="moment curve parameters, comma separated")

    s = sub.add_parser("o3", parents=[common], help="third obstruction")
    s.add_argument("route", choices=["kunneth", "cochain"])
    s.add_argument("complex", nargs="?", default=None)
    s.add_argument("--complex", dest="complex_flag", default=None)
    s.add_argument("--linking", default=None, help="linking form JSON")
    s.add_argument("--map", default=None, help="PL map JSON")
    s.add_argument("--direction", default=None,
                   help="counting direction, four comma-separated numbers")
    s.add_argument("--cycles", default=None,
                   help="tags: sphere,sphere,loop,loop[,surface]")

    s = sub.add_parser("w3", parents=[common],
                       help="disk-meet cochain of a pairing datum")
    s.add_argument("complex")
    s.add_argument("datum")
    s.add_argument("--certify", action="store_true",
                   help="also certify the equivariant class")

    s = sub.add_parser("wn", parents=[common],
                       help="tree-valued cochain of tower data")
    s.add_argument("complex")
    s.add_argument("towers")
    s.add_argument("-n", type=int, required=True, help="number of factors")

    s = sub.add_parser("trees", help="tree groups")
    ts = s.add_subparsers(dest="trees_op", required=True)
    t = ts.add_parser("rank", parents=[common],
                      help="rank and torsion of the order-m group")
    t.add_argument("-m", type=int, required=True)

    s = sub.add_parser("massey", parents=[common],
                       help="triple-product cochains on four factors")
    s.add_argument("complex")
    s.add_argument("--cochain", required=True, help="pair cochain JSON")

    s = sub.add_parser("verify", parents=[common],
                       help="re-verify every certificate in a report")
    s.add_argument("report")

    return p


def _command_from(args):
    op = args.op
    if op == "complex":
        return {"op": "complex", "complex": args.complex}
    if op == "dp":
        return {"op": "dp", "complex": args.complex, "n": args.n}
    if op == "linalg":
        if args.linalg_op == "snf":
            return {"op": "snf", "matrix": args.matrix}
        return {"op": "solve", "system": args.system}
    if op == "geom":
        return {"op": "geom", "complex": args.complex, "map": args.map}
    if op == "vk":
        cmd = {"op": "vk", "complex": args.complex}
        if args.map:
            cmd["map"] = args.map
        return cmd
    if op == "o3":
        spec = args.complex_flag or args.complex
        if spec is None:
            raise ObstructaError("a complex is required, positional or --complex")
        cmd = {"op": "o3", "route": args.route, "complex": spec}
        if args.linking:
            cmd["linking"] = args.linking
        if args.map:
            cmd["map"] = args.map
        if args.direction:
            cmd["direction"] = args.direction.split(",")
        if args.cycles:
            tags = args.cycles.split(",")
            if len(tags) == 4:
                tags.append("T")
            if len(tags) != 5:
                raise ObstructaError(
                    "--cycles takes sphere,sphere,loop,loop and optionally "
                    "a surface tag")
            cmd["tags"] = tags
        if args.route == "kunneth" and "linking" not in cmd:
            raise ObstructaError("the kunneth route needs --linking")
        if args.route == "cochain" and "map" not in cmd:
            raise ObstructaError("the cochain route needs --map")
        return cmd
    if op == "w3":
        return {"op": "w3", "complex": args.complex, "datum": args.datum,
                "certify": bool(args.certify)}
    if op == "wn":
        return {"op": "wn", "complex": args.complex, "towers": args.towers,
                "n": args.n}
    if op == "trees":
        return {"op": "trees", "m": args.m}
    if op == "massey":
        return {"op": "massey", "complex": args.complex, "cochain": args.cochain}
    if op == "verify":
        return {"op": "verify", "report": args.report}
    raise ObstructaError(f"unknown operation {op!r}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        d=getattr(args, "d", None),
        n=getattr(args, "n", None),
        size_guard=args.size_guard,
        params=tuple(args.params) if getattr(args, "params", None) else None,
        seed=args.seed,
        out=args.out,
        json_output=args.json_output,
    )
    try:
        command = _command_from(args)
        rep = run_pipeline(command, cfg)
    except ObstructaError as e:
        err = {"error": {"code": type(e).__name__, "exit": e.exit_code,
                         "message": str(e)}}
        stage = getattr(e, "stage", None)
        if stage:
            err["error"]["stage"] = stage
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return e.exit_code
    except (OSError, json.JSONDecodeError) as e:
        err = {"error": {"code": type(e).__name__, "exit": 2, "message": str(e)}}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    if cfg.json_output:
        print(rep.to_json())
    else:
        print(rep.verdict)
        for c in rep.certificates:
            print(f"certificate: {c['kind']} (degree {c['degree']}, "
                  f"character {c['character']})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
