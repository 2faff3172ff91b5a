"""``endscope`` command line.

Exit codes: 0 success, 1 validation failure, 2 parse/usage error,
3 theorem-contradiction red flag.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .catalog import families
from .compactness import check_lipschitz, heine_borel, rho as compute_rho
from .components import pseudo_components, theorem1_check, to_dot
from .ends import count_ends, ends_of_space, is_j_space
from .errors import CatalogError, EndscopeError, InvalidMetricError, LipschitzError, ScheduleError
from .inputs import InputError, canonical_input, check_schema, load_space, parse_text
from .isometry import (group_for, limit_set_witness, preserves_distances, properness_report,
                       symbolic_group, transporter)
from .metric import to_rational, validate_metric
from .serialize import digest, dumps, point_json
from .spaces import MetricSpace, NetworkSpace

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_RED_FLAG = 0, 1, 2, 3
VALIDATE_LIMIT = 1500


class UsageError(Exception):
    pass


def _parse_params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--params expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        v = v.strip()
        try:
            out[k.strip()] = int(v)
        except ValueError:
            out[k.strip()] = v
    return out


def _parse_levels(text):
    if text is None:
        return None
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            levels = list(range(int(a), int(b) + 1))
        else:
            levels = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--levels expects a..b or a comma list, got {text!r}") from None
    if not levels:
        raise UsageError("--levels is empty")
    return levels


def _input_object(args) -> dict:
    if args.catalog:
        obj = {"kind": "catalog", "family": args.catalog, "params": _parse_params(args.params),
               "level": args.level}
        if args.cap is not None:
            obj["cap"] = args.cap
        return obj
    if not args.file:
        raise UsageError("give an input FILE or --catalog NAME")
    try:
        text = Path(args.file).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    obj = parse_text(text)
    if args.cap is not None:
        if obj["kind"] == "metric":
            raise UsageError("--cap applies to network and catalog inputs only")
        obj["cap"] = args.cap
    return obj


def _envelope(command, obj):
    return {"tool": "endscope", "version": __version__, "command": command,
            "input_digest": digest(canonical_input(obj)), "input": canonical_input(obj)}


def _require_catalog(obj):
    if obj["kind"] != "catalog":
        raise UsageError("this command needs a catalog input (--catalog NAME or a catalog file)")


def _rho_section(space):
    r = compute_rho(space)
    bad = check_lipschitz(r, space)
    return r, {"values": r, "constant": r.is_constant(), "heine_borel": heine_borel(space),
               "lipschitz": {"pass": bad is None, "witness": None if bad is None else [point_json(p) for p in bad]}}


def cmd_validate(args, obj):
    report = _envelope("validate", obj)
    try:
        space = load_space(obj)
    except InvalidMetricError as e:
        report["validation"] = e.report
        report["valid"] = False
        return report, EXIT_INVALID
    except LipschitzError as e:
        report["valid"] = False
        report["rho"] = {"lipschitz": {"pass": False, "witness": [point_json(p) for p in e.witness]}}
        report["error"] = str(e)
        return report, EXIT_INVALID
    except (EndscopeError, ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        report["valid"] = False
        report["error"] = str(e)
        return report, EXIT_INVALID
    if isinstance(space, NetworkSpace):
        if len(space) <= VALIDATE_LIMIT:
            v = validate_metric(space.metric())
            report["validation"] = v
            report["valid"] = v.valid
        else:
            report["validation"] = {"skipped": f"more than {VALIDATE_LIMIT} vertices"}
            report["valid"] = True
        report["space"] = {"vertices": len(space), "pieces": len(space.pieces), "cap": space.cap,
                           "level": space.level}
    else:
        report["validation"] = validate_metric(space.matrix)
        report["valid"] = True
        report["rho"] = _rho_section(space)[1]
    return report, EXIT_OK if report["valid"] else EXIT_INVALID


def cmd_rho(args, obj):
    space = load_space(obj)
    report = _envelope("rho", obj)
    report["rho"] = _rho_section(space)[1]
    return report, EXIT_OK


def cmd_components(args, obj):
    space = load_space(obj)
    report = _envelope("components", obj)
    r, section = _rho_section(space)
    part = pseudo_components(space, r)
    report["rho"] = section
    report["components"] = part
    report["digraph_arcs"] = [[point_json(u), point_json(v)] for u, v in part.digraph.arcs()]
    if args.dot:
        Path(args.dot).write_text(to_dot(part))
        report["dot"] = str(args.dot)
    return report, EXIT_OK


def _schedule(args):
    levels = _parse_levels(args.levels)
    if args.radii is None:
        return None, levels
    radii = [to_rational(x) for x in args.radii.split(",")]
    if levels is None or len(levels) != len(radii):
        raise UsageError("--radii needs --levels with the same number of entries")
    return list(zip(levels, radii)), None


def cmd_ends(args, obj):
    _require_catalog(obj)
    schedule, levels = _schedule(args)
    report = _envelope("ends", obj)
    report["ends"] = count_ends(obj["family"], obj.get("params"), schedule, window=args.window,
                                levels=levels, cap=obj.get("cap"))
    return report, EXIT_OK


def cmd_jspace(args, obj):
    _require_catalog(obj)
    schedule, levels = _schedule(args)
    report = _envelope("jspace", obj)
    report["jspace"] = is_j_space(obj["family"], obj.get("params"), schedule, window=args.window, levels=levels)
    return report, EXIT_OK


def cmd_theorem1(args, obj):
    _require_catalog(obj)
    space = load_space(obj)
    report = _envelope("theorem1", obj)
    ends = ends_of_space(space, levels=_parse_levels(args.levels), window=args.window)
    report["ends"] = ends
    structure = theorem1_check(space, ends=ends)
    report["structure"] = structure
    if not structure.applicable:
        report["verdict"] = "inapplicable"
        return report, EXIT_OK
    part = pseudo_components(space)
    report["components"] = part
    group = symbolic_group(space)
    report["group"] = group
    proper = properness_report(group, space, part, ends=ends)
    report["properness"] = proper
    replays = []
    for v in proper.verdicts:
        if v["witness"] is not None:
            replays.append({"class": v["class"], "replayed": v["witness"].replay(K=8)})
    report["witness_replay"] = replays
    red = structure.red_flags + proper.red_flags + [f"witness for class {r['class']} failed to replay"
                                                    for r in replays if not r["replayed"]]
    report["red_flags"] = red
    report["verdict"] = "red-flag" if red else "pass"
    return report, EXIT_RED_FLAG if red else EXIT_OK


def cmd_iso(args, obj):
    space = load_space(obj)
    report = _envelope("iso", obj)
    group = group_for(space)
    if isinstance(space, MetricSpace) or space.family == "custom":
        r = compute_rho(space)
        part = pseudo_components(space, r)
        rho_ok = all(r[g(x)] == r[x] for g in group for x in space.points)
        equi_ok = all(frozenset(g(y) for y in part.class_of(x)) == part.class_of(g(x))
                      for g in group for x in space.points)
        report["group"] = {"order": len(group), "elements": group}
        report["checks"] = {"rho_invariant": rho_ok, "class_equivariant": equi_ok}
    else:
        report["group"] = group
        report["generators"] = [{"element": g, "preserves_distances": preserves_distances(g, space)}
                                for g in group.generators()]
        report["stabilizers"] = [{"point": point_json(p.anchor),
                                  "infinite": transporter(group, p.anchor, p.anchor).infinite,
                                  "limit_witness": limit_set_witness(group, space, p.anchor)}
                                 for p in space.pieces]
    return report, EXIT_OK


def cmd_catalog(args, obj=None):
    return {"tool": "endscope", "version": __version__, "command": "catalog list", "families": families()}, EXIT_OK


COMMANDS = {"validate": cmd_validate, "rho": cmd_rho, "components": cmd_components, "ends": cmd_ends,
            "jspace": cmd_jspace, "theorem1": cmd_theorem1, "iso": cmd_iso}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="endscope", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"endscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", nargs="?", help="JSON input file")
        p.add_argument("--catalog", metavar="NAME", help="use a catalog family instead of a file")
        p.add_argument("--params", nargs="*", metavar="K=V", default=[])
        p.add_argument("--level", type=int, default=1)
        p.add_argument("--cap", metavar="NUM/DEN")
        p.add_argument("--levels", metavar="A..B", help="level schedule for end counting")
        p.add_argument("--radii", metavar="R1,R2,...", help="explicit radii matching --levels")
        p.add_argument("--window", type=int, default=4, help="stabilization window")
        p.add_argument("--dot", metavar="PATH", help="write the proximity digraph as DOT")
        p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    cat = sub.add_parser("catalog")
    cat.add_argument("action", choices=["list"])
    cat.add_argument("--json", metavar="PATH")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        if args.command == "catalog":
            report, code = cmd_catalog(args)
        else:
            obj = _input_object(args)
            if args.catalog:
                check_schema(obj)
            report, code = COMMANDS[args.command](args, obj)
    except (InputError, UsageError, ScheduleError) as e:
        print(f"endscope: error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (EndscopeError, ValueError, KeyError) as e:
        if isinstance(e, CatalogError):
            print(f"endscope: error: {e}", file=sys.stderr)
            return EXIT_PARSE
        print(f"endscope: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    text = dumps(report)
    if getattr(args, "json", None):
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
