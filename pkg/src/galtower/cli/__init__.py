"""Command-line interface: ``galtower {analyze,group,diffops,correspond,verify} TOWER``.

Exit status is 0 when every executed check passes, 1 when some check fails
and 2 on input or computation errors (reported as an ``error`` block).
"""

import argparse
import json
import logging
import sys

from galtower import __version__
from galtower.cli.cache import Cache, build_tower_cached
from galtower.cli.towerfile import parse_tower
from galtower.errors import GaltowerError, ParseError

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _common():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--cache", help="cache directory for multiplication tables and operator bases")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    return common


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="galtower", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"galtower {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("analyze", "classification, largest subfields and degrees"),
        ("group", "automorphism group, Cayley table and completeness flag"),
        ("diffops", "differential operators: dimensions and filtration layers"),
        ("correspond", "correspondence records for the given subfields"),
        ("verify", "full correspondence report"),
    ]:
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("tower", help="tower file")
        if name in ("correspond", "diffops"):
            p.add_argument(
                "--subfield",
                action="append",
                default=[],
                help="subfield name from the tower file, or comma-separated generator expressions",
            )
        if name == "verify":
            p.add_argument("--suite", choices=("auto", "normal", "pi", "galois", "full"), default="auto")
    return parser


def _resolve_subfields(T, tf, requested):
    from galtower.correspondence import subfield_from_exprs

    out = []
    for item in requested:
        exprs = tf.subfield_exprs(item)
        if exprs is None:
            exprs = tuple(e.strip() for e in item.split(",") if e.strip())
        out.append((item, subfield_from_exprs(T, exprs)))
    return out


def _file_subfields(T, tf):
    names = [name for name, _ in tf.subfields]
    if tf.designated:
        names.append(tf.designated[0])
    return _resolve_subfields(T, tf, names)


def cmd_analyze(T, tf, args, ctx):
    from galtower.correspondence import largest_subfields, subfield_payload

    C = ctx.classification
    largest = largest_subfields(T, ctx)
    out = {
        "degree": T.n,
        "unverified_irreducible": T.unverified_irreducible,
        "classification": C.as_dict(),
        "largest_subfields": {
            key: subfield_payload(largest[key]) for key in ("L_pi", "L_sep", "L_gal") if key in largest
        },
        "tensor_check": largest["tensor"],
        "checks": largest["checks"],
        "warnings": C.notes + largest["notes"],
    }
    return out


def cmd_group(T, tf, args, ctx):
    from galtower.correspondence import group_payload

    return {"group": group_payload(ctx.G)}


def cmd_diffops(T, tf, args, ctx):
    from galtower.operators import derivations

    out = {}
    targets = [("K", None)] + _resolve_subfields(T, tf, args.subfield)
    for name, M in targets:
        D = ctx.diffops(M)
        out[name] = {
            "dim_D": D.dim,
            "dim_D_plus": len(D.dplus),
            "dim_Der": len(derivations(T, M)),
            "layers": D.layer_dims,
        }
    return {"diffops": out}


def cmd_correspond(T, tf, args, ctx):
    from galtower.correspondence import verify_roundtrip

    subs = _resolve_subfields(T, tf, args.subfield) if args.subfield else _file_subfields(T, tf)
    return {"records": [verify_roundtrip(T, M, ctx, name).as_dict() for name, M in subs]}


def cmd_verify(T, tf, args, ctx):
    from galtower.correspondence import run_report

    return run_report(T, _file_subfields(T, tf), args.suite, ctx)


COMMANDS = {
    "analyze": cmd_analyze,
    "group": cmd_group,
    "diffops": cmd_diffops,
    "correspond": cmd_correspond,
    "verify": cmd_verify,
}


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if "passed" in obj and "computed" in obj and "name" in obj:
            mark = "PASS" if obj["passed"] else "FAIL"
            return [f"{pad}[{mark}] {obj['name']}: {obj['computed']} (expected {obj['expected']})"]
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [f"{pad}{obj}"]
        for v in obj:
            sub = _text(v, indent + 1)
            if sub:
                sub[0] = pad + "- " + sub[0].lstrip()
            lines.extend(sub)
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report, fmt):
    if fmt == "structured":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return "\n".join(_text(report)) + "\n"


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Run the CLI; returns (exit code, report dict)."""
    from galtower.correspondence import Analysis, count_failures

    args = build_parser().parse_args(argv)
    try:
        tf = parse_tower(args.tower)
        cache = Cache(args.cache) if args.cache else None
        T = build_tower_cached(tf.spec, cache)
        ctx = Analysis(T, diffops_loader=cache.diffops_loader if cache else None)
        body = COMMANDS[args.command](T, tf, args, ctx)
        report = {
            "command": args.command,
            "schema": 1,
            "tool_version": __version__,
            "tower_hash": tf.spec.content_hash(),
        }
        report.update(body)
        failed = count_failures(report)
        report["exit_code"] = EXIT_FAILED if failed else EXIT_OK
    except (GaltowerError, OSError, ValueError) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            error["line"] = exc.line
            error["column"] = exc.column
        report = {"command": args.command, "tool_version": __version__, "error": error, "exit_code": EXIT_ERROR}
    _emit(render(report, args.format), args.out)
    return report["exit_code"], report


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
