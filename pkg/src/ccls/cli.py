"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 model error, 4 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import builtins
from .errors import CclsError, DSLParseError
from .graph import build_graph
from .levels import function_from_coefficients
from .network import parse_network, stoichiometric_matrix
from .report import Analysis, bounds_section, level_checks, render_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_totals(text):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"--totals expects integers, got {text!r}") from None
    return parts[0] if len(parts) == 1 else tuple(parts)


def _parse_params(items):
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise UsageError(f"bad value for parameter {name!r}: {value!r}") from None
    return out


def _load(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _network(path, params):
    text = _load(path)
    try:
        net = parse_network(text)
    except DSLParseError as exc:
        exc.args = (f"{path}: {exc}",)
        raise
    return net.with_parameters(**params) if params else net


def _select_function(analysis, spec):
    if spec is None:
        if not analysis.functions:
            raise UsageError("network has no coclique level function")
        return analysis.functions[0]
    if "," in spec:
        try:
            coeffs = [int(c) for c in spec.split(",") if c.strip()]
        except ValueError:
            raise UsageError(f"--level-fn coefficients must be integers: {spec!r}") from None
        return function_from_coefficients(analysis.matrix, analysis.projection, coeffs)
    try:
        i = int(spec)
    except ValueError:
        raise UsageError(f"--level-fn expects an index or comma-separated coefficients") from None
    if not 1 <= i <= len(analysis.functions):
        raise UsageError(f"--level-fn index must be in 1..{len(analysis.functions)}")
    return analysis.functions[i - 1]


def _emit(report, as_json, out):
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_text(report))


def _analyze_report(net, totals, drop, prefilter):
    analysis = Analysis(net, drop, prefilter)
    report = analysis.summary()
    if totals is not None:
        chain = analysis.chain(totals)
        report["totals"] = list(chain.totals)
        report["states"] = len(chain)
        report["level_checks"] = level_checks(analysis, chain)
    return report


def cmd_analyze(args, out):
    net = _network(args.file, _parse_params(args.param))
    totals = _parse_totals(args.totals) if args.totals else None
    report = _analyze_report(net, totals, args.drop, not args.no_prefilter)
    _emit(report, args.json, out)


def cmd_bounds(args, out):
    if args.simulate and args.seed is None:
        raise UsageError("--simulate requires an explicit --seed")
    if args.simulate is not None and args.simulate < 2:
        raise UsageError("--simulate needs at least 2 trajectories")
    net = _network(args.file, _parse_params(args.param))
    analysis = Analysis(net, args.drop)
    fn = _select_function(analysis, args.level_fn)
    chain = analysis.chain(_parse_totals(args.totals))
    directions = ("up", "down") if args.direction == "both" else (args.direction,)
    report = analysis.summary()
    report["bounds"] = bounds_section(analysis, chain, fn, directions, args.exact,
                                      args.simulate, args.seed)
    _emit(report, args.json, out)


def cmd_example(args, out):
    try:
        source = builtins.example_source(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(source)
    if not args.analyze:
        if not args.output:
            out.write(source)
        return
    net = parse_network(source)
    totals = None
    if args.ntot is not None:
        p = _component_count(net)
        totals = args.ntot if p == 1 else (args.ntot,) * p
        tp = builtins.TOTAL_PARAMETER.get(args.name)
        if tp:
            net = net.with_parameters(**{tp: args.ntot})
    report = _analyze_report(net, totals, None, True)
    if args.json:
        report["source"] = source
    elif not args.output:
        out.write(source + "\n")
    _emit(report, args.json, out)


def _component_count(net):
    return build_graph(stoichiometric_matrix(net)).p


def build_parser():
    p = _Parser(prog="ccls", description="Coclique level structures and MFPT bounds "
                "for reaction networks with unit-interchange reactions.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("file", help="network source file ('-' for stdin)")
        sp.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="override a parameter (repeatable)")
        sp.add_argument("--drop", action="append", metavar="SPECIES",
                        help="species to project out of its component (repeatable)")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    a = sub.add_parser("analyze", help="components, bipartiteness and level functions")
    common(a)
    a.add_argument("--totals", help="conserved total, or one per component (comma-separated)")
    a.add_argument("--no-prefilter", action="store_true",
                   help="solve every sign assignment instead of pruning by cycles")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="MFPT bounds between the extreme levels")
    common(b)
    b.add_argument("--totals", required=True,
                   help="conserved total, or one per component (comma-separated)")
    b.add_argument("--level-fn", help="1-based index into the enumerated functions, or "
                   "comma-separated coefficients (trailing comma for one coordinate)")
    b.add_argument("--direction", choices=("up", "down", "both"), default="both")
    b.add_argument("--exact", action="store_true", help="add the exact MFPT")
    b.add_argument("--simulate", type=int, metavar="N", help="add a simulation estimate")
    b.add_argument("--seed", type=int, help="seed for --simulate (required)")
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("example", help="print a built-in network")
    e.add_argument("name", help=f"one of: {', '.join(builtins.SOURCES)}")
    e.add_argument("--output", "-o", help="write the source to this file")
    e.add_argument("--analyze", action="store_true", help="also run analyze")
    e.add_argument("--ntot", type=int, help="conserved total for --analyze (every component)")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_example)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        print(f"ccls: usage error: {exc}", file=sys.stderr)
        return 1
    except CclsError as exc:
        print(f"ccls: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
