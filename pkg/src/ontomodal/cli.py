"""Command-line front end.

Reports are ``key: value`` lines on standard output. Exit status is 0 for
a positive verdict, 1 for a negative one, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .evalcore import Unsupported
from .formula import Not, free_variables, key, modal_depth, normalize, size
from .hilbert import CheckReport
from .kripke import EvalError, ModelFormatError, eval, format_model, parse_model
from .ontology import collapse_report
from .oracle import OracleBoundError, bruteforce_sat
from .parser import ParseError, parse, render
from .proofscript import ScriptError, format_script, parse_script
from .suite import run_all
from .systems import system_by_name
from .tableau import SYSTEMS, decide_sat
from .temporal import TRANSFORMATIONS, replay_transformed, transform_script, transform_system

OK, NEGATIVE, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read(source: str, stdin) -> str:
    if source == "-":
        return stdin.read()
    p = Path(source)
    if not p.is_file():
        raise InputError(f"no such file: {source}")
    return p.read_text("utf-8")


def _formula(text: str, stdin):
    if text == "-":
        text = stdin.read()
    try:
        return parse(text.strip())
    except ParseError as e:
        raise InputError(f"syntax: {e}") from None


def _emit(out, pairs):
    for k, v in pairs:
        out.write(f"{k}: {v}\n")


def _model_lines(model) -> list:
    return [tuple(line.split(": ", 1)) for line in format_model(model).splitlines()]


# ------------------------------------------------------------ subcommands


def cmd_parse(args, out, stdin) -> int:
    text = args.expr if args.expr is not None else _read(args.source, stdin)
    bad = False
    for no, line in enumerate(text.splitlines() or [""], 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            f = parse(line)
        except ParseError as e:
            out.write(f"error: line {no}: {e}\n")
            bad = True
            continue
        pairs = [("formula", render(f))]
        if args.format == "full":
            free = sorted(f"{n}" for _, n in free_variables(f))
            pairs += [
                ("normalized", key(f)),
                ("size", size(f)),
                ("modal-depth", modal_depth(f)),
                ("free", " ".join(free) or "-"),
            ]
        _emit(out, pairs)
    return USAGE if bad else OK


def _decide(args, out, stdin, mode: str) -> int:
    f = _formula(args.formula, stdin)
    target = f if mode == "sat" else Not(f)
    try:
        r = decide_sat(target, args.system)
    except Unsupported as e:
        raise InputError(f"not a propositional modal formula: {e}") from None
    if mode == "sat":
        verdict = "SAT" if r.sat else "UNSAT"
    else:
        verdict = "Countermodel" if r.sat else "Valid"
    pairs = [("system", args.system), ("formula", render(f)), ("verdict", verdict)]
    if r.sat:
        pairs.append(("world", r.root))
        pairs += _model_lines(r.model)
    if args.format == "full":
        pairs += [("tableau-nodes", r.stats.nodes), ("tableau-worlds", r.stats.worlds)]
    status = OK if verdict in ("SAT", "Valid") else NEGATIVE
    if args.oracle:
        try:
            sat, _, _ = bruteforce_sat(target, args.system)
        except OracleBoundError as e:
            _emit(out, pairs + [("oracle", f"out-of-bounds ({e})")])
            return USAGE
        agree = sat == r.sat
        pairs.append(("oracle", "agree" if agree else "disagree"))
        if not agree:
            status = NEGATIVE
    _emit(out, pairs)
    return status


def cmd_valid(args, out, stdin) -> int:
    return _decide(args, out, stdin, "valid")


def cmd_sat(args, out, stdin) -> int:
    return _decide(args, out, stdin, "sat")


def cmd_eval(args, out, stdin) -> int:
    try:
        m = parse_model(_read(args.model, stdin))
    except ModelFormatError as e:
        raise InputError(f"model: {e}") from None
    if args.world not in m.worlds:
        raise InputError(f"unknown world {args.world!r}")
    f = _formula(args.formula, stdin)
    try:
        v = eval(m, args.world, f)
    except EvalError as e:
        raise InputError(f"cannot evaluate: {e}") from None
    _emit(out, [("world", args.world), ("formula", render(f)), ("verdict", "true" if v else "false")])
    return OK if v else NEGATIVE


def _report_pairs(r: CheckReport, full: bool) -> list:
    pairs = [("verdict", r.verdict)]
    if not r.accepted:
        pairs += [("failing-step", r.failing_step if r.failing_step is not None else "-"), ("reason", r.reason)]
        if r.message:
            pairs.append(("message", r.message))
    pairs.append(("premises-used", " ".join(r.premises_used) or "-"))
    if full:
        pairs.append(("goal-matched", str(r.goal_matched).lower()))
    return pairs


def _system(name: str):
    try:
        return system_by_name(name)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None


def _script(source, stdin):
    try:
        return parse_script(_read(source, stdin))
    except ScriptError as e:
        raise InputError(f"script: {e}") from None


def cmd_check_proof(args, out, stdin) -> int:
    s = _script(args.script, stdin)
    system = _system(args.system or s.system)
    r = s.check(system)
    _emit(out, [("system", system.name), ("goal", render(s.goal)), ("steps", len(s.proof))])
    _emit(out, _report_pairs(r, args.format == "full"))
    return OK if r.accepted else NEGATIVE


def cmd_transform(args, out, stdin) -> int:
    t = TRANSFORMATIONS[args.op]
    if args.formula is not None:
        f = _formula(args.formula, stdin)
        g = t.apply(f)
        pairs = [("op", t.name), ("formula", render(f)), ("result", render(g))]
        if args.format == "full":
            pairs.append(("normalized", key(normalize(g))))
        _emit(out, pairs)
        return OK
    if args.system is not None:
        out.write(transform_system(_system(args.system), t).describe())
        return OK
    if args.proof is None or args.into is None:
        raise InputError("transform needs --formula, --system, or --proof with --into")
    s = _script(args.proof, stdin)
    target = _system(args.into)
    moved = transform_script(s, t, target)
    r = replay_transformed(s, t, target)
    header = "\n".join(f"{k}: {v}" for k, v in [("replay", t.name)] + _report_pairs(r, args.format == "full"))
    out.write(format_script(moved, header))
    return OK if r.accepted else NEGATIVE


def cmd_ontology(args, out, stdin) -> int:
    if args.action == "collapse":
        out.write(collapse_report())
        return OK
    rows = run_all()
    out.write("name system verdict premises-used goal\n")
    for row in rows:
        r = row.report
        used = ",".join(r.premises_used) or "-"
        line = f"{row.entry.name} {row.entry.system} {r.verdict} {used} {row.entry.goal}"
        if args.format == "full" and not r.accepted:
            line += f" [step {r.failing_step}: {r.reason}]"
        out.write(line + "\n")
    ok = all(row.ok for row in rows)
    _emit(out, [("scripts", len(rows)), ("accepted", sum(r.report.accepted for r in rows)), ("status", "ok" if ok else "failed")])
    return OK if ok else NEGATIVE


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("compact", "full"), default="compact")
    ap = argparse.ArgumentParser(prog="ontomodal", description="Modal logic toolkit and proof checker.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and print formulas (one per line)")
    p.add_argument("source", nargs="?", default="-", help="file, or - for standard input")
    p.add_argument("-e", "--expr", help="formula text instead of a file")
    p.set_defaults(run=cmd_parse)

    for name, fn, what in (("valid", cmd_valid, "validity"), ("sat", cmd_sat, "satisfiability")):
        p = sub.add_parser(name, parents=[common], help=f"decide {what} with the tableau")
        p.add_argument("--system", choices=SYSTEMS, default="K")
        p.add_argument("--oracle", action="store_true", help="cross-check with exhaustive enumeration")
        p.add_argument("formula", help="formula, or - for standard input")
        p.set_defaults(run=fn)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula at a world of a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("formula")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("check-proof", parents=[common], help="check a proof script")
    p.add_argument("--system", help="system name (default: the script's system line)")
    p.add_argument("script")
    p.set_defaults(run=cmd_check_proof)

    p = sub.add_parser("transform", parents=[common], help="apply a transformation")
    p.add_argument("--op", required=True, choices=sorted(TRANSFORMATIONS))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--system")
    g.add_argument("--proof")
    p.add_argument("--into", help="target system for --proof")
    p.set_defaults(run=cmd_transform)

    p = sub.add_parser("ontology", parents=[common], help="shipped derivations")
    p.add_argument("action", choices=("run-all", "collapse"))
    p.set_defaults(run=cmd_ontology)
    return ap


def execute(argv, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.run(args, out, stdin)
    except InputError as e:
        out.write(f"error: {e}\n")
        return USAGE


def main(argv=None) -> int:
    sys.exit(execute(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
