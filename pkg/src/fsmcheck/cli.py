"""Command-line front end.

Commands:
    validate       check component files, report issues and input-enabledness
    compose        build the synchronous parallel composition of loaded components
    traces         enumerate traces of a component up to a depth bound
    check          conformance of an implementation against a specification
    project        project a composed system onto one of its components
    compositional  certify a composition from local checks only

Exit codes: 0 pass/ok, 1 fail, 2 usage/structural error, 3 inconclusive
or not-applicable.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify as certify_mod
from .certify import certify_by_parts, certify_in_context
from .compose import build_system_full
from .conform import Verdict, check_cioco_bounded, check_cioco_exact
from .errors import (
    ComposabilityError,
    FsmCheckError,
    ParseError,
    SignatureMismatchError,
    TraceLimitError,
    UnknownTargetError,
)
from .formats import (
    component_to_dict,
    load_component,
    parse_system_expr,
    save_component,
    to_dot,
    trace_to_list,
)
from .machine import (
    DEFAULT_TRACE_GUARD,
    format_trace,
    is_input_enabled,
    sorted_traces,
    traces_up_to,
    validate_component,
)
from .project import component_in_context, component_in_context_tree

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    p.add_argument(
        "--guard",
        type=int,
        default=DEFAULT_TRACE_GUARD,
        help="cardinality guard for bounded enumerations",
    )
    p.add_argument(
        "--seed", type=int, default=None, help="seed for randomized workflows (reserved)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsmcheck",
        description="composition and conformance checking for input/output state machines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate component files")
    p.add_argument("paths", nargs="+", metavar="FILE")
    _add_common(p)

    p = sub.add_parser("compose", help="compose components per a system expression")
    p.add_argument("expr", help="system expression, e.g. '(par M D)'")
    p.add_argument("paths", nargs="+", metavar="FILE", help="component files binding names")
    p.add_argument("-o", "--out", required=True, help="output file (.json for JSON)")
    p.add_argument("--relax", action="store_true", help="compose even if the pair cannot synchronize")
    p.add_argument("--dot", help="also write a Graphviz rendering here")
    _add_common(p)

    p = sub.add_parser("traces", help="enumerate traces up to a depth bound")
    p.add_argument("path", metavar="FILE")
    p.add_argument("-k", "--depth", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("check", help="conformance of an implementation against a specification")
    p.add_argument("iut", metavar="IUT_FILE")
    p.add_argument("spec", metavar="SPEC_FILE")
    p.add_argument("--method", choices=("exact", "bounded"), default="exact")
    p.add_argument("-k", "--depth", type=int, default=None, help="bound for --method bounded")
    p.add_argument(
        "--unspecified",
        choices=("allow", "forbid"),
        default="allow",
        help="whether inputs the specification leaves unconstrained permit any output",
    )
    _add_common(p)

    p = sub.add_parser("project", help="project a composed system onto one component")
    p.add_argument("expr", help="system expression, e.g. '(par M D)'")
    p.add_argument("paths", nargs="+", metavar="FILE")
    p.add_argument("--target", required=True, help="leaf component name")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--oracle-depth", type=int, default=None,
                   help="also build the trace-tree construction and compare up to this depth")
    p.add_argument("--relax", action="store_true")
    p.add_argument("--dot", help="also write a Graphviz rendering here")
    _add_common(p)

    p = sub.add_parser("compositional", help="certify a composition from local checks")
    p.add_argument("--theorem", choices=("1", "2"), required=True,
                   help="1: by parts (needs input-enabled part specs); 2: against projections")
    p.add_argument("iut1", metavar="IUT1_FILE")
    p.add_argument("spec1", metavar="SPEC1_FILE")
    p.add_argument("iut2", metavar="IUT2_FILE")
    p.add_argument("spec2", metavar="SPEC2_FILE")
    p.add_argument("--relax", action="store_true")
    _add_common(p)

    return parser


def _load_named(paths) -> dict:
    components = {}
    for path in paths:
        c = load_component(path)
        if c.name in components:
            raise ParseError(f"component name '{c.name}' already bound", None, path)
        components[c.name] = c
    return components


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def cmd_validate(args) -> int:
    all_ok = True
    results = []
    for path in args.paths:
        c = load_component(path)
        report = validate_component(c)
        enabled = is_input_enabled(c)
        results.append(
            {
                "path": str(path),
                "component": c.name,
                "ok": report.ok,
                "input_enabled": enabled,
                "issues": [{"severity": i.severity, "message": i.message} for i in report.issues],
            }
        )
        all_ok = all_ok and report.ok
    if args.json:
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            status = "ok" if r["ok"] else "INVALID"
            enabled = "input-enabled" if r["input_enabled"] else "not input-enabled"
            print(f"{r['path']}: component '{r['component']}' {status}, {enabled}")
            for issue in r["issues"]:
                print(f"  {issue['severity']}: {issue['message']}")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_compose(args) -> int:
    components = _load_named(args.paths)
    expr = parse_system_expr(args.expr, components)
    build = build_system_full(expr, relax=args.relax)
    save_component(build.component, args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(build.component))
    payload = {
        "component": component_to_dict(build.component),
        "reports": [{"node": path, **rep.to_dict()} for path, rep in build.reports],
    }
    relaxed = [path for path, rep in build.reports if not rep.synchronizable]
    human = [
        f"wrote '{build.component.name}' to {args.out} "
        f"({len(build.component.states)} states, {len(build.component.transitions)} transitions)"
    ]
    for path, rep in build.reports:
        human.append(
            f"node {path}: synchronizable={rep.synchronizable} "
            f"alphabets_disjoint={rep.alphabets_disjoint}"
        )
    if relaxed:
        human.append(f"warning: composed with relax at: {relaxed}")
    _emit(args, payload, "\n".join(human))
    return EXIT_OK


def cmd_traces(args) -> int:
    c = load_component(args.path)
    result = sorted_traces(traces_up_to(c, args.depth, guard=args.guard))
    if args.json:
        print(json.dumps([trace_to_list(tr) for tr in result], indent=2))
    else:
        for tr in result:
            print(format_trace(tr) if tr else "<empty>")
    return EXIT_OK


def _verdict_exit(v: Verdict) -> int:
    if v.result == "pass":
        return EXIT_OK
    if v.result == "fail":
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _verdict_human(v: Verdict) -> str:
    lines = [f"{v.result} ({v.method}{'' if v.depth is None else f', depth {v.depth}'})"]
    for w in v.warnings:
        lines.append(f"warning: {w}")
    if v.counterexample is not None:
        ce = v.counterexample
        lines.append(f"witness: {format_trace(ce.witness) if ce.witness else '<empty>'}")
        lines.append(f"input: {ce.input}")
        lines.append(f"offending output: {ce.offending_output}")
        lines.append(f"implementation outputs: {sorted(ce.iut_outputs)}")
        lines.append(f"specification outputs: {sorted(ce.spec_outputs)}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    iut = load_component(args.iut)
    spec = load_component(args.spec)
    if args.method == "bounded":
        if args.depth is None:
            raise ParseError("--method bounded requires --depth")
        verdict = check_cioco_bounded(
            iut, spec, args.depth, unspecified=args.unspecified, guard=args.guard
        )
    else:
        verdict = check_cioco_exact(iut, spec, unspecified=args.unspecified)
    _emit(args, verdict.to_dict(), _verdict_human(verdict))
    return _verdict_exit(verdict)


def cmd_project(args) -> int:
    components = _load_named(args.paths)
    expr = parse_system_expr(args.expr, components)
    build = build_system_full(expr, relax=args.relax)
    ctx = component_in_context(build, args.target)
    save_component(ctx.component, args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(ctx.component))
    payload = {
        "component": component_to_dict(ctx.component),
        "provenance": ctx.provenance,
    }
    human = [f"wrote projection onto '{args.target}' to {args.out}"]

    exit_code = EXIT_OK
    if args.oracle_depth is not None:
        tree = component_in_context_tree(build, args.target, args.oracle_depth, guard=args.guard)
        k = args.oracle_depth
        finite_traces = traces_up_to(ctx.component, k, guard=args.guard)
        tree_traces = traces_up_to(tree.component, k, guard=args.guard)
        agree = finite_traces == tree_traces
        payload["oracle"] = {"depth": k, "agree": agree}
        human.append(f"oracle comparison at depth {k}: {'agree' if agree else 'MISMATCH'}")
        if not agree:
            exit_code = EXIT_FAIL
    _emit(args, payload, "\n".join(human))
    return exit_code


def cmd_compositional(args) -> int:
    iut1 = load_component(args.iut1)
    spec1 = load_component(args.spec1)
    iut2 = load_component(args.iut2)
    spec2 = load_component(args.spec2)
    if args.theorem == "1":
        report = certify_by_parts(iut1, spec1, iut2, spec2)
    else:
        report = certify_in_context(iut1, spec1, iut2, spec2, relax=args.relax)

    human = [f"strategy: {report.strategy}", f"conclusion: {report.global_conclusion}"]
    for a in report.assumptions:
        state = "holds" if a.holds else "FAILS"
        human.append(f"assumption {a.name}: {state}" + (f" ({a.detail})" if a.detail else ""))
    for name, verdict in sorted(report.local_verdicts.items()):
        human.append(f"local check '{name}': {verdict.result}")
        if verdict.counterexample is not None:
            ce = verdict.counterexample
            human.append(
                f"  witness {format_trace(ce.witness) if ce.witness else '<empty>'}"
                f" + {ce.input}|{ce.offending_output}"
            )
    for note in report.notes:
        human.append(f"note: {note}")
    _emit(args, report.to_dict(), "\n".join(human))

    if report.global_conclusion == certify_mod.SOUND_PASS:
        return EXIT_OK
    if report.global_conclusion == certify_mod.SOUND_FAIL:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


COMMANDS = {
    "validate": cmd_validate,
    "compose": cmd_compose,
    "traces": cmd_traces,
    "check": cmd_check,
    "project": cmd_project,
    "compositional": cmd_compositional,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, SignatureMismatchError, UnknownTargetError, TraceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ComposabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FsmCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
