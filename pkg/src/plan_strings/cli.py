"""Command-line front end.

Usage:
    plan-strings diagram DOMAIN PROBLEM PLAN --format dot [--output FILE]
    plan-strings report DOMAIN PROBLEM PLAN
    plan-strings deps DOMAIN PROBLEM PLAN
    plan-strings compose-check DOMAIN1 PROBLEM1 PLAN1 DOMAIN2 PROBLEM2 PLAN2 [--strict]
    plan-strings validate DOMAIN [PROBLEM [PLAN]]

The requested artifact goes to stdout (or --output); diagnostics go to
stderr.  Exit codes: 0 success (and composable / no assumptions), 1 for a
negative analysis verdict, 2 for rejected input (syntax, semantics,
unsupported features), 3 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import CompatReport, DependencyEdge, check_sequential_composable, dependencies, trace
from .emit import to_dot, to_json, to_linear, trace_table
from .grounding import ground_plan
from .pddl import DomainModel, PddlError, Plan, ProblemModel, parse_domain, parse_plan, parse_problem
from .weaver import GOAL, WeaveReport, WovenPlan, weave

FORMATS = ("dot", "json", "linear", "trace-md", "trace-tsv", "deps", "report")


class _ExitError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise _ExitError(3, f"cannot read {path}: {err.strerror or err}") from err


def _parse(path: str, parse_fn, *parse_args):
    text = _read(path)
    try:
        return parse_fn(text, *parse_args)
    except PddlError as err:
        loc = f"{path}:{err.line}" if err.line is not None else path
        raise _ExitError(2, f"{loc}: {err}") from err


def _load(domain_path: str, problem_path: str, plan_path: str) -> tuple[DomainModel, ProblemModel, Plan]:
    domain = _parse(domain_path, parse_domain)
    problem = _parse(problem_path, parse_problem, domain)
    plan = _parse(plan_path, parse_plan, domain, problem)
    return domain, problem, plan


def _weave_files(domain_path: str, problem_path: str, plan_path: str) -> WovenPlan:
    domain, problem, plan = _load(domain_path, problem_path, plan_path)
    return weave(problem, ground_plan(domain, plan))


def _write_out(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as err:
        raise _ExitError(3, f"cannot write {output}: {err.strerror or err}") from err


def _step_name(endpoint: int | str) -> str:
    return endpoint if isinstance(endpoint, str) else f"step {endpoint}"


def render_report(report: WeaveReport) -> str:
    n = len(report.implicit_assumptions)
    lines = [f"{n} implicit assumption{'s' if n != 1 else ''}"]
    for a in report.implicit_assumptions:
        where = "goal" if a.first_demanded_at == GOAL else f"step {a.first_demanded_at}"
        lines.append(f"  {a.literal} first demanded at {where}")
    m = len(report.surplus_outputs)
    lines.append(f"{m} surplus output{'s' if m != 1 else ''}")
    lines.extend(f"  {lab}" for lab in report.surplus_outputs)
    return "\n".join(lines) + "\n"


def render_deps(edges: list[DependencyEdge]) -> str:
    return "".join(
        f"{_step_name(e.producer)} -> {_step_name(e.consumer)}: {e.literal}\n" for e in edges
    )


def render_compat(compat: CompatReport) -> str:
    lines = [f"composable: {'yes' if compat.composable else 'no'}"]
    lines.append(f"missing ({len(compat.missing)}):")
    lines.extend(f"  {lab}" for lab in compat.missing)
    lines.append(f"surplus ({len(compat.surplus)}):")
    lines.extend(f"  {lab}" for lab in compat.surplus)
    return "\n".join(lines) + "\n"


def _render(w: WovenPlan, fmt: str) -> str:
    if fmt == "dot":
        return to_dot(w.diagram, w.report)
    if fmt == "json":
        return to_json(w)
    if fmt == "linear":
        return to_linear(w.diagram)
    if fmt == "trace-md":
        return trace_table(trace(w), "markdown")
    if fmt == "trace-tsv":
        return trace_table(trace(w), "tsv")
    if fmt == "deps":
        return render_deps(dependencies(w))
    return render_report(w.report)


def _cmd_diagram(args: argparse.Namespace) -> int:
    w = _weave_files(args.domain, args.problem, args.plan)
    _write_out(_render(w, args.format), args.output)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    w = _weave_files(args.domain, args.problem, args.plan)
    _write_out(render_report(w.report), args.output)
    return 0 if not w.report.implicit_assumptions else 1


def _cmd_deps(args: argparse.Namespace) -> int:
    w = _weave_files(args.domain, args.problem, args.plan)
    _write_out(render_deps(dependencies(w)), args.output)
    return 0


def _cmd_compose_check(args: argparse.Namespace) -> int:
    first = _weave_files(args.domain1, args.problem1, args.plan1)
    second = _weave_files(args.domain2, args.problem2, args.plan2)
    compat = check_sequential_composable(first, second, strict=args.strict)
    _write_out(render_compat(compat), args.output)
    return 0 if compat.composable else 1


def _cmd_validate(args: argparse.Namespace) -> int:
    domain = _parse(args.domain, parse_domain)
    problem = None
    if args.problem is not None:
        problem = _parse(args.problem, parse_problem, domain)
    if args.plan is not None:
        _parse(args.plan, parse_plan, domain, problem)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plan-strings",
        description="Turn STRIPS PDDL plans into wire diagrams and explanations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_inputs(p: argparse.ArgumentParser) -> None:
        p.add_argument("domain", help="domain PDDL file")
        p.add_argument("problem", help="problem PDDL file")
        p.add_argument("plan", help="plan file, one step per line")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("diagram", help="emit the woven diagram in a chosen format")
    add_inputs(p)
    p.add_argument("--format", "-f", choices=FORMATS, default="dot")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("report", help="implicit assumptions and surplus; exit 1 if assumptions exist")
    add_inputs(p)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("deps", help="which step produced each consumed literal")
    add_inputs(p)
    p.set_defaults(func=_cmd_deps)

    p = sub.add_parser("compose-check", help="can the second plan run after the first? exit 1 if not")
    p.add_argument("domain1")
    p.add_argument("problem1")
    p.add_argument("plan1")
    p.add_argument("domain2")
    p.add_argument("problem2")
    p.add_argument("plan2")
    p.add_argument("--strict", action="store_true", help="surplus outputs also block composition")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_compose_check)

    p = sub.add_parser("validate", help="parse only; exit 0 when inputs are well-formed")
    p.add_argument("domain")
    p.add_argument("problem", nargs="?")
    p.add_argument("plan", nargs="?")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ExitError as err:
        print(err.message, file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
