"""Reader for the STRIPS fragment of PDDL 1.2: domains, problems, plans.

Input files are UTF-8 s-expressions with ``;`` line comments.  Tokens are
lowercased on ingest (PDDL is case-insensitive in the wild).  Negation is
accepted only as ``(not ...)`` in source text and rendered with a ``¬``
prefix in canonical literal text, e.g. ``¬(on b a)``.

Anything outside the STRIPS fragment (typing, equality, quantifiers,
conditional effects, numeric fluents) raises :class:`UnsupportedFeature`
naming every distinct offending token found in the file; nothing is ever
silently dropped.  Malformed s-expressions raise :class:`PddlSyntaxError`
with line and column; well-formed but meaningless input (undeclared names,
arity violations, negative init literals, duplicates) raises
:class:`SemanticError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# ---------------------------------------------------------------------------
# errors


class PddlError(Exception):
    """Base class for all reader errors. Carries an optional source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class PddlSyntaxError(PddlError):
    """Malformed s-expression or token."""


class UnsupportedFeature(PddlError):
    """Input uses PDDL features outside the STRIPS fragment."""

    def __init__(self, tokens: list[str], line: int | None = None, column: int | None = None):
        self.tokens = tuple(tokens)
        super().__init__("unsupported feature(s): " + ", ".join(self.tokens), line, column)


class SemanticError(PddlError):
    """Well-formed input that violates STRIPS semantics or declarations."""


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class GroundLiteral:
    """A possibly negated ground atom. A literal and its negation are
    distinct unrelated values; no consistency relation is implied."""

    negated: bool
    predicate: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        body = "(" + " ".join((self.predicate,) + self.args) + ")"
        return ("¬" + body) if self.negated else body


_LITERAL_RE = re.compile(r"(¬?)\(([^()]*)\)\Z")


def parse_literal(text: str) -> GroundLiteral:
    """Inverse of ``str(GroundLiteral)``: ``¬(on b a)`` -> GroundLiteral."""
    m = _LITERAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a canonical literal: {text!r}")
    neg, body = m.groups()
    parts = body.split()
    if not parts:
        raise ValueError(f"empty literal: {text!r}")
    return GroundLiteral(bool(neg), parts[0], tuple(parts[1:]))


@dataclass(frozen=True)
class PredicateSchema:
    name: str
    param_names: tuple[str, ...]  # without the ? sigil

    @property
    def arity(self) -> int:
        return len(self.param_names)


@dataclass(frozen=True)
class LiteralTemplate:
    """Schema-level literal whose args reference action parameters."""

    negated: bool
    predicate: str
    args: tuple[str, ...]  # parameter names, without the ? sigil

    def __str__(self) -> str:
        inner = " ".join([self.predicate] + [f"?{a}" for a in self.args])
        return f"¬({inner})" if self.negated else f"({inner})"


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[str, ...]
    preconditions: tuple[LiteralTemplate, ...]
    effects: tuple[LiteralTemplate, ...]


@dataclass(frozen=True)
class DomainModel:
    name: str
    predicates: tuple[PredicateSchema, ...]
    actions: tuple[ActionSchema, ...]

    def predicate(self, name: str) -> PredicateSchema | None:
        for p in self.predicates:
            if p.name == name:
                return p
        return None

    def action(self, name: str) -> ActionSchema | None:
        for a in self.actions:
            if a.name == name:
                return a
        return None


@dataclass(frozen=True)
class ProblemModel:
    name: str
    domain_name: str
    objects: tuple[str, ...]
    init: tuple[GroundLiteral, ...]  # declaration order, positive only
    goal: tuple[GroundLiteral, ...]  # declaration order


@dataclass(frozen=True)
class PlanStep:
    action_name: str
    args: tuple[str, ...]
    line: int | None = None  # source line in the plan file, for diagnostics


@dataclass(frozen=True)
class Plan:
    steps: tuple[PlanStep, ...]


# ---------------------------------------------------------------------------
# s-expression reading


@dataclass(frozen=True)
class Atom:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    column: int


_ATOM_RE = re.compile(r"[^\s();]+")


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append((ch, ch, line, col))
            col += 1
            i += 1
        else:
            m = _ATOM_RE.match(text, i)
            word = m.group(0)
            tokens.append(("atom", word.lower(), line, col))
            col += len(word)
            i = m.end()
    return tokens


def _read_forms(text: str) -> list:
    forms: list = []
    stack: list[tuple[int, int, list]] = []
    for kind, value, line, col in _tokenize(text):
        if kind == "(":
            stack.append((line, col, []))
        elif kind == ")":
            if not stack:
                raise PddlSyntaxError("unbalanced ')'", line, col)
            sline, scol, items = stack.pop()
            node = SList(tuple(items), sline, scol)
            (stack[-1][2] if stack else forms).append(node)
        else:
            node = Atom(value, line, col)
            (stack[-1][2] if stack else forms).append(node)
    if stack:
        sline, scol, _ = stack[-1]
        raise PddlSyntaxError("unclosed '('", sline, scol)
    return forms


def _single_form(text: str, what: str) -> SList:
    forms = _read_forms(text)
    if len(forms) != 1 or not isinstance(forms[0], SList):
        pos = forms[1] if len(forms) > 1 else None
        raise PddlSyntaxError(
            f"expected a single (define ...) form in {what} text",
            getattr(pos, "line", 1),
            getattr(pos, "column", 1),
        )
    return forms[0]


_IDENT_RE = re.compile(r"[a-z][a-z0-9_-]*\Z")


def _ident(node, what: str) -> str:
    if not isinstance(node, Atom) or _IDENT_RE.match(node.text) is None:
        shown = node.text if isinstance(node, Atom) else "(...)"
        raise PddlSyntaxError(f"expected {what}, got {shown!r}", node.line, node.column)
    return node.text


def _variable(node, what: str) -> str:
    if not isinstance(node, Atom) or not node.text.startswith("?"):
        shown = node.text if isinstance(node, Atom) else "(...)"
        raise PddlSyntaxError(f"expected {what} like ?x, got {shown!r}", node.line, node.column)
    name = node.text[1:]
    if _IDENT_RE.match(name) is None:
        raise PddlSyntaxError(f"invalid variable name {node.text!r}", node.line, node.column)
    return name


class _Unsupported:
    """Collects offending tokens so one error can report all of them."""

    def __init__(self) -> None:
        self.tokens: list[str] = []
        self.line: int | None = None
        self.column: int | None = None

    def add(self, token: str, node) -> None:
        if token not in self.tokens:
            self.tokens.append(token)
        if self.line is None:
            self.line = node.line
            self.column = node.column

    def raise_if_any(self) -> None:
        if self.tokens:
            raise UnsupportedFeature(self.tokens, self.line, self.column)


# Composite formula heads outside the STRIPS fragment.
_UNSUPPORTED_HEADS = {
    "forall", "exists", "when", "or", "imply", "=",
    "increase", "decrease", "assign", "scale-up", "scale-down",
}


def _parse_conjunction(node, unsupported: _Unsupported, allow_not: bool) -> list[tuple[bool, SList]]:
    """Flatten a formula into (negated, atom-slist) pairs, recursing through
    ``and``.  Unsupported heads are recorded and their clauses skipped."""
    if not isinstance(node, SList):
        raise PddlSyntaxError("expected a formula in parentheses", node.line, node.column)
    if not node.items:
        return []  # (and) and () both mean the empty conjunction
    head = node.items[0]
    if isinstance(head, SList):
        raise PddlSyntaxError("expected a formula head symbol", head.line, head.column)
    if head.text == "and":
        out: list[tuple[bool, SList]] = []
        for item in node.items[1:]:
            out.extend(_parse_conjunction(item, unsupported, allow_not))
        return out
    if head.text == "not":
        if not allow_not:
            raise SemanticError("negative init literal", head.line, head.column)
        if len(node.items) != 2 or not isinstance(node.items[1], SList):
            raise PddlSyntaxError("(not ...) takes exactly one atom", node.line, node.column)
        inner = node.items[1]
        inner_head = inner.items[0] if inner.items else None
        if isinstance(inner_head, Atom) and inner_head.text in ("not", "and"):
            raise PddlSyntaxError("(not ...) must wrap a plain atom", inner.line, inner.column)
        body = _parse_conjunction(inner, unsupported, allow_not=False)
        return [(True, atom) for _, atom in body]
    if head.text in _UNSUPPORTED_HEADS:
        unsupported.add(head.text, head)
        return []
    for arg in node.items[1:]:
        if isinstance(arg, Atom) and arg.text == "-":
            unsupported.add(":typing", arg)
    return [(False, node)]


def _parse_atom(node: SList) -> tuple[str, tuple, SList]:
    """An applied predicate: returns (name, arg nodes, source node)."""
    name = _ident(node.items[0], "predicate name")
    for arg in node.items[1:]:
        if isinstance(arg, SList):
            raise PddlSyntaxError("nested expression in atom arguments", arg.line, arg.column)
    args = tuple(a for a in node.items[1:] if a.text != "-")
    return name, args, node


# ---------------------------------------------------------------------------
# domain


def parse_domain(text: str) -> DomainModel:
    """Parse one ``(define (domain ...) ...)`` document."""
    form = _single_form(text, "domain")
    items = form.items
    if not items or not isinstance(items[0], Atom) or items[0].text != "define":
        raise PddlSyntaxError("expected (define (domain ...) ...)", form.line, form.column)
    if len(items) < 2 or not isinstance(items[1], SList) or len(items[1].items) != 2:
        raise PddlSyntaxError("expected (domain NAME) after define", form.line, form.column)
    kind, name_node = items[1].items
    if not isinstance(kind, Atom) or kind.text != "domain":
        raise PddlSyntaxError("expected (domain NAME)", items[1].line, items[1].column)
    domain_name = _ident(name_node, "domain name")

    unsupported = _Unsupported()
    raw_predicates: list[tuple[str, list[str], SList]] = []
    raw_actions: list[dict] = []

    for section in items[2:]:
        if not isinstance(section, SList) or not section.items or not isinstance(section.items[0], Atom):
            raise PddlSyntaxError("expected a (:section ...) form", section.line, section.column)
        head = section.items[0].text
        if head == ":requirements":
            for req in section.items[1:]:
                if isinstance(req, Atom) and req.text != ":strips":
                    unsupported.add(req.text, req)
        elif head == ":predicates":
            for decl in section.items[1:]:
                if not isinstance(decl, SList) or not decl.items:
                    node = decl if isinstance(decl, SList) else decl
                    raise PddlSyntaxError("expected (name ?v ...) predicate declaration", node.line, node.column)
                pname = _ident(decl.items[0], "predicate name")
                params: list[str] = []
                for arg in decl.items[1:]:
                    if isinstance(arg, Atom) and arg.text == "-":
                        unsupported.add(":typing", arg)
                        continue
                    if isinstance(arg, Atom) and not arg.text.startswith("?"):
                        # type name following a dash; already reported above
                        continue
                    params.append(_variable(arg, "predicate parameter"))
                raw_predicates.append((pname, params, decl))
        elif head == ":action":
            raw_actions.append(_parse_raw_action(section, unsupported))
        else:
            unsupported.add(head, section.items[0])

    unsupported.raise_if_any()

    # semantic validation over the raw parse
    predicates: list[PredicateSchema] = []
    for pname, params, decl in raw_predicates:
        if any(p.name == pname for p in predicates):
            raise SemanticError(f"duplicate predicate declaration: {pname}", decl.line, decl.column)
        if len(set(params)) != len(params):
            raise SemanticError(f"repeated parameter in predicate {pname}", decl.line, decl.column)
        predicates.append(PredicateSchema(pname, tuple(params)))

    def lookup(pname: str, node) -> PredicateSchema:
        for p in predicates:
            if p.name == pname:
                return p
        raise SemanticError(f"undeclared predicate: {pname}", node.line, node.column)

    actions: list[ActionSchema] = []
    for raw in raw_actions:
        if any(a.name == raw["name"] for a in actions):
            raise SemanticError(f"duplicate action: {raw['name']}", raw["node"].line, raw["node"].column)
        params = raw["params"]
        if len(set(params)) != len(params):
            raise SemanticError(f"repeated parameter in action {raw['name']}", raw["node"].line, raw["node"].column)

        def templates(raw_lits, where: str) -> tuple[LiteralTemplate, ...]:
            seen: set[tuple] = set()
            out = []
            for negated, atom in raw_lits:
                pname, arg_nodes, node = _parse_atom(atom)
                schema = lookup(pname, node)
                if len(arg_nodes) != schema.arity:
                    raise SemanticError(
                        f"arity: {pname} expects {schema.arity} arg{'s' if schema.arity != 1 else ''}",
                        node.line, node.column,
                    )
                args = []
                for a in arg_nodes:
                    if not a.text.startswith("?"):
                        raise SemanticError(f"undeclared parameter: {a.text}", a.line, a.column)
                    var = a.text[1:]
                    if var not in params:
                        raise SemanticError(f"undeclared parameter: ?{var}", a.line, a.column)
                    args.append(var)
                key = (negated, pname, tuple(args))
                if key in seen:
                    lit = LiteralTemplate(negated, pname, tuple(args))
                    raise SemanticError(f"duplicate literal in {where}: {lit.predicate}", node.line, node.column)
                seen.add(key)
                out.append(LiteralTemplate(negated, pname, tuple(args)))
            return tuple(out)

        pre = templates(raw["pre"], "preconditions")
        eff = templates(raw["eff"], "effects")
        positive_pre = {(t.predicate, t.args) for t in pre if not t.negated}
        for t in pre:
            if t.negated and (t.predicate, t.args) in positive_pre:
                raise SemanticError(
                    f"precondition lists both {t.predicate} and its negation",
                    raw["node"].line, raw["node"].column,
                )
        actions.append(ActionSchema(raw["name"], tuple(params), pre, eff))

    return DomainModel(domain_name, tuple(predicates), tuple(actions))


def _parse_raw_action(section: SList, unsupported: _Unsupported) -> dict:
    items = section.items
    if len(items) < 2:
        raise PddlSyntaxError("expected (:action NAME ...)", section.line, section.column)
    name = _ident(items[1], "action name")
    raw = {"name": name, "node": section, "params": [], "pre": [], "eff": []}
    i = 2
    while i < len(items):
        key = items[i]
        if not isinstance(key, Atom) or not key.text.startswith(":"):
            raise PddlSyntaxError("expected :parameters/:precondition/:effect", key.line, key.column)
        if i + 1 >= len(items):
            raise PddlSyntaxError(f"missing value after {key.text}", key.line, key.column)
        value = items[i + 1]
        if key.text == ":parameters":
            if not isinstance(value, SList):
                raise PddlSyntaxError("expected (?x ...) parameter list", value.line, value.column)
            for p in value.items:
                if isinstance(p, Atom) and p.text == "-":
                    unsupported.add(":typing", p)
                    continue
                if isinstance(p, Atom) and not p.text.startswith("?"):
                    continue  # type name after a dash
                raw["params"].append(_variable(p, "action parameter"))
        elif key.text == ":precondition":
            raw["pre"] = _parse_conjunction(value, unsupported, allow_not=True)
        elif key.text == ":effect":
            raw["eff"] = _parse_conjunction(value, unsupported, allow_not=True)
        else:
            unsupported.add(key.text, key)
        i += 2
    return raw


# ---------------------------------------------------------------------------
# problem


def parse_problem(text: str, domain: DomainModel) -> ProblemModel:
    """Parse one ``(define (problem ...) ...)`` document against *domain*."""
    form = _single_form(text, "problem")
    items = form.items
    if not items or not isinstance(items[0], Atom) or items[0].text != "define":
        raise PddlSyntaxError("expected (define (problem ...) ...)", form.line, form.column)
    if len(items) < 2 or not isinstance(items[1], SList) or len(items[1].items) != 2:
        raise PddlSyntaxError("expected (problem NAME) after define", form.line, form.column)
    kind, name_node = items[1].items
    if not isinstance(kind, Atom) or kind.text != "problem":
        raise PddlSyntaxError("expected (problem NAME)", items[1].line, items[1].column)
    problem_name = _ident(name_node, "problem name")

    unsupported = _Unsupported()
    domain_ref: tuple[str, SList] | None = None
    object_nodes: list[Atom] = []
    raw_init: list[tuple[bool, SList]] = []
    raw_goal: list[tuple[bool, SList]] = []
    saw_goal = False

    for section in items[2:]:
        if not isinstance(section, SList) or not section.items or not isinstance(section.items[0], Atom):
            raise PddlSyntaxError("expected a (:section ...) form", section.line, section.column)
        head = section.items[0].text
        if head == ":domain":
            if len(section.items) != 2:
                raise PddlSyntaxError("expected (:domain NAME)", section.line, section.column)
            domain_ref = (_ident(section.items[1], "domain name"), section)
        elif head == ":objects":
            for obj in section.items[1:]:
                if isinstance(obj, Atom) and obj.text == "-":
                    unsupported.add(":typing", obj)
                    continue
                if isinstance(obj, SList):
                    raise PddlSyntaxError("unexpected parentheses in :objects", obj.line, obj.column)
                object_nodes.append(obj)
        elif head == ":init":
            for entry in section.items[1:]:
                raw_init.extend(_parse_conjunction(entry, unsupported, allow_not=False))
        elif head == ":goal":
            if len(section.items) != 2:
                raise PddlSyntaxError("expected (:goal FORMULA)", section.line, section.column)
            raw_goal = _parse_conjunction(section.items[1], unsupported, allow_not=True)
            saw_goal = True
        else:
            unsupported.add(head, section.items[0])

    unsupported.raise_if_any()

    if domain_ref is None:
        raise SemanticError("problem lacks a (:domain ...) section", form.line, form.column)
    if domain_ref[0] != domain.name:
        raise SemanticError(
            f"problem is for domain {domain_ref[0]!r}, not {domain.name!r}",
            domain_ref[1].line, domain_ref[1].column,
        )
    if not saw_goal:
        raise SemanticError("problem lacks a (:goal ...) section", form.line, form.column)

    objects: list[str] = []
    for node in object_nodes:
        name = _ident(node, "object name")
        if name in objects:
            raise SemanticError(f"duplicate object: {name}", node.line, node.column)
        objects.append(name)

    def ground(raw_lits, where: str) -> tuple[GroundLiteral, ...]:
        seen: set[GroundLiteral] = set()
        out = []
        for negated, atom in raw_lits:
            pname, arg_nodes, node = _parse_atom(atom)
            schema = domain.predicate(pname)
            if schema is None:
                raise SemanticError(f"undeclared predicate: {pname}", node.line, node.column)
            if len(arg_nodes) != schema.arity:
                raise SemanticError(
                    f"arity: {pname} expects {schema.arity} arg{'s' if schema.arity != 1 else ''}",
                    node.line, node.column,
                )
            args = []
            for a in arg_nodes:
                if a.text.startswith("?"):
                    raise SemanticError(f"variable {a.text} in ground literal", a.line, a.column)
                if a.text not in objects:
                    raise SemanticError(f"undeclared object: {a.text}", a.line, a.column)
                args.append(a.text)
            lit = GroundLiteral(negated, pname, tuple(args))
            if lit in seen:
                raise SemanticError(f"duplicate literal in {where}: {lit}", node.line, node.column)
            seen.add(lit)
            out.append(lit)
        return tuple(out)

    init = ground(raw_init, ":init")
    goal = ground(raw_goal, ":goal")
    return ProblemModel(problem_name, domain.name, tuple(objects), init, goal)


# ---------------------------------------------------------------------------
# plans


def parse_plan(text: str, domain: DomainModel, problem: ProblemModel) -> Plan:
    """Parse a plan file: one step per line, ``name args`` or ``(name args)``,
    blank lines and ``;`` comment lines ignored."""
    steps: list[PlanStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith("("):
            if not line.endswith(")"):
                raise PddlSyntaxError("unclosed '(' in plan step", lineno, 1)
            line = line[1:-1].strip()
        tokens = line.lower().split()
        if not tokens:
            raise PddlSyntaxError("empty plan step", lineno, 1)
        name, *args = tokens
        schema = domain.action(name)
        if schema is None:
            raise SemanticError(f"unknown action: {name}", lineno, 1)
        want = len(schema.params)
        if len(args) != want:
            raise SemanticError(
                f"arity: {name} expects {want} arg{'s' if want != 1 else ''}",
                lineno, 1,
            )
        for a in args:
            if a not in problem.objects:
                raise SemanticError(f"undeclared object: {a}", lineno, 1)
        steps.append(PlanStep(name, tuple(args), lineno))
    return Plan(tuple(steps))


# ---------------------------------------------------------------------------
# canonical pretty-printing (re-parses to an identical model)


def _format_template(t: LiteralTemplate) -> str:
    body = "(" + " ".join((t.predicate,) + tuple("?" + a for a in t.args)) + ")"
    return f"(not {body})" if t.negated else body


def _format_ground(lit: GroundLiteral) -> str:
    body = "(" + " ".join((lit.predicate,) + lit.args) + ")"
    return f"(not {body})" if lit.negated else body


def format_domain(domain: DomainModel) -> str:
    lines = [f"(define (domain {domain.name})", "  (:requirements :strips)", "  (:predicates"]
    for p in domain.predicates:
        lines.append("    (" + " ".join((p.name,) + tuple("?" + v for v in p.param_names)) + ")")
    lines.append("  )")
    for a in domain.actions:
        lines.append(f"  (:action {a.name}")
        lines.append("    :parameters (" + " ".join("?" + p for p in a.params) + ")")
        lines.append("    :precondition (and " + " ".join(_format_template(t) for t in a.preconditions) + ")")
        lines.append("    :effect (and " + " ".join(_format_template(t) for t in a.effects) + ")")
        lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"


def format_problem(problem: ProblemModel) -> str:
    lines = [
        f"(define (problem {problem.name})",
        f"  (:domain {problem.domain_name})",
        "  (:objects " + " ".join(problem.objects) + ")",
        "  (:init",
    ]
    for lit in problem.init:
        lines.append("    " + _format_ground(lit))
    lines.append("  )")
    lines.append("  (:goal (and " + " ".join(_format_ground(lit) for lit in problem.goal) + "))")
    lines.append(")")
    return "\n".join(lines) + "\n"
