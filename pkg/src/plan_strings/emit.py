"""Render woven diagrams: linear text notation, Graphviz DOT, JSON, and
trace tables.

All emitters are deterministic: equal inputs give byte-identical output.
The JSON form round-trips losslessly through :func:`from_json`; the linear
notation lists slices top to bottom, which is the reverse of the usual
"g after f" composition order, as its header comment says.
"""

from __future__ import annotations

import json

from .diagram import BOTTOM, TOP, BoxCell, Diagram, IdCell, Slice, SwapCell, _trace_wires
from .pddl import GroundLiteral
from .weaver import (
    GOAL,
    Assumption,
    WeaveReport,
    WovenPlan,
    replay_step_matches,
)
from .analysis import TraceRow

JSON_VERSION = 1


class SchemaError(Exception):
    """Serialized diagram payload rejected; carries the offending JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# ---------------------------------------------------------------------------
# linear notation

_LINEAR_HEADER = (
    "# slices listed top to bottom: the first line acts first "
    "(reverse of g ∘ f order)"
)


def _linear_boundary(labels: tuple[GroundLiteral, ...]) -> str:
    return " ⊗ ".join(str(lab) for lab in labels) if labels else "I"


def _linear_cell(cell) -> str:
    if isinstance(cell, IdCell):
        return f"id_{{{cell.label}}}"
    if isinstance(cell, SwapCell):
        return f"B_{{{cell.left},{cell.right}}}"
    return f"{cell.name}{{{_linear_boundary(cell.dom)} → {_linear_boundary(cell.cod)}}}"


def to_linear(d: Diagram) -> str:
    """One parenthesized slice per line, cells joined by the tensor sign."""
    lines = [
        "(" + " ⊗ ".join(_linear_cell(c) for c in sl.cells) + ")" if sl.cells else "(I)"
        for sl in d.slices
    ]
    return _LINEAR_HEADER + "\n" + " ∘\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(d: Diagram, report: WeaveReport | None = None) -> str:
    """Graphviz digraph of the diagram's connectivity.

    Nodes are boxes only (identities and swaps are invisible), with ids
    ``s{i}_c{j}`` counting box-bearing slices and boxes within them, so
    braid-only edits do not renumber anything.  Edges connect nodes at the
    connectivity level, labeled with the literal; implicit-assumption wires
    out of the init box are dashed when a report is supplied.
    """
    boxes, raw_edges = _trace_wires(d)

    ids: list[str] = []
    named_slices = 0
    for sl in d.slices:
        in_slice = 0
        for cell in sl.cells:
            if isinstance(cell, BoxCell):
                ids.append(f"s{named_slices}_c{in_slice}")
                in_slice += 1
        if in_slice:
            named_slices += 1

    def node_id(trace_idx: int) -> str:
        if trace_idx == -1:
            return TOP
        if trace_idx == -2:
            return BOTTOM
        return ids[trace_idx]

    init_idx = next(
        (i for i, b in enumerate(boxes) if b.name == "init" and b.step_index is None),
        None,
    )
    assumed_from = None
    if report is not None and init_idx is not None:
        assumed_from = len(boxes[init_idx].cod) - len(report.implicit_assumptions)

    lines = ["digraph plan {", "  rankdir=TB;"]
    if d.dom:
        lines.append(f"  {TOP} [shape=plaintext, label={_dot_quote(TOP)}];")
    for idx, box in enumerate(boxes):
        shape = "ellipse" if box.step_index is None and box.name in ("init", "goal") else "rectangle"
        lines.append(f"  {ids[idx]} [shape={shape}, label={_dot_quote(box.name)}];")
    if d.cod:
        lines.append(f"  {BOTTOM} [shape=plaintext, label={_dot_quote(BOTTOM)}];")

    def sort_key(edge):
        src, src_port, dst, dst_port, lab = edge
        return (node_id(src), node_id(dst), str(lab), src_port, dst_port)

    for src, src_port, dst, dst_port, lab in sorted(raw_edges, key=sort_key):
        attrs = [f"label={_dot_quote(str(lab))}"]
        if assumed_from is not None and src == init_idx and src_port >= assumed_from:
            attrs.append("style=dashed")
        lines.append(f"  {node_id(src)} -> {node_id(dst)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON

def _lit_to_json(lit: GroundLiteral) -> dict:
    return {"neg": lit.negated, "pred": lit.predicate, "args": list(lit.args)}


def _cell_to_json(cell) -> dict:
    if isinstance(cell, BoxCell):
        return {
            "kind": "box",
            "name": cell.name,
            "dom": [_lit_to_json(l) for l in cell.dom],
            "cod": [_lit_to_json(l) for l in cell.cod],
        }
    if isinstance(cell, IdCell):
        lab = _lit_to_json(cell.label)
        return {"kind": "id", "dom": [lab], "cod": [lab]}
    return {
        "kind": "swap",
        "dom": [_lit_to_json(cell.left), _lit_to_json(cell.right)],
        "cod": [_lit_to_json(cell.right), _lit_to_json(cell.left)],
    }


def to_json(w: WovenPlan) -> str:
    """Canonical JSON: sorted keys, compact separators, trailing newline.
    Emitting twice gives byte-identical text."""
    doc = {
        "version": JSON_VERSION,
        "domain_name": w.domain_name,
        "problem_name": w.problem_name,
        "slices": [
            {"cells": [_cell_to_json(c) for c in sl.cells]} for sl in w.diagram.slices
        ],
        "report": {
            "assumptions": [
                {"literal": _lit_to_json(a.literal), "first_demanded_at": a.first_demanded_at}
                for a in w.report.implicit_assumptions
            ],
            "surplus": [_lit_to_json(l) for l in w.report.surplus_outputs],
        },
        "step_slices": {str(k): v for k, v in w.step_slices.items()},
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


def _want(value, typ, path: str, what: str):
    if typ is int and isinstance(value, bool):
        raise SchemaError(path, f"expected {what}")
    if not isinstance(value, typ):
        raise SchemaError(path, f"expected {what}")
    return value


def _field(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(f"{path}/{key}", "missing")
    return obj[key]


def _no_extras(obj: dict, allowed: set[str], path: str) -> None:
    extras = set(obj) - allowed
    if extras:
        raise SchemaError(path, f"unknown key(s): {', '.join(sorted(extras))}")


def _lit_from_json(value, path: str) -> GroundLiteral:
    obj = _want(value, dict, path, "a literal object")
    _no_extras(obj, {"neg", "pred", "args"}, path)
    neg = _want(_field(obj, "neg", path), bool, f"{path}/neg", "a boolean")
    pred = _want(_field(obj, "pred", path), str, f"{path}/pred", "a string")
    args = _want(_field(obj, "args", path), list, f"{path}/args", "a list")
    for i, a in enumerate(args):
        _want(a, str, f"{path}/args/{i}", "a string")
    return GroundLiteral(neg, pred, tuple(args))


def _cell_from_json(value, path: str):
    obj = _want(value, dict, path, "a cell object")
    kind = _want(_field(obj, "kind", path), str, f"{path}/kind", "a string")
    dom = [
        _lit_from_json(l, f"{path}/dom/{i}")
        for i, l in enumerate(_want(_field(obj, "dom", path), list, f"{path}/dom", "a list"))
    ]
    cod = [
        _lit_from_json(l, f"{path}/cod/{i}")
        for i, l in enumerate(_want(_field(obj, "cod", path), list, f"{path}/cod", "a list"))
    ]
    if kind == "box":
        _no_extras(obj, {"kind", "name", "dom", "cod"}, path)
        name = _want(_field(obj, "name", path), str, f"{path}/name", "a string")
        return BoxCell(name, tuple(dom), tuple(cod))
    if kind == "id":
        _no_extras(obj, {"kind", "dom", "cod"}, path)
        if len(dom) != 1 or dom != cod:
            raise SchemaError(path, "id cell must have dom == cod, one wire")
        return IdCell(dom[0])
    if kind == "swap":
        _no_extras(obj, {"kind", "dom", "cod"}, path)
        if len(dom) != 2 or cod != [dom[1], dom[0]]:
            raise SchemaError(path, "swap cell must have two wires with cod reversed")
        return SwapCell(dom[0], dom[1])
    raise SchemaError(f"{path}/kind", f"unknown cell kind {kind!r}")


def from_json(text: str) -> WovenPlan:
    """Parse :func:`to_json` output back into a structurally equal plan."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc}") from exc
    obj = _want(doc, dict, "/", "an object")
    _no_extras(obj, {"version", "domain_name", "problem_name", "slices", "report", "step_slices"}, "/")

    version = _field(obj, "version", "")
    if version != JSON_VERSION:
        raise SchemaError("/version", f"expected {JSON_VERSION}, got {version!r}")
    domain_name = _want(_field(obj, "domain_name", ""), str, "/domain_name", "a string")
    problem_name = _want(_field(obj, "problem_name", ""), str, "/problem_name", "a string")

    raw_slices = _want(_field(obj, "slices", ""), list, "/slices", "a list")
    cells_per_slice: list[list] = []
    for i, raw in enumerate(raw_slices):
        spath = f"/slices/{i}"
        sobj = _want(raw, dict, spath, "a slice object")
        _no_extras(sobj, {"cells"}, spath)
        raw_cells = _want(_field(sobj, "cells", spath), list, f"{spath}/cells", "a list")
        cells_per_slice.append(
            [_cell_from_json(c, f"{spath}/cells/{j}") for j, c in enumerate(raw_cells)]
        )

    raw_steps = _want(_field(obj, "step_slices", ""), dict, "/step_slices", "an object")
    step_slices: dict[int, int] = {}
    for key, value in raw_steps.items():
        kpath = f"/step_slices/{key}"
        try:
            k = int(key)
        except ValueError:
            raise SchemaError(kpath, "key must be a step number") from None
        idx = _want(value, int, kpath, "a slice index")
        if not (0 <= idx < len(cells_per_slice)):
            raise SchemaError(kpath, f"slice index {idx} out of range")
        step_slices[k] = idx
    if sorted(step_slices) != list(range(1, len(step_slices) + 1)):
        raise SchemaError("/step_slices", "steps must number 1..n")
    if len(set(step_slices.values())) != len(step_slices):
        raise SchemaError("/step_slices", "two steps share one slice")
    for k, idx in step_slices.items():
        slot = [j for j, c in enumerate(cells_per_slice[idx]) if isinstance(c, BoxCell)]
        if len(slot) != 1:
            raise SchemaError(f"/step_slices/{k}", f"slice {idx} does not hold exactly one box")
        j = slot[0]
        box = cells_per_slice[idx][j]
        cells_per_slice[idx][j] = BoxCell(box.name, box.dom, box.cod, k)

    rpath = "/report"
    robj = _want(_field(obj, "report", ""), dict, rpath, "an object")
    _no_extras(robj, {"assumptions", "surplus"}, rpath)
    assumptions = []
    for i, raw in enumerate(_want(_field(robj, "assumptions", rpath), list, f"{rpath}/assumptions", "a list")):
        apath = f"{rpath}/assumptions/{i}"
        aobj = _want(raw, dict, apath, "an assumption object")
        _no_extras(aobj, {"literal", "first_demanded_at"}, apath)
        lit = _lit_from_json(_field(aobj, "literal", apath), f"{apath}/literal")
        at = _field(aobj, "first_demanded_at", apath)
        if at != GOAL and not (isinstance(at, int) and not isinstance(at, bool)):
            raise SchemaError(f"{apath}/first_demanded_at", 'expected a step number or "goal"')
        assumptions.append(Assumption(lit, at))
    surplus = tuple(
        _lit_from_json(l, f"{rpath}/surplus/{i}")
        for i, l in enumerate(_want(_field(robj, "surplus", rpath), list, f"{rpath}/surplus", "a list"))
    )

    try:
        diagram = Diagram(tuple(Slice(tuple(cells)) for cells in cells_per_slice))
    except Exception as exc:
        raise SchemaError("/slices", f"slices do not compose: {exc}") from exc
    if not diagram.slices:
        raise SchemaError("/slices", "empty diagram")
    first, last = diagram.slices[0].cells, diagram.slices[-1].cells
    if len(first) != 1 or not isinstance(first[0], BoxCell) or first[0].name != "init" or first[0].dom:
        raise SchemaError("/slices/0", "first slice must be the init box")
    if len(last) != 1 or not isinstance(last[0], BoxCell) or last[0].name != "goal" or last[0].cod:
        raise SchemaError(f"/slices/{len(diagram.slices) - 1}", "last slice must be the goal box")
    if len(assumptions) > len(first[0].cod):
        raise SchemaError("/report/assumptions", "more assumptions than init wires")
    if len(surplus) > len(last[0].dom):
        raise SchemaError("/report/surplus", "more surplus than goal wires")

    try:
        matches = replay_step_matches(diagram, step_slices)
    except StopIteration:
        raise SchemaError("/step_slices", "step bindings do not replay over the slices") from None

    report = WeaveReport(tuple(assumptions), surplus, matches)
    return WovenPlan(diagram, report, step_slices, domain_name, problem_name)


# ---------------------------------------------------------------------------
# trace tables

def _render_literal(lit: GroundLiteral, highlighted: bool, fmt: str) -> str:
    text = str(lit)
    if not highlighted:
        return text
    return f"**{text}**" if fmt == "markdown" else text + "*"


def trace_table(rows: list[TraceRow], format: str = "markdown") -> str:
    """Tabulate trace rows: State | Satisfied Literals | Action.  Markdown
    bolds the highlighted literals; TSV marks them with a ``*`` suffix."""
    if format not in ("markdown", "tsv"):
        raise ValueError(f"unknown trace table format: {format!r}")
    body = []
    for row in rows:
        marked = set(row.highlighted)
        lits = ", ".join(
            _render_literal(lab, i in marked, format) for i, lab in enumerate(row.literals)
        )
        body.append((row.boundary_name, lits, row.action or ""))
    if format == "markdown":
        lines = ["| State | Satisfied Literals | Action |", "| --- | --- | --- |"]
        lines += [f"| {state} | {lits} | {action} |" for state, lits, action in body]
    else:
        lines = ["State\tSatisfied Literals\tAction"]
        lines += [f"{state}\t{lits}\t{action}" for state, lits, action in body]
    return "\n".join(lines) + "\n"
