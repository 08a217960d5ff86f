"""Wire diagrams: ordered parallel wires flowing top to bottom through
layered slices of cells.

A wire is a position carrying a :class:`GroundLiteral` label; several wires
may carry the same label and are then distinguished only by position.  A
slice is a left-to-right row of cells (boxes, identities, swaps) acting on
consecutive wires; a diagram is a top-to-bottom stack of slices whose
boundaries agree as ordered label lists.  Swaps are restricted to adjacent
wires, one swap per slice, so any reordering is an explicit sequence of
crossings.

Connectivity questions go through :func:`port_graph`, which forgets
identities and swaps and keeps only boxes, boundary ports and the wires
between them.  Two diagrams count as deformations of each other exactly
when their port graphs are isomorphic by a box-name-preserving,
port-order-preserving bijection; see :func:`equivalent`.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

from .pddl import GroundLiteral


class CompositionMismatch(Exception):
    """Stacked boundaries disagree; carries both and the first bad position."""

    def __init__(self, upper_cod, lower_dom, position: int):
        self.upper_cod = tuple(upper_cod)
        self.lower_dom = tuple(lower_dom)
        self.position = position
        up = str(self.upper_cod[position]) if position < len(self.upper_cod) else "<none>"
        low = str(self.lower_dom[position]) if position < len(self.lower_dom) else "<none>"
        super().__init__(
            f"boundaries differ at position {position}: {up} above vs {low} below "
            f"({len(self.upper_cod)} wires above, {len(self.lower_dom)} below)"
        )


class NotAPermutation(Exception):
    """Swap synthesis asked to connect boundaries with different multisets."""


@dataclass(frozen=True)
class BoxCell:
    """A named morphism consuming its dom wires and producing its cod wires."""

    name: str
    dom: tuple[GroundLiteral, ...]
    cod: tuple[GroundLiteral, ...]
    step_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))


@dataclass(frozen=True)
class IdCell:
    """One wire passing through unchanged."""

    label: GroundLiteral

    @property
    def dom(self) -> tuple[GroundLiteral, ...]:
        return (self.label,)

    @property
    def cod(self) -> tuple[GroundLiteral, ...]:
        return (self.label,)


@dataclass(frozen=True)
class SwapCell:
    """Two adjacent wires crossing; left enters on the left, exits on the right."""

    left: GroundLiteral
    right: GroundLiteral

    @property
    def dom(self) -> tuple[GroundLiteral, ...]:
        return (self.left, self.right)

    @property
    def cod(self) -> tuple[GroundLiteral, ...]:
        return (self.right, self.left)


Cell = BoxCell | IdCell | SwapCell


@dataclass(frozen=True)
class Slice:
    """A horizontal row of cells; wire order is cell order."""

    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    # boundaries are recomputed heavily during validation, so memoize them;
    # cells are immutable and equality/hash look only at the field
    @cached_property
    def dom(self) -> tuple[GroundLiteral, ...]:
        return tuple(lab for cell in self.cells for lab in cell.dom)

    @cached_property
    def cod(self) -> tuple[GroundLiteral, ...]:
        return tuple(lab for cell in self.cells for lab in cell.cod)


def _first_mismatch(upper: tuple, lower: tuple) -> int | None:
    for i, (a, b) in enumerate(zip(upper, lower)):
        if a != b:
            return i
    if len(upper) != len(lower):
        return min(len(upper), len(lower))
    return None


@dataclass(frozen=True)
class Diagram:
    """A vertical stack of slices with agreeing boundaries."""

    slices: tuple[Slice, ...]

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        for i in range(len(self.slices) - 1):
            upper, lower = self.slices[i].cod, self.slices[i + 1].dom
            pos = _first_mismatch(upper, lower)
            if pos is not None:
                raise CompositionMismatch(upper, lower, pos)

    @property
    def dom(self) -> tuple[GroundLiteral, ...]:
        return self.slices[0].dom if self.slices else ()

    @property
    def cod(self) -> tuple[GroundLiteral, ...]:
        return self.slices[-1].cod if self.slices else ()


def tensor(a: Slice, b: Slice) -> Slice:
    """Place two slices side by side; the empty slice is the unit."""
    return Slice(a.cells + b.cells)


def compose(upper: Diagram, lower: Diagram) -> Diagram:
    """Stack *lower* below *upper*. Boundaries must agree as ordered lists."""
    if not upper.slices:
        return lower
    if not lower.slices:
        return upper
    pos = _first_mismatch(upper.cod, lower.dom)
    if pos is not None:
        raise CompositionMismatch(upper.cod, lower.dom, pos)
    return Diagram(upper.slices + lower.slices)


def permutation_to_swaps(
    current: tuple[GroundLiteral, ...] | list[GroundLiteral],
    target: tuple[GroundLiteral, ...] | list[GroundLiteral],
) -> list[Slice]:
    """Slices of adjacent swaps rewriting *current* into *target*.

    Duplicate labels map first occurrence to first occurrence, so
    equal-labeled wires never cross each other.  Decomposition comes from
    bubble passes: scan left to right, swap adjacent out-of-place pairs,
    one swap per emitted slice, until sorted.
    """
    cur = list(current)
    tgt = list(target)
    if Counter(cur) != Counter(tgt):
        raise NotAPermutation(f"multisets differ: {[str(l) for l in cur]} vs {[str(l) for l in tgt]}")
    slots: dict[GroundLiteral, deque[int]] = {}
    for i, lab in enumerate(tgt):
        slots.setdefault(lab, deque()).append(i)
    ranks = [slots[lab].popleft() for lab in cur]

    out: list[Slice] = []
    labels = cur
    done = False
    while not done:
        done = True
        for i in range(len(ranks) - 1):
            if ranks[i] > ranks[i + 1]:
                cells = (
                    [IdCell(lab) for lab in labels[:i]]
                    + [SwapCell(labels[i], labels[i + 1])]
                    + [IdCell(lab) for lab in labels[i + 2:]]
                )
                out.append(Slice(tuple(cells)))
                ranks[i], ranks[i + 1] = ranks[i + 1], ranks[i]
                labels[i], labels[i + 1] = labels[i + 1], labels[i]
                done = False
    return out


# ---------------------------------------------------------------------------
# port graphs

TOP = "top"
BOTTOM = "bottom"


@dataclass(frozen=True)
class PortNode:
    node_id: str
    name: str
    step_index: int | None


@dataclass(frozen=True)
class PortEdge:
    src: str
    src_port: int
    dst: str
    dst_port: int
    label: GroundLiteral


@dataclass(frozen=True)
class PortGraph:
    """Boxes plus the two boundary nodes, and one edge per wire segment
    between box/boundary ports. Identities and swaps leave no trace."""

    nodes: tuple[PortNode, ...]
    edges: tuple[PortEdge, ...]
    top_ports: int
    bottom_ports: int


def _trace_wires(d: Diagram) -> tuple[list[BoxCell], list[tuple[int, int, int, int, GroundLiteral]]]:
    """Walk the diagram: boxes in reading order plus edges keyed by box trace
    index (TOP = -1, BOTTOM = -2)."""
    boxes: list[BoxCell] = []
    edges: list[tuple[int, int, int, int, GroundLiteral]] = []
    open_wires: list[tuple[int, int, GroundLiteral]] = [
        (-1, i, lab) for i, lab in enumerate(d.dom)
    ]
    for sl in d.slices:
        new_open: list[tuple[int, int, GroundLiteral]] = []
        pos = 0
        for cell in sl.cells:
            take = len(cell.dom)
            ins = open_wires[pos:pos + take]
            pos += take
            if isinstance(cell, IdCell):
                new_open.extend(ins)
            elif isinstance(cell, SwapCell):
                new_open.extend((ins[1], ins[0]))
            else:
                idx = len(boxes)
                boxes.append(cell)
                for port, (src, src_port, lab) in enumerate(ins):
                    edges.append((src, src_port, idx, port, lab))
                new_open.extend((idx, port, lab) for port, lab in enumerate(cell.cod))
        open_wires = new_open
    for i, (src, src_port, lab) in enumerate(open_wires):
        edges.append((src, src_port, -2, i, lab))
    return boxes, edges


def port_graph(d: Diagram) -> PortGraph:
    """Canonical port graph: box nodes sorted by (name, step, reading order)
    and edges sorted, so diagrams differing only by slicing of the same
    connectivity yield equal graphs."""
    boxes, raw_edges = _trace_wires(d)
    order = sorted(
        range(len(boxes)),
        key=lambda i: (boxes[i].name, boxes[i].step_index is None, boxes[i].step_index or 0, i),
    )
    ids = {trace_idx: f"b{rank}" for rank, trace_idx in enumerate(order)}
    ids[-1] = TOP
    ids[-2] = BOTTOM
    nodes = tuple(PortNode(f"b{rank}", boxes[t].name, boxes[t].step_index) for rank, t in enumerate(order))
    edges = tuple(
        sorted(
            (PortEdge(ids[s], sp, ids[t], tp, lab) for s, sp, t, tp, lab in raw_edges),
            key=lambda e: (e.src, e.src_port, e.dst, e.dst_port, str(e.label)),
        )
    )
    return PortGraph(nodes, edges, len(d.dom), len(d.cod))


def equivalent(a: Diagram, b: Diagram) -> bool:
    """True when the diagrams are planar deformations of each other:
    port graphs isomorphic under a bijection that fixes the boundary nodes
    and port order, preserves box names, per-box port order and labels.
    Brute force over same-name boxes."""
    ga, gb = port_graph(a), port_graph(b)
    if ga.top_ports != gb.top_ports or ga.bottom_ports != gb.bottom_ports:
        return False
    if len(ga.nodes) != len(gb.nodes) or len(ga.edges) != len(gb.edges):
        return False
    names_a = Counter(n.name for n in ga.nodes)
    names_b = Counter(n.name for n in gb.nodes)
    if names_a != names_b:
        return False

    groups_a: dict[str, list[str]] = {}
    groups_b: dict[str, list[str]] = {}
    for n in ga.nodes:
        groups_a.setdefault(n.name, []).append(n.node_id)
    for n in gb.nodes:
        groups_b.setdefault(n.name, []).append(n.node_id)
    names = sorted(groups_a)

    edge_set_b = {(e.src, e.src_port, e.dst, e.dst_port, e.label) for e in gb.edges}
    for combo in product(*(permutations(groups_b[name]) for name in names)):
        mapping = {TOP: TOP, BOTTOM: BOTTOM}
        for name, perm in zip(names, combo):
            mapping.update(zip(groups_a[name], perm))
        if all(
            (mapping[e.src], e.src_port, mapping[e.dst], e.dst_port, e.label) in edge_set_b
            for e in ga.edges
        ):
            return True
    return False
