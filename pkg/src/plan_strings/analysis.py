"""Read explanations out of a woven plan diagram.

Everything here is derived from the diagram plus its weave report; nothing
re-runs the planner's semantics.  Frontiers are compared as multisets when
that is what a question needs, but rows keep wire order so highlighted
positions stay meaningful.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .diagram import BoxCell, port_graph
from .pddl import GroundLiteral
from .weaver import GOAL, WovenPlan


@dataclass(frozen=True)
class TraceRow:
    """One boundary of the plan: which literal wires cross it, and which of
    them the surrounding structure requires (consumed by the next action,
    declared in the init, or demanded by the goal)."""

    boundary_name: str  # "Initial", "Step 3", "Goal"
    literals: tuple[GroundLiteral, ...]
    highlighted: tuple[int, ...]  # positions into literals
    action: str | None = None  # box name of the step about to run


@dataclass(frozen=True)
class DependencyEdge:
    producer: int | str  # 1-based step index or "init"
    consumer: int | str  # 1-based step index or "goal"
    literal: GroundLiteral


@dataclass(frozen=True)
class CompatReport:
    composable: bool
    missing: tuple[GroundLiteral, ...]  # demanded downstream, absent upstream
    surplus: tuple[GroundLiteral, ...]  # produced upstream, unused downstream


def trace(w: WovenPlan) -> list[TraceRow]:
    """Rows for every composition boundary: Initial (augmented init, with the
    declared literals highlighted), one row per step (frontier before the
    step, with the wires it consumes highlighted), and Goal (final frontier,
    with the declared goal literals highlighted)."""
    slices = w.diagram.slices
    n = len(w.step_slices)

    init_frontier = w.init_box.cod
    rows = [
        TraceRow("Initial", init_frontier, tuple(range(len(w.declared_init))))
    ]
    for k in sorted(w.step_slices):
        prev_idx = w.step_slices[k - 1] if k > 1 else 0
        boundary = slices[prev_idx].cod
        box = next(c for c in slices[w.step_slices[k]].cells if isinstance(c, BoxCell))
        rows.append(TraceRow(f"Step {k}", boundary, w.report.per_step_matches[k - 1], box.name))

    final_idx = w.step_slices[n] if n else 0
    final = slices[final_idx].cod
    bound: list[int] = []
    for lit in w.goal_literals:
        bound.append(next(i for i, f in enumerate(final) if f == lit and i not in bound))
    rows.append(TraceRow("Goal", final, tuple(bound)))
    return rows


def _endpoint(node_name: str, step_index: int | None) -> int | str:
    return step_index if step_index is not None else node_name


def dependencies(w: WovenPlan) -> list[DependencyEdge]:
    """One edge per wire of the plan's port graph: who produced each literal
    a step (or the goal) consumes. Ordered by producer, consumer, label."""
    g = port_graph(w.diagram)
    info = {n.node_id: (n.name, n.step_index) for n in g.nodes}
    n_steps = len(w.step_slices)

    def order_key(endpoint: int | str) -> int:
        if endpoint == "init":
            return 0
        if endpoint == GOAL:
            return n_steps + 1
        return endpoint

    edges = [
        DependencyEdge(_endpoint(*info[e.src]), _endpoint(*info[e.dst]), e.label)
        for e in g.edges
    ]
    edges.sort(key=lambda e: (order_key(e.producer), order_key(e.consumer), str(e.literal)))
    return edges


def _boundary(side: WovenPlan | Sequence[GroundLiteral], *, goal_side: bool) -> tuple[GroundLiteral, ...]:
    if isinstance(side, WovenPlan):
        return side.goal_box.dom if goal_side else side.init_box.cod
    return tuple(side)


def check_sequential_composable(
    first: WovenPlan | Sequence[GroundLiteral],
    second: WovenPlan | Sequence[GroundLiteral],
    strict: bool = False,
) -> CompatReport:
    """Could *second* run after *first*?  Compares first's final frontier
    against second's initial demand as multisets: missing = demand not
    supplied, surplus = supply not demanded.  Composable when nothing is
    missing; under *strict*, surplus also forbids composition."""
    supply = _boundary(first, goal_side=True)
    demand = _boundary(second, goal_side=False)

    available = Counter(supply)
    missing = []
    for lit in demand:
        if available[lit] > 0:
            available[lit] -= 1
        else:
            missing.append(lit)
    wanted = Counter(demand)
    surplus = []
    for lit in supply:
        if wanted[lit] > 0:
            wanted[lit] -= 1
        else:
            surplus.append(lit)

    composable = not missing and (not strict or not surplus)
    return CompatReport(composable, tuple(missing), tuple(surplus))
