"""Thread a ground action sequence into one connected wire diagram.

Wires are consumed linearly: a box eats its input wires, and a literal that
two steps both need is two wires, not one.  Persistence of facts across
steps is deliberately not modeled; where a plan leans on it, the weaver
records an implicit assumption instead of failing.  Weaving is total.

The construction:

1. Demand pass, bottom up.  Start from the goal literals and walk the plan
   backwards, at each step removing what the step produces (leftmost match)
   and merging in what it consumes.  Merging is a max-union: a need for a
   literal already on the demand list folds into the existing entry (its
   first-demanded tag moves to the earlier step) rather than adding a second
   wire.  Whatever demand the declared init cannot cover becomes the first
   batch of implicit assumptions, appended to the init in discovery order.
2. Forward pass.  Walk the plan forwards binding each precondition to the
   leftmost unbound frontier wire with that label.  A miss (possible exactly
   when max-union folded two consumers of one literal, or the goal wants a
   literal back after it was consumed) appends a fresh assumption wire to
   the augmented init and threads it down the right edge of every slice
   built so far.
3. Braids.  Before each action box, adjacent swaps gather its bound wires
   into a contiguous block at the leftmost bound position, in precondition
   order; the box slice is the block flanked by identities.
4. Closure.  The init box produces the augmented init; final braids pull
   goal literals to the left in declaration order; the goal box consumes the
   whole final frontier.  Leftover wires are the surplus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import BoxCell, Diagram, IdCell, Slice, permutation_to_swaps
from .grounding import GroundAction, goal_morphism, init_morphism
from .pddl import GroundLiteral, ProblemModel

GOAL = "goal"  # first_demanded_at value for goal-side assumptions


class RangeError(Exception):
    """Step range outside the woven plan."""


@dataclass(frozen=True)
class Assumption:
    literal: GroundLiteral
    first_demanded_at: int | str  # 1-based step index, or GOAL


@dataclass(frozen=True)
class WeaveReport:
    implicit_assumptions: tuple[Assumption, ...]
    surplus_outputs: tuple[GroundLiteral, ...]  # final frontier minus goal, frontier order
    per_step_matches: tuple[tuple[int, ...], ...]  # frontier positions bound by each step


@dataclass(frozen=True)
class WovenPlan:
    diagram: Diagram
    report: WeaveReport
    step_slices: dict[int, int]  # step index -> index of its box slice
    domain_name: str
    problem_name: str

    @property
    def init_box(self) -> BoxCell:
        return self.diagram.slices[0].cells[0]

    @property
    def goal_box(self) -> BoxCell:
        return self.diagram.slices[-1].cells[0]

    @property
    def goal_literals(self) -> tuple[GroundLiteral, ...]:
        """Declared goal, recovered from the goal braid: goal wires sit
        leftmost on the goal box, surplus to their right."""
        dom = self.goal_box.dom
        return dom[: len(dom) - len(self.report.surplus_outputs)]

    @property
    def declared_init(self) -> tuple[GroundLiteral, ...]:
        """Problem-file init: the augmented init minus the appended assumptions."""
        cod = self.init_box.cod
        return cod[: len(cod) - len(self.report.implicit_assumptions)]


def weave(problem: ProblemModel, actions: Sequence[GroundAction]) -> WovenPlan:
    """Build the connected diagram for *actions* over *problem*. Total:
    plan defects surface in the report, never as errors."""
    acts = list(actions)
    if [a.step_index for a in acts] != list(range(1, len(acts) + 1)):
        raise ValueError("actions must be numbered 1..n in plan order")

    # -- demand pass (bottom up); entries are [literal, first_demanded_at] --
    demand: list[list] = [[g, GOAL] for g in problem.goal]
    for act in reversed(acts):
        for lit in act.box.cod:
            for i, (dlit, _) in enumerate(demand):
                if dlit == lit:
                    del demand[i]
                    break
        touched: set[int] = set()
        for lit in act.box.dom:
            idx = next(
                (i for i, (dlit, _) in enumerate(demand) if dlit == lit and i not in touched),
                None,
            )
            if idx is None:
                demand.append([lit, act.step_index])
                touched.add(len(demand) - 1)
            else:
                demand[idx][1] = act.step_index  # earlier step now demands it first
                touched.add(idx)

    remaining = list(demand)
    for lit in problem.init:
        for i, (dlit, _) in enumerate(remaining):
            if dlit == lit:
                del remaining[i]
                break

    assumptions: list[Assumption] = [Assumption(lit, at) for lit, at in remaining]
    augmented = list(problem.init) + [a.literal for a in assumptions]

    # -- forward build --
    slices: list[Slice] = [Slice((init_morphism(augmented),))]
    frontier: list[GroundLiteral] = list(augmented)

    def append_assumption(lit: GroundLiteral, demanded_at: int | str) -> None:
        # widen the init box and thread an identity wire down the right edge
        augmented.append(lit)
        assumptions.append(Assumption(lit, demanded_at))
        slices[0] = Slice((init_morphism(augmented),))
        for i in range(1, len(slices)):
            slices[i] = Slice(slices[i].cells + (IdCell(lit),))
        frontier.append(lit)

    def bind(labels: tuple[GroundLiteral, ...], demanded_at_of) -> list[int]:
        bound: list[int] = []
        for lit in labels:
            idx = next(
                (i for i, f in enumerate(frontier) if f == lit and i not in bound),
                None,
            )
            if idx is None:
                append_assumption(lit, demanded_at_of)
                idx = len(frontier) - 1
            bound.append(idx)
        return bound

    step_slices: dict[int, int] = {}
    matches: list[tuple[int, ...]] = []
    for act in acts:
        bound = bind(act.box.dom, act.step_index)
        matches.append(tuple(bound))
        block_at = min(bound) if bound else len(frontier)
        bound_set = set(bound)
        rest = [lab for i, lab in enumerate(frontier) if i not in bound_set]
        target = rest[:block_at] + [frontier[i] for i in bound] + rest[block_at:]
        slices.extend(permutation_to_swaps(frontier, target))
        frontier[:] = target
        left = frontier[:block_at]
        right = frontier[block_at + len(bound):]
        slices.append(Slice(tuple([IdCell(l) for l in left] + [act.box] + [IdCell(l) for l in right])))
        step_slices[act.step_index] = len(slices) - 1
        frontier[:] = left + list(act.box.cod) + right

    # -- goal braid and closure --
    bound = bind(problem.goal, GOAL)
    bound_set = set(bound)
    surplus = tuple(lab for i, lab in enumerate(frontier) if i not in bound_set)
    target = [frontier[i] for i in bound] + list(surplus)
    slices.extend(permutation_to_swaps(frontier, target))
    frontier[:] = target
    slices.append(Slice((goal_morphism(frontier),)))

    # a single construction validates every boundary; composing slice by
    # slice would re-validate the whole prefix each time
    diagram = Diagram(tuple(slices))

    report = WeaveReport(tuple(assumptions), surplus, tuple(matches))
    return WovenPlan(diagram, report, step_slices, problem.domain_name, problem.name)


def replay_step_matches(diagram: Diagram, step_slices: dict[int, int]) -> tuple[tuple[int, ...], ...]:
    """Recompute which frontier positions each step consumed, by replaying
    leftmost binding over the stored diagram. Equal to the weave-time record."""
    matches = []
    for k in sorted(step_slices):
        slice_idx = step_slices[k]
        prev_idx = step_slices[k - 1] if k > 1 else 0
        boundary = diagram.slices[prev_idx].cod
        box = next(c for c in diagram.slices[slice_idx].cells if isinstance(c, BoxCell))
        bound: list[int] = []
        for lit in box.dom:
            idx = next(i for i, f in enumerate(boundary) if f == lit and i not in bound)
            bound.append(idx)
        matches.append(tuple(bound))
    return tuple(matches)


def extract_subdiagram(w: WovenPlan, from_step: int, to_step: int) -> Diagram:
    """The slices from just before *from_step*'s braids through *to_step*'s
    box slice; dom/cod are the frontiers at those boundaries."""
    n = len(w.step_slices)
    if not (1 <= from_step <= to_step <= n):
        raise RangeError(f"step range {from_step}..{to_step} outside plan of {n} steps")
    prev_idx = w.step_slices[from_step - 1] if from_step > 1 else 0
    end_idx = w.step_slices[to_step]
    return Diagram(w.diagram.slices[prev_idx + 1: end_idx + 1])
