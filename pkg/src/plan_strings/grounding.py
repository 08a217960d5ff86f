"""Instantiate action schemas into boxes with ground literal wires.

Wire order on every box follows schema declaration order: preconditions
left to right become input wires, effects left to right become output
wires.  The init and goal pseudo-boxes close a plan diagram at the top and
bottom: init produces the initial frontier from nothing, goal consumes the
final frontier entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import BoxCell
from .pddl import ActionSchema, DomainModel, GroundLiteral, Plan


class ArityMismatch(Exception):
    """Wrong number of arguments for a schema."""


@dataclass(frozen=True)
class GroundAction:
    """A plan step instantiated over concrete objects."""

    box: BoxCell
    schema_name: str
    args: tuple[str, ...]
    step_index: int


def ground_action(schema: ActionSchema, args: list[str] | tuple[str, ...], step_index: int) -> GroundAction:
    """Substitute *args* for the schema parameters, positionally."""
    args = tuple(args)
    if len(args) != len(schema.params):
        raise ArityMismatch(
            f"{schema.name} expects {len(schema.params)} arg"
            f"{'s' if len(schema.params) != 1 else ''}, got {len(args)}"
        )
    subst = dict(zip(schema.params, args))
    dom = tuple(
        GroundLiteral(t.negated, t.predicate, tuple(subst[a] for a in t.args))
        for t in schema.preconditions
    )
    cod = tuple(
        GroundLiteral(t.negated, t.predicate, tuple(subst[a] for a in t.args))
        for t in schema.effects
    )
    name = schema.name if not args else schema.name + " " + " ".join(args)
    return GroundAction(BoxCell(name, dom, cod, step_index), schema.name, args, step_index)


def ground_plan(domain: DomainModel, plan: Plan) -> tuple[GroundAction, ...]:
    """Ground every step of a parsed plan, numbering steps from 1."""
    out = []
    for k, step in enumerate(plan.steps, start=1):
        schema = domain.action(step.action_name)
        if schema is None:
            raise ArityMismatch(f"unknown action: {step.action_name}")
        out.append(ground_action(schema, step.args, k))
    return tuple(out)


def init_morphism(augmented_init: list[GroundLiteral] | tuple[GroundLiteral, ...]) -> BoxCell:
    """The top box: no inputs, one output wire per initial literal."""
    return BoxCell("init", (), tuple(augmented_init))


def goal_morphism(final_frontier: list[GroundLiteral] | tuple[GroundLiteral, ...]) -> BoxCell:
    """The bottom box: consumes the entire final frontier, no outputs."""
    return BoxCell("goal", tuple(final_frontier), ())
