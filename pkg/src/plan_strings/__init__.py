"""Plans as wire diagrams.

Parse a STRIPS-subset PDDL domain, problem, and plan; weave the plan into a
string diagram whose wires are ground literals; then read explanations off
the diagram: which facts each step consumed, which initial facts the plan
silently relied on, and whether two plans can run back to back.
"""

from .analysis import (
    CompatReport,
    DependencyEdge,
    TraceRow,
    check_sequential_composable,
    dependencies,
    trace,
)
from .diagram import (
    TOP,
    BOTTOM,
    BoxCell,
    Cell,
    CompositionMismatch,
    Diagram,
    IdCell,
    NotAPermutation,
    PortEdge,
    PortGraph,
    PortNode,
    Slice,
    SwapCell,
    compose,
    equivalent,
    permutation_to_swaps,
    port_graph,
    tensor,
)
from .emit import SchemaError, from_json, to_dot, to_json, to_linear, trace_table
from .grounding import ArityMismatch, GroundAction, ground_action, ground_plan, goal_morphism, init_morphism
from .pddl import (
    ActionSchema,
    DomainModel,
    GroundLiteral,
    LiteralTemplate,
    PddlError,
    PddlSyntaxError,
    Plan,
    PlanStep,
    PredicateSchema,
    ProblemModel,
    SemanticError,
    UnsupportedFeature,
    format_domain,
    format_problem,
    parse_domain,
    parse_literal,
    parse_plan,
    parse_problem,
)
from .weaver import (
    GOAL,
    Assumption,
    RangeError,
    WeaveReport,
    WovenPlan,
    extract_subdiagram,
    replay_step_matches,
    weave,
)

__all__ = [
    "ActionSchema",
    "ArityMismatch",
    "Assumption",
    "BOTTOM",
    "BoxCell",
    "Cell",
    "CompatReport",
    "CompositionMismatch",
    "DependencyEdge",
    "Diagram",
    "DomainModel",
    "GOAL",
    "GroundAction",
    "GroundLiteral",
    "IdCell",
    "LiteralTemplate",
    "NotAPermutation",
    "PddlError",
    "PddlSyntaxError",
    "Plan",
    "PlanStep",
    "PortEdge",
    "PortGraph",
    "PortNode",
    "PredicateSchema",
    "ProblemModel",
    "RangeError",
    "SchemaError",
    "SemanticError",
    "Slice",
    "SwapCell",
    "TOP",
    "TraceRow",
    "UnsupportedFeature",
    "WeaveReport",
    "WovenPlan",
    "check_sequential_composable",
    "compose",
    "dependencies",
    "equivalent",
    "extract_subdiagram",
    "format_domain",
    "format_problem",
    "from_json",
    "goal_morphism",
    "ground_action",
    "ground_plan",
    "init_morphism",
    "parse_domain",
    "parse_literal",
    "parse_plan",
    "parse_problem",
    "permutation_to_swaps",
    "port_graph",
    "replay_step_matches",
    "tensor",
    "to_dot",
    "to_json",
    "to_linear",
    "trace",
    "trace_table",
    "weave",
]

__version__ = "0.1.0"
