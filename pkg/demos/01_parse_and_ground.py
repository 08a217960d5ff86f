"""
Parsing PDDL and grounding actions into boxes
=============================================

A domain file declares predicates and action schemas; a problem file fixes
objects, the initial state, and the goal.  Grounding an action substitutes
objects for parameters and yields a box: consumed literals on top, produced
literals on the bottom.
"""

from plan_strings import (
    Diagram,
    Slice,
    UnsupportedFeature,
    ground_action,
    parse_domain,
    parse_problem,
    to_linear,
)

from common import DOMAIN, PROBLEM

domain = parse_domain(DOMAIN)
print("domain:", domain.name)
print("predicates:", ", ".join(p.name for p in domain.predicates))
for action in domain.actions:
    print(f"  {action.name}({', '.join('?' + p for p in action.params)})"
          f"  needs {len(action.preconditions)}, yields {len(action.effects)}")

problem = parse_problem(PROBLEM, domain)
print("\nproblem:", problem.name)
print("init:", ", ".join(str(l) for l in problem.init))
print("goal:", ", ".join(str(l) for l in problem.goal))

# grounding: pick-up applied to block b becomes a box with three input wires
# and four output wires (the deletions come out as negated literals)
ga = ground_action(domain.action("pick-up"), ("b",), step_index=1)
print("\nground action:", ga.box.name)
print("  consumes:", ", ".join(str(l) for l in ga.box.dom))
print("  produces:", ", ".join(str(l) for l in ga.box.cod))

# the one-box diagram in linear notation shows the full signature
print("\n" + to_linear(Diagram((Slice((ga.box,)),))))

# only the STRIPS fragment is accepted; anything else is named in one error
try:
    parse_domain("(define (domain typed) (:predicates (p ?x - block))"
                 " (:action a :parameters (?x) :precondition (forall (?y) (p ?y)) :effect (p ?x)))")
except UnsupportedFeature as err:
    print("rejected:", err)
