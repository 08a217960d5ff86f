"""
Dependency edges and Graphviz output
====================================

Each wire in the woven diagram runs from the step that produced a literal to
the step that consumed it, so the diagram doubles as a dependency graph.
The DOT emitter draws the boxes and labels every wire; pipe it to
``dot -Tsvg`` to render.
"""

from plan_strings import dependencies, to_dot, to_linear

from common import build

domain, problem, woven = build()

# which earlier step does each action lean on?
for edge in dependencies(woven):
    producer = edge.producer if isinstance(edge.producer, str) else f"step {edge.producer}"
    consumer = edge.consumer if isinstance(edge.consumer, str) else f"step {edge.consumer}"
    print(f"{producer:7} -> {consumer:7}  {edge.literal}")

# (clear c) and (ontable c) sit unused until the second pick-up touches them;
# the init -> step 3 edges above show exactly that

print()
print(to_dot(woven.diagram, woven.report))

# the same diagram in one-line-per-slice linear notation (first 6 slices)
print("\n".join(to_linear(woven.diagram).splitlines()[:7]))
