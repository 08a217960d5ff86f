"""
Weaving a plan and reading the step-by-step trace
=================================================

Weaving chains the ground actions vertically, inserting identity wires for
untouched literals and swaps to route each action's inputs together.  Every
precondition consumes its wire; every effect starts a new one.  The trace
lists the live literals at each boundary, marking the ones each step used.
"""

from plan_strings import trace, trace_table

from common import PROBLEM, build

domain, problem, woven = build()

print(trace_table(trace(woven), "markdown"))

# no unbolded literal appears in the Initial row, so the plan relied only on
# facts the problem actually declared
report = woven.report
print("implicit assumptions:", len(report.implicit_assumptions))

# drop (handempty) from the problem and the same plan now leans on a fact
# nobody declared; the weaver adds the wire and names it
mutilated = PROBLEM.replace(" (handempty)", "")
domain, problem, woven = build(mutilated)
for a in woven.report.implicit_assumptions:
    print(f"assumed: {a.literal} first demanded at step {a.first_demanded_at}")

# the assumption wire is appended after the declared literals, so the
# Initial row now ends with the silently-required fact
rows = trace(woven)
print("initial boundary:", ", ".join(str(l) for l in rows[0].literals))
print("declared part:   ", ", ".join(str(l) for l in woven.declared_init))
