"""
Checking whether plans run back to back, and saving diagrams
============================================================

A second plan can follow a first when everything the second needs at its
start is left over by the first.  The check subtracts multisets of wire
labels, so it also reports exactly what is missing or unused.
"""

from plan_strings import check_sequential_composable, from_json, to_json

from common import build

domain, problem, woven = build()

# running the tower-building plan twice in a row cannot work: the first run
# consumed the clear table tops it would need again
compat = check_sequential_composable(woven, woven)
print("composable:", compat.composable)
print("missing:", ", ".join(sorted(str(l) for l in set(compat.missing))))
print("surplus wires left over:", len(compat.surplus))

# strict mode additionally demands that nothing is left over
strict = check_sequential_composable(woven, woven, strict=True)
print("strict composable:", strict.composable)

# diagrams round-trip through JSON without loss; emitting twice gives the
# same bytes, so the files diff cleanly under version control
text = to_json(woven)
again = from_json(text)
assert again.diagram == woven.diagram
assert to_json(again) == text
print(f"\nserialized {len(woven.diagram.slices)} slices in {len(text)} bytes; round trip exact")
