"""Shared test utilities and independent oracles.

The oracles here deliberately avoid the library's diagram machinery: they
model a plan as multiset bookkeeping over literal tokens, so agreement with
the woven diagram is evidence rather than tautology.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from plan_strings import (
    BoxCell,
    Diagram,
    GroundLiteral,
    IdCell,
    Slice,
    SwapCell,
    parse_literal,
)


def lit(text: str) -> GroundLiteral:
    """Shortcut: lit("(clear a)") or lit("¬(clear a)")."""
    return parse_literal(text)


def lits(*texts: str) -> tuple[GroundLiteral, ...]:
    return tuple(parse_literal(t) for t in texts)


# --- linear-resource oracle -------------------------------------------------
#
# Replays a ground plan over a Counter of literal tokens.  Every precondition
# removes one token; a missing token is recorded as an assumption and injected
# (into the initial pool, since assumption wires run from the start).  Effects
# add tokens.  Goals remove tokens at the end.  Boundary rows are multisets,
# so the oracle can be compared against trace() rows independently of wire
# order.


@dataclass
class OracleRun:
    rows: list[Counter]                      # n+1 boundaries: initial pool, after each step
    assumptions: list[tuple[GroundLiteral, int | str]]
    final_pool: Counter                      # after goal removal: the surplus
    goal_missing: list[GroundLiteral] = field(default_factory=list)


def linear_oracle(init, steps, goal) -> OracleRun:
    """steps: list of (preconditions, effects) literal sequences, in order."""
    pool = Counter(init)
    assumptions: list[tuple[GroundLiteral, int | str]] = []
    rows = [Counter(pool)]
    for k, (pre, eff) in enumerate(steps, start=1):
        for p in pre:
            if pool[p] <= 0:
                assumptions.append((p, k))
                pool[p] += 1
            pool[p] -= 1
            if pool[p] == 0:
                del pool[p]
        for e in eff:
            pool[e] += 1
        rows.append(Counter(pool))
    goal_missing = []
    for g in goal:
        if pool[g] <= 0:
            assumptions.append((g, "goal"))
            pool[g] += 1
            goal_missing.append(g)
        pool[g] -= 1
        if pool[g] == 0:
            del pool[g]

    # an injected token extends the initial boundary and rides down to the
    # step that missed it, so it is visible only in rows above that step
    def visible_at(j: int) -> Counter:
        extra: Counter = Counter()
        for litv, at in assumptions:
            if at == "goal" or at > j:
                extra[litv] += 1
        return extra

    rows = [row + visible_at(j) for j, row in enumerate(rows)]
    final = Counter({k: v for k, v in pool.items() if v > 0})
    return OracleRun(rows=rows, assumptions=assumptions, final_pool=final, goal_missing=goal_missing)


# --- random solvable blocks-world instances ----------------------------------
#
# Forward simulation: start from all blocks on the table, apply random legal
# actions, take the goal as a sample of the reached state.  Every literal a
# step needs is genuinely produced earlier, so the woven diagram must report
# zero assumptions.

BLOCKS_DOMAIN = """
(define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))
"""


@dataclass
class RandomInstance:
    problem_text: str
    plan_lines: list[str]
    n_blocks: int


def random_blocks_instance(rng: random.Random, max_blocks: int = 6, max_steps: int = 12) -> RandomInstance:
    n = rng.randint(2, max_blocks)
    names = [f"b{i}" for i in range(1, n + 1)]
    ontable = set(names)
    on: dict[str, str] = {}          # x -> y meaning (on x y)
    clear = set(names)
    holding: str | None = None

    plan: list[str] = []
    for _ in range(rng.randint(1, max_steps)):
        moves: list[tuple[str, ...]] = []
        if holding is None:
            for x in sorted(clear & ontable):
                moves.append(("pick-up", x))
            for x in sorted(clear & set(on)):
                moves.append(("unstack", x, on[x]))
        else:
            moves.append(("put-down", holding))
            for y in sorted(clear):
                moves.append(("stack", holding, y))
        if not moves:
            break
        move = rng.choice(moves)
        name, args = move[0], move[1:]
        plan.append(" ".join(move))
        if name == "pick-up":
            (x,) = args
            ontable.discard(x)
            clear.discard(x)
            holding = x
        elif name == "put-down":
            (x,) = args
            holding = None
            ontable.add(x)
            clear.add(x)
        elif name == "stack":
            x, y = args
            holding = None
            clear.discard(y)
            clear.add(x)
            on[x] = y
        else:
            x, y = args
            del on[x]
            clear.discard(x)
            clear.add(y)
            holding = x

    state = [f"(ontable {x})" for x in sorted(ontable)]
    state += [f"(on {x} {y})" for x, y in sorted(on.items())]
    state += [f"(clear {x})" for x in sorted(clear)]
    state += [f"(holding {holding})"] if holding is not None else ["(handempty)"]
    goal = rng.sample(state, rng.randint(1, min(3, len(state))))

    init = [f"(ontable {x})" for x in names] + [f"(clear {x})" for x in names] + ["(handempty)"]
    problem = (
        "(define (problem rand)\n  (:domain blocks)\n"
        f"  (:objects {' '.join(names)})\n"
        f"  (:init {' '.join(init)})\n"
        f"  (:goal (and {' '.join(goal)})))\n"
    )
    return RandomInstance(problem_text=problem, plan_lines=plan, n_blocks=n)


# --- diagram surgery ---------------------------------------------------------


def insert_inverse_swap_pair(diagram: Diagram, boundary_index: int, wire_index: int) -> Diagram:
    """Insert swap(i, i+1) twice at a slice boundary: a semantic no-op."""
    boundary = diagram.slices[boundary_index - 1].cod if boundary_index else diagram.dom
    if not 0 <= wire_index < len(boundary) - 1:
        raise ValueError("wire_index out of range for that boundary")
    cells = []
    for j, label in enumerate(boundary):
        if j == wire_index:
            cells.append(SwapCell(left=label, right=boundary[j + 1]))
        elif j == wire_index + 1:
            continue
        else:
            cells.append(IdCell(label=label))
    crossed = Slice(tuple(cells))
    uncross_cells = []
    for j, label in enumerate(crossed.cod):
        if j == wire_index:
            uncross_cells.append(SwapCell(left=label, right=crossed.cod[j + 1]))
        elif j == wire_index + 1:
            continue
        else:
            uncross_cells.append(IdCell(label=label))
    uncrossed = Slice(tuple(uncross_cells))
    new_slices = diagram.slices[:boundary_index] + (crossed, uncrossed) + diagram.slices[boundary_index:]
    return Diagram(new_slices)


# --- linear notation reader (test-only) ---------------------------------------
#
# Parses the output of to_linear back into a Diagram so emitter tests can
# assert a structural round trip.  step_index is not encoded in the notation,
# so comparisons should strip it first.


def strip_steps(diagram: Diagram) -> Diagram:
    slices = []
    for s in diagram.slices:
        cells = []
        for c in s.cells:
            if isinstance(c, BoxCell):
                cells.append(BoxCell(name=c.name, dom=c.dom, cod=c.cod))
            else:
                cells.append(c)
        slices.append(Slice(tuple(cells)))
    return Diagram(tuple(slices))


def _split_tensor(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if depth == 0 and body.startswith(" ⊗ ", i):
            parts.append("".join(cur))
            cur = []
            i += 3
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return [p for p in parts if p]


def _read_boundary(text: str) -> tuple[GroundLiteral, ...]:
    text = text.strip()
    if text == "I":
        return ()
    return tuple(lit(p.strip()) for p in _split_tensor(text))


def read_linear(text: str) -> Diagram:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    slices = []
    for ln in lines:
        ln = ln.strip()
        if ln.endswith(" ∘"):
            ln = ln[: -len(" ∘")]
        assert ln.startswith("(") and ln.endswith(")"), ln
        body = ln[1:-1]
        if body == "I":
            slices.append(Slice(()))
            continue
        cells = []
        for part in _split_tensor(body):
            part = part.strip()
            if part.startswith("id_{"):
                cells.append(IdCell(label=lit(part[len("id_{"):-1])))
            elif part.startswith("B_{"):
                left, right = part[len("B_{"):-1].split("),", 1)
                cells.append(SwapCell(left=lit(left + ")"), right=lit(right.lstrip())))
            else:
                name, rest = part.split("{", 1)
                dom_text, cod_text = rest[:-1].split(" → ")
                cells.append(BoxCell(name=name, dom=_read_boundary(dom_text), cod=_read_boundary(cod_text)))
        slices.append(Slice(tuple(cells)))
    return Diagram(tuple(slices))
