"""Shared inputs for the demo scripts: a three-block tower problem."""

from plan_strings import ground_plan, parse_domain, parse_plan, parse_problem, weave

DOMAIN = """
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

PROBLEM = """
(define (problem blocks-3-0)
  (:domain blocks)
  (:objects a b c)
  (:init (clear c) (clear a) (clear b)
         (ontable c) (ontable a) (ontable b)
         (handempty))
  (:goal (and (on c b) (on b a))))
"""

PLAN = """
(pick-up b)
(stack b a)
(pick-up c)
(stack c b)
"""


def build(problem_text=PROBLEM):
    domain = parse_domain(DOMAIN)
    problem = parse_problem(problem_text, domain)
    plan = parse_plan(PLAN, domain, problem)
    return domain, problem, weave(problem, ground_plan(domain, plan))
