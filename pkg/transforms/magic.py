"""
Magic-set rewriting of positive standard programs for a single goal.

Derived predicates are adorned with b/f strings; a goal position is bound
when its term is ground, a body position is bound when every variable of
its term is already bound. Bindings pass left to right through the body.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Set, Tuple

from kernel import Atom, PredicateSymbol, Program, Rule, Variable
from kernel.errors import NotStandardError
from kernel.terms import fresh_name, number_rules
from kernel.validation import classify_predicates

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Query:
    """A goal atom posed against a program."""

    goal: Atom
    program: Program

    def __post_init__(self):
        if self.goal.predicate not in self.program.predicates:
            raise ValueError(f"goal predicate {self.goal.predicate} does not occur in the program")


def adornment(atom: Atom, bound: Set[Variable]) -> str:
    """b for each argument whose variables are all bound (ground terms included), f otherwise."""
    return "".join("b" if all(var in bound for var in term.variables()) else "f" for term in atom.args)


def _bound_args(atom: Atom, pattern: str) -> Tuple:
    return tuple(term for term, mark in zip(atom.args, pattern) if mark == "b")


@dataclass
class MagicResult:
    """
    Attributes:
        goal: The adorned goal atom
        program: Seed fact, magic rules, modified rules, then the rules of base predicates
        adornments: Adorned predicates generated, in discovery order
    """

    goal: Atom
    program: Program
    adornments: List[Tuple[PredicateSymbol, str]] = field(default_factory=list)
    originals: Dict[PredicateSymbol, PredicateSymbol] = field(default_factory=dict)

    def answers(self, model) -> FrozenSet[Atom]:
        """Atoms of a model of the rewritten program for the goal predicate, under its original name."""
        original = self.originals[self.goal.predicate]
        return frozenset(atom.rename_predicate(original) for atom in model if atom.predicate == self.goal.predicate)


class _Names:
    def __init__(self, program: Program):
        self.taken = {pred.name for pred in program.predicates}
        self.cache: Dict[Tuple[str, PredicateSymbol, str], PredicateSymbol] = {}

    def get(self, kind: str, predicate: PredicateSymbol, pattern: str) -> PredicateSymbol:
        key = (kind, predicate, pattern)
        if key not in self.cache:
            suffix = f"_{pattern}" if pattern else ""
            base = f"{predicate.name}{suffix}" if kind == "adorned" else f"magic_{predicate.name}{suffix}"
            name = fresh_name(base, self.taken)
            self.taken.add(name)
            arity = predicate.arity if kind == "adorned" else pattern.count("b")
            self.cache[key] = PredicateSymbol(name, arity)
        return self.cache[key]


def magic_rewrite(query: Query) -> MagicResult:
    """
    Rewrite a query so that bottom-up evaluation only derives facts relevant to the goal.

    Args:
        query: Goal and positive standard program

    Returns:
        MagicResult whose goal is the adorned goal atom

    Raises:
        NotStandardError: the program is disjunctive or has negation
    """
    program = query.program
    if not program.is_standard:
        raise NotStandardError("magic-set rewriting needs a positive standard program")
    derived = classify_predicates(program).derived
    names = _Names(program)

    goal = query.goal
    goal_pattern = "".join("b" if term.is_ground else "f" for term in goal.args)
    if goal.predicate not in derived:
        # nothing to adorn; the goal is answered from the facts directly
        return MagicResult(goal, program, [], {goal.predicate: goal.predicate})

    seed_predicate = names.get("magic", goal.predicate, goal_pattern)
    seed = Rule((Atom(seed_predicate, _bound_args(goal, goal_pattern)),))
    magic_rules: List[Rule] = []
    modified: List[Rule] = []
    pending = [(goal.predicate, goal_pattern)]
    done: Set[Tuple[PredicateSymbol, str]] = set()
    order: List[Tuple[PredicateSymbol, str]] = []

    while pending:
        predicate, pattern = pending.pop(0)
        if (predicate, pattern) in done:
            continue
        done.add((predicate, pattern))
        order.append((predicate, pattern))
        for rule in program.rules_defining(predicate):
            head = rule.head[0]
            magic_head = Atom(names.get("magic", predicate, pattern), _bound_args(head, pattern))
            bound: Set[Variable] = {
                var for term, mark in zip(head.args, pattern) if mark == "b" for var in term.variables()
            }
            body: List[Atom] = [magic_head]
            for atom in rule.pos_body:
                if atom.predicate in derived:
                    sub_pattern = adornment(atom, bound)
                    magic_rules.append(
                        Rule(
                            (Atom(names.get("magic", atom.predicate, sub_pattern), _bound_args(atom, sub_pattern)),),
                            tuple(body),
                        )
                    )
                    body.append(atom.rename_predicate(names.get("adorned", atom.predicate, sub_pattern)))
                    if (atom.predicate, sub_pattern) not in done:
                        pending.append((atom.predicate, sub_pattern))
                else:
                    body.append(atom)
                bound.update(atom.variables())
            modified.append(Rule((head.rename_predicate(names.get("adorned", predicate, pattern)),), tuple(body)))

    originals = {names.get("adorned", pred, pattern): pred for pred, pattern in order}
    base_rules = [rule for rule in program.rules if rule.head[0].predicate not in derived]
    rewritten = Program(number_rules([seed, *magic_rules, *modified, *base_rules]))
    adorned_goal = goal.rename_predicate(names.get("adorned", goal.predicate, goal_pattern))
    logger.debug("magic rewrite of %s: %d adorned predicates, %d rules", goal, len(order), len(rewritten))
    return MagicResult(adorned_goal, rewritten, order, originals)
