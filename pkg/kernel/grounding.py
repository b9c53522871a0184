"""
Bounded grounding and brute-force stable models for tiny programs.
"""

import itertools
import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set

from .errors import GroundingLimitError, StableModelCapError
from .terms import Atom, Compound, Constant, Program, Rule, Term

logger = logging.getLogger(__name__)


def bounded_universe(program: Program, depth_cap: int, constants: Iterable[Constant] = ()) -> List[Term]:
    """Herbrand universe of the program truncated at term depth depth_cap."""
    base = {*program.constants, *constants}
    levels: List[List[Term]] = [sorted(base, key=str)]
    universe: List[Term] = list(levels[0])
    for depth in range(1, depth_cap + 1):
        level: List[Term] = []
        for symbol in program.functions:
            for args in itertools.product(universe, repeat=symbol.arity):
                if max(arg.depth for arg in args) == depth - 1:
                    level.append(Compound(symbol, tuple(args)))
        if not level:
            break
        levels.append(level)
        universe.extend(level)
    return universe


def ground_bounded(
    program: Program,
    depth_cap: int,
    constants: Iterable[Constant] = (),
    max_instances: int = 100_000,
) -> Program:
    """
    All ground instances over the truncated universe.

    Instances with a term deeper than depth_cap are dropped.

    Args:
        program: Program to ground
        depth_cap: Largest term depth in the universe and in the instances
        constants: Extra constants added to the program's own
        max_instances: Explosion guard

    Raises:
        GroundingLimitError: the number of candidate instances exceeds max_instances
    """
    universe = bounded_universe(program, depth_cap, constants)
    planned = sum(len(universe) ** len(rule.variables()) for rule in program.rules)
    if planned > max_instances:
        raise GroundingLimitError(f"grounding needs {planned} instances, cap is {max_instances}")

    ground_rules: List[Rule] = []
    for rule in program.rules:
        variables = rule.variables()
        for n, values in enumerate(itertools.product(universe, repeat=len(variables)), start=1):
            instance = rule.subst(dict(zip(variables, values)))
            if any(atom.depth > depth_cap for atom in instance.atoms()):
                continue
            ground_rules.append(instance.with_id(f"{rule.id}_{n}" if variables else rule.id))
    logger.debug("grounded %d rules into %d instances", len(program), len(ground_rules))
    return program.with_rules(ground_rules)


def _satisfies(rules: Sequence[Rule], interpretation: FrozenSet[Atom]) -> bool:
    for rule in rules:
        if all(a in interpretation for a in rule.pos_body) and not any(a in interpretation for a in rule.neg_body):
            if not any(a in interpretation for a in rule.head):
                return False
    return True


def reduct(ground: Program, interpretation: FrozenSet[Atom]) -> List[Rule]:
    """P^I: drop rules with a negative literal false in I, strip negation from the rest."""
    return [
        Rule(rule.head, rule.pos_body, (), id=rule.id)
        for rule in ground.rules
        if not any(a in interpretation for a in rule.neg_body)
    ]


def _models_within(rules: Sequence[Rule], allowed: Optional[FrozenSet[Atom]] = None) -> Set[FrozenSet[Atom]]:
    """
    Models reached by repairing violated rules one head atom at a time.

    Starting from the empty set, the first violated rule is repaired by
    adding one of its head atoms (only atoms in allowed, when given). Every
    minimal model of the positive rules, inside allowed, is among the results.
    """
    found: Set[FrozenSet[Atom]] = set()
    seen: Set[FrozenSet[Atom]] = set()
    stack: List[FrozenSet[Atom]] = [frozenset()]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        violated = next(
            (
                rule
                for rule in rules
                if all(a in current for a in rule.pos_body) and not any(a in current for a in rule.head)
            ),
            None,
        )
        if violated is None:
            found.add(current)
            continue
        for atom in violated.head:
            if allowed is None or atom in allowed:
                stack.append(current | {atom})
    return found


def minimal_models(rules: Sequence[Rule]) -> List[FrozenSet[Atom]]:
    """All minimal models of ground positive rules, disjunctive heads allowed."""
    rules = list(rules)
    if all(rule.is_normal for rule in rules):
        return [minimum_model(rules)]
    found = _models_within(rules)
    return [model for model in found if not any(other < model for other in found)]


def is_minimal_model(rules: Sequence[Rule], interpretation: FrozenSet[Atom]) -> bool:
    """True when I is a model of the positive rules and no proper subset is."""
    rules = list(rules)
    if not _satisfies(rules, interpretation):
        return False
    if all(rule.is_normal for rule in rules):
        return minimum_model(rules) == interpretation
    return _models_within(rules, interpretation) == {interpretation}


def enumerate_stable_models(ground: Program, atom_cap: int = 20) -> List[FrozenSet[Atom]]:
    """
    All stable models of a ground program.

    The reduct only depends on which negated atoms are true, so each guess
    over the negated atoms yields one positive program whose minimal models
    are the candidates; a candidate is stable when it agrees with the guess.

    Raises:
        StableModelCapError: the program has more than atom_cap ground atoms
    """
    atoms: Set[Atom] = {atom for rule in ground.rules for atom in rule.atoms()}
    if any(not atom.is_ground for atom in atoms):
        raise ValueError("stable model enumeration needs a ground program")
    if len(atoms) > atom_cap:
        raise StableModelCapError(f"{len(atoms)} ground atoms exceed the cap of {atom_cap}")

    negated = sorted({atom for rule in ground.rules for atom in rule.neg_body}, key=str)
    models: Set[FrozenSet[Atom]] = set()
    for size in range(len(negated) + 1):
        for chosen in itertools.combinations(negated, size):
            guess = frozenset(chosen)
            for candidate in minimal_models(reduct(ground, guess)):
                if guess == frozenset(atom for atom in negated if atom in candidate):
                    models.add(candidate)
    logger.debug("%d stable models over %d negated atoms", len(models), len(negated))
    return sorted(models, key=lambda model: (len(model), sorted(str(atom) for atom in model)))


def minimum_model(ground_rules: Iterable[Rule]) -> FrozenSet[Atom]:
    """Least model of ground standard positive rules, by naive iteration."""
    rules = list(ground_rules)
    model: Set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.head[0] not in model and all(a in model for a in rule.pos_body):
                model.add(rule.head[0])
                changed = True
    return frozenset(model)
