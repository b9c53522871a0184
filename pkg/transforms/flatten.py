"""
Flattening of standard rules.

A rule is rewritten into a chain of rules over fresh predicates b1, b2, ...
so that no term is nested deeper than one level and no variable occurs in
complex terms on both sides of a rule. The chain is built in three steps:

  1. while the head is nested too deep, lift its second-level complex
     subterms into the body of a fresh predicate;
  2. if the head still has complex terms and the body is deep or shares
     variables with them, move the whole body behind a fresh predicate;
  3. while the body is nested too deep, lift its second-level complex
     subterms into the head of a fresh predicate.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from kernel import Atom, Compound, PredicateSymbol, Program, Rule, Term, Variable
from kernel.errors import NotStandardError
from kernel.terms import fresh_variable_names
from kernel.validation import is_flat

logger = logging.getLogger(__name__)


class PredicateNamer:
    """Mints b1, b2, ... skipping names already taken."""

    def __init__(self, taken: Set[str], prefix: str = "b"):
        self.taken = set(taken)
        self.prefix = prefix
        self.counter = 0

    def __call__(self, arity: int) -> PredicateSymbol:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return PredicateSymbol(name, arity)


def _lift(atoms: Tuple[Atom, ...], fresh: Iterator[str]) -> Tuple[Tuple[Atom, ...], Dict[Variable, Term]]:
    """Replace every complex argument of a complex top-level term by a fresh variable."""
    lifted: Dict[Variable, Term] = {}
    result = []
    for atom in atoms:
        args = []
        for term in atom.args:
            if isinstance(term, Compound) and term.depth > 1:
                inner = []
                for sub in term.args:
                    if isinstance(sub, Compound):
                        var = Variable(next(fresh))
                        lifted[var] = sub
                        inner.append(var)
                    else:
                        inner.append(sub)
                term = Compound(term.symbol, tuple(inner))
            args.append(term)
        result.append(Atom(atom.predicate, tuple(args)))
    return tuple(result), lifted


def _variables(atoms: Tuple[Atom, ...]) -> Tuple[Variable, ...]:
    seen: Dict[Variable, None] = {}
    for atom in atoms:
        for var in atom.variables():
            seen.setdefault(var, None)
    return tuple(seen)


def _depth(atoms: Tuple[Atom, ...]) -> int:
    return max((atom.depth for atom in atoms), default=0)


def _complex_variables(atoms: Tuple[Atom, ...]) -> Set[Variable]:
    return {var for atom in atoms for term in atom.args if isinstance(term, Compound) for var in term.variables()}


def _call(predicate: PredicateSymbol, variables: Tuple[Variable, ...], lifted: Dict[Variable, Term]) -> Atom:
    return Atom(predicate, tuple(lifted.get(var, var) for var in variables))


def flatten_rule(rule: Rule, namer: Optional[PredicateNamer] = None) -> List[Rule]:
    """
    Rewrite a standard rule into an equivalent list of flat rules.

    Args:
        rule: Standard rule
        namer: Source of fresh predicate names; defaults to one scoped to the rule

    Returns:
        [rule] when it is already flat, otherwise the flat chain in top-down order

    Raises:
        NotStandardError: the rule is disjunctive or has negation
    """
    if not rule.is_standard:
        raise NotStandardError(f"cannot flatten non-standard rule '{rule}'")
    if is_flat(Program((rule,))):
        return [rule]
    if namer is None:
        namer = PredicateNamer({atom.predicate.name for atom in rule.atoms()})
    fresh = fresh_variable_names(var.name for var in rule.variables())

    emitted: List[Rule] = []
    head, body = rule.head[0], rule.pos_body

    while head.depth > 1:
        (shallow,), lifted = _lift((head,), fresh)
        params = shallow.variables()
        predicate = namer(len(params))
        emitted.append(Rule((shallow,), (Atom(predicate, params),)))
        head = _call(predicate, params, lifted)

    has_complex = any(isinstance(term, Compound) for term in head.args)
    if has_complex and (_depth(body) > 1 or _complex_variables((head,)) & _complex_variables(body)):
        params = head.variables()
        predicate = namer(len(params))
        emitted.append(Rule((head,), (Atom(predicate, params),)))
        head = Atom(predicate, params)

    definitions: List[Rule] = []
    while _depth(body) > 1:
        shallow, lifted = _lift(body, fresh)
        params = _variables(shallow)
        predicate = namer(len(params))
        definitions.append(Rule((Atom(predicate, params),), shallow))
        body = (_call(predicate, params, lifted),)

    emitted.append(Rule((head,), body))
    emitted.extend(reversed(definitions))
    logger.debug("flattened %s into %d rules", rule.id or str(rule), len(emitted))
    return emitted


@dataclass
class FlattenResult:
    """
    A flattened program and where each of its rules came from.

    Attributes:
        program: The flat program
        source: Flattened rule id -> id of the rule it was derived from
    """

    program: Program
    source: Dict[str, str] = field(default_factory=dict)

    @property
    def changed(self) -> bool:
        return any(new != old for new, old in self.source.items())


def flatten_program(program: Program) -> FlattenResult:
    """
    Flatten every rule of a standard program.

    Fresh predicates are numbered program-wide. Rules that are already flat
    keep their id; a split rule r3 becomes r3_1, r3_2, ...

    Raises:
        NotStandardError: some rule is disjunctive or has negation
    """
    namer = PredicateNamer({pred.name for pred in program.predicates})
    rules: List[Rule] = []
    source: Dict[str, str] = {}
    for rule in program.rules:
        pieces = flatten_rule(rule, namer)
        if len(pieces) == 1 and pieces[0] is rule:
            rules.append(rule)
            source[rule.id] = rule.id
            continue
        for n, piece in enumerate(pieces, start=1):
            new_id = f"{rule.id}_{n}"
            rules.append(piece.with_id(new_id))
            source[new_id] = rule.id
    return FlattenResult(program.with_rules(rules), source)
