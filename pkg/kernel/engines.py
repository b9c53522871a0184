"""
Bottom-up evaluation engines for standard programs.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Union

from .config import Fuel
from .errors import NotStandardError, UnsafeRuleError
from .terms import ArgumentId, Atom, PredicateSymbol, Program, Rule, Term, Variable
from .unify import match

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Converged:
    """A fixpoint was reached within fuel."""

    model: FrozenSet[Atom]
    iterations: int

    @property
    def converged(self) -> bool:
        return True


@dataclass(frozen=True)
class Exhausted:
    """Fuel ran out; bound names the limit that tripped."""

    partial: FrozenSet[Atom]
    bound: str
    iterations: int

    @property
    def converged(self) -> bool:
        return False


EvalOutcome = Union[Converged, Exhausted]


class FactIndex:
    """Ground atoms grouped by predicate."""

    def __init__(self, atoms: Iterable[Atom] = ()):
        self._by_predicate: Dict[PredicateSymbol, Set[Atom]] = {}
        self._size = 0
        for atom in atoms:
            self.add(atom)

    def add(self, atom: Atom) -> bool:
        bucket = self._by_predicate.setdefault(atom.predicate, set())
        if atom in bucket:
            return False
        bucket.add(atom)
        self._size += 1
        return True

    def candidates(self, predicate: PredicateSymbol) -> Set[Atom]:
        return self._by_predicate.get(predicate, set())

    def has(self, predicate: PredicateSymbol) -> bool:
        return bool(self._by_predicate.get(predicate))

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._by_predicate.get(atom.predicate, ())

    def __len__(self) -> int:
        return self._size

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset(a for bucket in self._by_predicate.values() for a in bucket)


def _solve(
    body: List[Atom],
    position: int,
    bindings: Dict[Variable, Term],
    full: FactIndex,
    delta: Optional[FactIndex] = None,
    delta_position: int = -1,
) -> Iterator[Dict[Variable, Term]]:
    """Enumerate bindings satisfying body[position:], left to right."""
    if position == len(body):
        yield bindings
        return
    pattern = body[position]
    store = delta if position == delta_position else full
    for candidate in list(store.candidates(pattern.predicate)):
        extended = match(pattern, candidate, bindings)
        if extended is not None:
            yield from _solve(body, position + 1, extended, full, delta, delta_position)


def body_solutions(body: Iterable[Atom], interpretation: Iterable[Atom]) -> Iterator[Dict[Variable, Term]]:
    """Bindings under which every atom of body is in the interpretation."""
    index = interpretation if isinstance(interpretation, FactIndex) else FactIndex(interpretation)
    yield from _solve(list(body), 0, {}, index)


def _check_evaluable(program: Program) -> None:
    for rule in program.rules:
        if not rule.is_standard:
            raise NotStandardError(f"rule {rule.id} '{rule}' is not standard; apply st() first")
        if rule.unbound_variables():
            raise UnsafeRuleError(f"rule {rule.id} '{rule}' is not range restricted")


def immediate_consequence(program: Program, interpretation: Iterable[Atom]) -> FrozenSet[Atom]:
    """
    Heads of all rule instances whose body holds in the interpretation.

    Raises:
        NotStandardError: the program has disjunctive heads or negation
    """
    _check_evaluable(program)
    index = FactIndex(interpretation)
    derived = set()
    for rule in program.rules:
        for bindings in _solve(list(rule.pos_body), 0, {}, index):
            derived.add(rule.head[0].subst(bindings))
    return frozenset(derived)


class EvalEngine(ABC):
    """Abstract base class for bottom-up evaluators."""

    @abstractmethod
    def evaluate(self, program: Program, database: Iterable[Atom] = (), fuel: Optional[Fuel] = None) -> EvalOutcome:
        """Compute the minimum model of program ∪ database within fuel."""
        pass

    @staticmethod
    def _violated(atoms: Iterable[Atom], total: int, iterations: int, fuel: Fuel) -> Optional[str]:
        if iterations > fuel.max_iterations:
            return "max_iterations"
        if total > fuel.max_atoms:
            return "max_atoms"
        if any(atom.depth > fuel.max_term_depth for atom in atoms):
            return "max_term_depth"
        return None


class NaiveEngine(EvalEngine):
    """I_{n+1} = T(I_n) from the empty interpretation."""

    def evaluate(self, program: Program, database: Iterable[Atom] = (), fuel: Optional[Fuel] = None) -> EvalOutcome:
        fuel = fuel or Fuel()
        _check_evaluable(program)
        extended = program.with_rules((*program.rules, *(Rule((atom,)) for atom in database)))
        current: FrozenSet[Atom] = frozenset()
        iterations = 0
        while True:
            iterations += 1
            following = immediate_consequence(extended, current)
            bound = self._violated(following - current, len(following), iterations, fuel)
            if bound:
                logger.info("naive evaluation exhausted %s after %d iterations", bound, iterations)
                return Exhausted(following, bound, iterations)
            if following == current:
                return Converged(current, iterations)
            current = following


class SemiNaiveEngine(EvalEngine):
    """Each round joins one body position against the last delta and the rest against everything."""

    def evaluate(self, program: Program, database: Iterable[Atom] = (), fuel: Optional[Fuel] = None) -> EvalOutcome:
        fuel = fuel or Fuel()
        _check_evaluable(program)
        full = FactIndex()
        delta = FactIndex()
        for atom in database:
            if full.add(atom):
                delta.add(atom)
        for rule in program.rules:
            if not rule.pos_body and full.add(rule.head[0]):
                delta.add(rule.head[0])
        recursive = [rule for rule in program.rules if rule.pos_body]

        iterations = 1
        bound = self._violated(delta.atoms(), len(full), iterations, fuel)
        if bound:
            return Exhausted(full.atoms(), bound, iterations)

        while len(delta):
            iterations += 1
            new_delta = FactIndex()
            for rule in recursive:
                body = list(rule.pos_body)
                for position, atom in enumerate(body):
                    if not delta.has(atom.predicate):
                        continue
                    for bindings in _solve(body, 0, {}, full, delta, position):
                        head = rule.head[0].subst(bindings)
                        if head not in full:
                            new_delta.add(head)
            for atom in new_delta.atoms():
                full.add(atom)
            bound = self._violated(new_delta.atoms(), len(full), iterations, fuel)
            if bound:
                logger.info("semi-naive evaluation exhausted %s after %d iterations", bound, iterations)
                return Exhausted(full.atoms(), bound, iterations)
            logger.debug("round %d: %d new atoms, %d total", iterations, len(new_delta), len(full))
            delta = new_delta
        return Converged(full.atoms(), iterations)


def bottom_up_eval(
    program: Program,
    database: Iterable[Atom] = (),
    fuel: Optional[Fuel] = None,
    engine: Optional[EvalEngine] = None,
) -> EvalOutcome:
    """
    Evaluate a standard program over a database.

    Args:
        program: Standard, range-restricted program
        database: Ground facts added to the program
        fuel: Evaluation bounds; defaults to Fuel()
        engine: Defaults to SemiNaiveEngine

    Returns:
        Converged with the minimum model, or Exhausted naming the bound hit
    """
    return (engine or SemiNaiveEngine()).evaluate(program, database, fuel)


def active_domains(model: Iterable[Atom]) -> Dict[ArgumentId, FrozenSet[Term]]:
    """Observed values of every argument in an interpretation."""
    domains: Dict[ArgumentId, Set[Term]] = {}
    for atom in model:
        for index, term in enumerate(atom.args, start=1):
            domains.setdefault(ArgumentId(atom.predicate, index), set()).add(term)
    return {arg: frozenset(values) for arg, values in domains.items()}
