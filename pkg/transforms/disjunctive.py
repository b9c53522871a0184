"""
Standard versions and extended programs for disjunctive programs with negation.

st(P) splits every disjunctive head and drops negative literals; its
minimum model contains every stable model of P. ST(P) is st(P) over
renamed derived predicates, and ext(P) guards every rule of P with the
renamed copies of its head atoms, so a grounder only instantiates rules
whose heads occur in the minimum model of ST(P).
"""

import logging
from typing import Dict, Iterable, List, Optional

from kernel import Atom, Fuel, PredicateSymbol, Program, Rule, bottom_up_eval
from kernel.engines import FactIndex, body_solutions
from kernel.errors import GroundingLimitError, NameCollisionError
from kernel.terms import fresh_name
from kernel.validation import classify_predicates

logger = logging.getLogger(__name__)


def standard_version(program: Program) -> Program:
    """
    st(P): one rule a_i :- body+ per head atom a_i of every rule.

    A rule with m > 1 head atoms r becomes r_1 .. r_m; single-head rules keep their id.
    """
    rules: List[Rule] = []
    for rule in program.rules:
        if len(rule.head) == 1:
            rules.append(Rule(rule.head, rule.pos_body, id=rule.id, line=rule.line))
            continue
        for n, atom in enumerate(rule.head, start=1):
            rules.append(Rule((atom,), rule.pos_body, id=f"{rule.id}_{n}", line=rule.line))
    return program.with_rules(rules)


def _capitalised(name: str) -> str:
    return name[:1].upper() + name[1:]


def derived_renaming(program: Program, on_collision: str = "suffix") -> Dict[PredicateSymbol, PredicateSymbol]:
    """
    Fresh capitalised names for the derived predicates of a program.

    Args:
        program: Any program
        on_collision: "suffix" to append _1, _2, ... to a name already in use, "error" to raise

    Raises:
        NameCollisionError: a fresh name is taken and on_collision is "error"
    """
    if on_collision not in ("suffix", "error"):
        raise ValueError(f"unknown collision policy {on_collision!r}")
    taken = {pred.name for pred in program.predicates}
    derived = classify_predicates(program).derived
    renaming: Dict[PredicateSymbol, PredicateSymbol] = {}
    for pred in program.predicates:
        if pred not in derived:
            continue
        wanted = _capitalised(pred.name)
        if wanted in taken:
            if on_collision == "error":
                raise NameCollisionError(f"renamed predicate {wanted} for {pred} already exists")
            wanted = fresh_name(wanted, taken)
        taken.add(wanted)
        renaming[pred] = PredicateSymbol(wanted, pred.arity)
    return renaming


def _rename(atom: Atom, renaming: Dict[PredicateSymbol, PredicateSymbol]) -> Atom:
    return atom.rename_predicate(renaming[atom.predicate]) if atom.predicate in renaming else atom


def renamed_standard_version(program: Program, on_collision: str = "suffix") -> Program:
    """ST(P): st(P) with every derived predicate q replaced by its capitalised copy Q."""
    renaming = derived_renaming(program, on_collision)
    rules = [
        Rule(
            tuple(_rename(atom, renaming) for atom in rule.head),
            tuple(_rename(atom, renaming) for atom in rule.pos_body),
            id=rule.id,
            line=rule.line,
        )
        for rule in standard_version(program).rules
    ]
    return Program(tuple(rules))


def extended_program(program: Program, on_collision: str = "suffix") -> Program:
    """
    ext(P): every rule guarded by the renamed copies of its derived head atoms, followed by ST(P).

    Rules of P keep their ids; the ST(P) rules get an "s" prefix.
    """
    renaming = derived_renaming(program, on_collision)
    extended = []
    for rule in program.rules:
        guard = tuple(_rename(atom, renaming) for atom in rule.head if atom.predicate in renaming)
        extended.append(Rule(rule.head, guard + rule.pos_body, rule.neg_body, id=rule.id, line=rule.line))
    support = [rule.with_id(f"s{rule.id}") for rule in renamed_standard_version(program, on_collision).rules]
    return program.with_rules(extended + support)


def ground_extended(
    program: Program,
    database: Iterable[Atom] = (),
    fuel: Optional[Fuel] = None,
    on_collision: str = "suffix",
) -> Program:
    """
    Ground ext(P) over the minimum model of ST(P).

    A rule of ext(P) is instantiated only with the bindings under which its
    positive body, read over the renamed predicates, holds in the minimum
    model of ST(P) and the database. Every stable model of P over the
    database is kept; the database comes first as facts db1, db2, ...

    Args:
        program: Disjunctive program with negation
        database: Ground facts over the base predicates
        fuel: Bounds for computing the minimum model of ST(P)
        on_collision: Passed on to derived_renaming

    Returns:
        Ground program; instances of rule r are r_1, r_2, ...

    Raises:
        GroundingLimitError: the minimum model of ST(P) was not reached within fuel
    """
    database = sorted(set(database), key=str)
    renaming = derived_renaming(program, on_collision)
    outcome = bottom_up_eval(renamed_standard_version(program, on_collision), database, fuel)
    if not outcome.converged:
        raise GroundingLimitError(
            f"minimum model of ST(P) not reached: {outcome.bound} exhausted after {outcome.iterations} iterations"
        )
    index = FactIndex(outcome.model)
    rules = [Rule((atom,), id=f"db{n}") for n, atom in enumerate(database, start=1)]
    for rule in extended_program(program, on_collision).rules:
        pattern = [_rename(atom, renaming) for atom in rule.pos_body]
        instances = {rule.subst(bindings) for bindings in body_solutions(pattern, index)}
        for n, instance in enumerate(sorted(instances, key=str), start=1):
            rules.append(instance.with_id(f"{rule.id}_{n}"))
    logger.info("grounded ext(P) into %d rules over %d model atoms", len(rules), len(index))
    return program.with_rules(rules)
