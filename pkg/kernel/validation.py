"""
Structural checks over programs: predicate classification, range
restriction, arity consistency, flatness and predicate dependencies.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Set

import networkx as nx

from .diagnostic import Diagnostic
from .errors import DeclarationConflictError
from .terms import Compound, PredicateSymbol, Program, Rule, Variable

logger = logging.getLogger(__name__)


class PredicateKinds(NamedTuple):
    base: FrozenSet[PredicateSymbol]
    derived: FrozenSet[PredicateSymbol]


def _heads_non_fact(program: Program) -> Set[PredicateSymbol]:
    return {atom.predicate for rule in program.rules if not rule.is_fact for atom in rule.head}


def _declaration_conflicts(program: Program) -> List[Diagnostic]:
    conflicts = []
    declared: Dict[PredicateSymbol, Set[str]] = {}
    for pred, kind in program.directives:
        declared.setdefault(pred, set()).add(kind)
    heads = _heads_non_fact(program)
    for pred, kinds in declared.items():
        if kinds == {"base", "derived"}:
            conflicts.append(Diagnostic("declaration-conflict", f"{pred} declared both base and derived"))
        elif "base" in kinds and pred in heads:
            conflicts.append(
                Diagnostic("declaration-conflict", f"{pred} declared base but defined by a non-fact rule")
            )
    return conflicts


def classify_predicates(program: Program) -> PredicateKinds:
    """
    Split the program's predicates into base and derived.

    A predicate is base when declared so, or when it never heads a non-fact
    rule and is not declared derived.

    Raises:
        DeclarationConflictError: a directive contradicts the rules
    """
    conflicts = _declaration_conflicts(program)
    if conflicts:
        raise DeclarationConflictError(conflicts[0].message)
    declared_base = set(program.declared("base"))
    declared_derived = set(program.declared("derived"))
    heads = _heads_non_fact(program)
    base = set()
    for pred in program.predicates:
        if pred in declared_base or (pred not in heads and pred not in declared_derived):
            base.add(pred)
    derived = set(program.predicates) - base
    return PredicateKinds(frozenset(base), frozenset(derived))


def _arity_conflicts(program: Program) -> List[Diagnostic]:
    diagnostics = []
    predicate_arities: Dict[str, Set[int]] = {}
    for pred in program.predicates:
        predicate_arities.setdefault(pred.name, set()).add(pred.arity)
    for pred, _ in program.directives:
        predicate_arities.setdefault(pred.name, set()).add(pred.arity)

    function_arities: Dict[str, Set[int]] = {}
    for const in program.constants:
        function_arities.setdefault(const.name, set()).add(0)
    for func in program.functions:
        function_arities.setdefault(func.name, set()).add(func.arity)

    for label, table in (("predicate", predicate_arities), ("function symbol", function_arities)):
        for name, arities in table.items():
            if len(arities) > 1:
                shown = ", ".join(str(a) for a in sorted(arities))
                diagnostics.append(
                    Diagnostic("arity-conflict", f"{label} '{name}' used with arities {shown}")
                )
    return diagnostics


def _range_restriction(rule: Rule) -> List[Diagnostic]:
    unbound = rule.unbound_variables()
    if not unbound:
        return []
    names = ", ".join(var.name for var in unbound)
    return [
        Diagnostic(
            "range-restriction",
            f"variables {names} of '{rule}' do not occur in the positive body",
            rule_id=rule.id,
            line=rule.line,
            metadata={"variables": [var.name for var in unbound]},
        )
    ]


def validate(program: Program) -> List[Diagnostic]:
    """
    Check range restriction, arity consistency and declarations.

    Returns:
        One diagnostic per violation; empty when the program is valid
    """
    diagnostics = _arity_conflicts(program)
    for rule in program.rules:
        diagnostics.extend(_range_restriction(rule))
    diagnostics.extend(_declaration_conflicts(program))
    return diagnostics


@dataclass
class FlatCheck:
    flat: bool
    offending: List[Diagnostic] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.flat


def _complex_variables(terms) -> Set[Variable]:
    return {var for term in terms if isinstance(term, Compound) for var in term.variables()}


def is_flat(program: Program) -> FlatCheck:
    """
    Every term has depth at most one and no variable sits inside complex
    terms on both the head side and the body side of a rule.
    """
    offending = []
    for rule in program.rules:
        for atom in rule.atoms():
            for position, term in enumerate(atom.args, start=1):
                if term.depth > 1:
                    offending.append(
                        Diagnostic(
                            "not-flat",
                            f"term {term} at {atom.predicate.name}[{position}] has depth {term.depth}",
                            rule_id=rule.id,
                            line=rule.line,
                        )
                    )
        head_terms = [t for atom in rule.head for t in atom.args]
        body_terms = [t for atom in (*rule.pos_body, *rule.neg_body) for t in atom.args]
        shared = _complex_variables(head_terms) & _complex_variables(body_terms)
        if shared:
            names = ", ".join(sorted(var.name for var in shared))
            offending.append(
                Diagnostic(
                    "not-flat",
                    f"variables {names} occur in complex terms of both head and body",
                    rule_id=rule.id,
                    line=rule.line,
                )
            )
    return FlatCheck(not offending, offending)


def dependency_graph(program: Program) -> nx.DiGraph:
    """Predicate dependency graph: an edge q -> p when q occurs in the body of a rule defining p."""
    graph = nx.DiGraph()
    graph.add_nodes_from(program.predicates)
    for rule in program.rules:
        for head in rule.head:
            for body_atom in (*rule.pos_body, *rule.neg_body):
                graph.add_edge(body_atom.predicate, head.predicate)
    return graph

