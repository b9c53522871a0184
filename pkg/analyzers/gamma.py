"""
Gamma Analyzer

Labeled argument graph, propagation graph, its reduction and the set of
Gamma-acyclic arguments: arguments that do not depend on a cycle whose
label string can make terms grow without bound.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import networkx as nx

from kernel import ArgumentId, BaseAnalyzer, Compound, Program, Variable
from kernel.errors import NotFlatError
from kernel.validation import is_flat

from .labels import EPSILON, Label, LabelString, format_label_string, join, neg, pos
from .ranking import compute_AR

logger = logging.getLogger(__name__)

Edge = Tuple[ArgumentId, ArgumentId, Label]
Fact = Tuple[ArgumentId, ArgumentId, Label]


def _edge_label(head_term, body_term, var: Variable) -> Optional[Label]:
    if head_term == var and body_term == var:
        return EPSILON
    if body_term == var and isinstance(head_term, Compound):
        return pos(head_term.symbol)
    if head_term == var and isinstance(body_term, Compound):
        return neg(body_term.symbol)
    return None


def labeled_argument_graph(program: Program) -> nx.MultiDiGraph:
    """
    Labeled argument graph of a flat program.

    For a head atom p(v), a positive body atom q(u) and a variable X shared
    by v_i and u_j there is an edge q[j] -> p[i] labeled e when both terms
    are X, f when v_i = f(..X..) and ~f when u_j = f(..X..).

    Args:
        program: Flat program

    Returns:
        MultiDiGraph whose edges carry 'label' and 'rule' attributes

    Raises:
        NotFlatError: the program is not flat
    """
    check = is_flat(program)
    if not check:
        raise NotFlatError(check.offending[0].message)
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(program.arguments)
    for rule in program.rules:
        for head in rule.head:
            for i, head_term in enumerate(head.args, start=1):
                for body_atom in rule.pos_body:
                    for j, body_term in enumerate(body_atom.args, start=1):
                        shared = [v for v in head_term.variables() if v in body_term.variables()]
                        for var in shared:
                            label = _edge_label(head_term, body_term, var)
                            if label is None:
                                continue
                            graph.add_edge(
                                ArgumentId(body_atom.predicate, j),
                                ArgumentId(head.predicate, i),
                                label=label,
                                rule=rule.id,
                                variable=var.name,
                            )
    return graph


def labeled_edges(graph: nx.MultiDiGraph) -> List[Edge]:
    return [(u, v, data["label"]) for u, v, data in graph.edges(data=True)]


def propagation_graph(program: Program, limited: Optional[Iterable[ArgumentId]] = None) -> nx.MultiDiGraph:
    """
    Labeled argument graph without the edges that end in a limited argument.

    Args:
        program: Flat program
        limited: Arguments known to be limited; defaults to the argument-restricted ones

    Returns:
        MultiDiGraph over all arguments
    """
    limited = compute_AR(program).restricted if limited is None else frozenset(limited)
    graph = labeled_argument_graph(program)
    doomed = [(u, v, key) for u, v, key in graph.edges(keys=True) if v in limited]
    graph.remove_edges_from(doomed)
    return graph


Parent = Union[Tuple[str, Edge], Tuple[str, Fact, Fact]]


@dataclass
class ReducedGraph:
    """
    Reduction of a propagation graph.

    graph has an edge (i, j) iff some path from i to j spells a string
    that reduces to a single positive label. facts holds every derived
    path(i, j, a) fact with |a| <= 1 and the parent pointer that produced it.
    """

    graph: nx.DiGraph
    facts: Dict[Fact, Parent] = field(default_factory=dict)

    def cyclic_nodes(self) -> List[ArgumentId]:
        """Nodes lying on a cycle, in node order."""
        on_cycle = set()
        for component in nx.strongly_connected_components(self.graph):
            if len(component) > 1:
                on_cycle.update(component)
        on_cycle.update(u for u, v in nx.selfloop_edges(self.graph))
        return [node for node in self.graph.nodes if node in on_cycle]

    def expand(self, fact: Fact) -> List[Edge]:
        """The propagation-graph edges of the path that derived a fact."""
        edges: List[Edge] = []
        pending = [fact]
        while pending:
            current = pending.pop()
            parent = self.facts[current]
            if parent[0] == "edge":
                edges.append(parent[1])
            else:
                # right half pushed first so the left half is expanded first
                pending.append(parent[2])
                pending.append(parent[1])
        return edges

    def positive_fact(self, source: ArgumentId, target: ArgumentId) -> Fact:
        for (i, j, label) in self.facts:
            if i == source and j == target and label.is_positive:
                return (i, j, label)
        raise KeyError((source, target))

    def cycle_through(self, node: ArgumentId) -> List[Edge]:
        """A propagation-graph cycle through node whose label string is increasing."""
        if self.graph.has_edge(node, node):
            return self.expand(self.positive_fact(node, node))
        for successor in self.graph.successors(node):
            if nx.has_path(self.graph, successor, node):
                hops = [node] + nx.shortest_path(self.graph, successor, node)
                edges: List[Edge] = []
                for a, b in zip(hops, hops[1:]):
                    edges.extend(self.expand(self.positive_fact(a, b)))
                return edges
        raise ValueError(f"{node} is not on a cycle")


def reduced_graph(delta: nx.MultiDiGraph) -> ReducedGraph:
    """
    Close path facts under concatenation, keeping those whose reduced label
    has length at most one.

    Semi-naive closure: each new fact is joined with the facts already
    known on both sides, so no split of a path is missed regardless of
    node order.

    Args:
        delta: Propagation graph

    Returns:
        ReducedGraph with parent pointers for witness extraction
    """
    facts: Dict[Fact, Parent] = {}
    outgoing: Dict[ArgumentId, List[Tuple[ArgumentId, Label]]] = {}
    incoming: Dict[ArgumentId, List[Tuple[ArgumentId, Label]]] = {}
    pending: List[Fact] = []

    def add(fact: Fact, parent: Parent) -> None:
        if fact in facts:
            return
        facts[fact] = parent
        i, j, label = fact
        outgoing.setdefault(i, []).append((j, label))
        incoming.setdefault(j, []).append((i, label))
        pending.append(fact)

    for edge in labeled_edges(delta):
        add(edge, ("edge", edge))

    while pending:
        i, j, label = fact = pending.pop()
        for k, right in list(outgoing.get(j, ())):
            joined = join(label, right)
            if joined is not None:
                add((i, k, joined), ("join", fact, (j, k, right)))
        for h, left in list(incoming.get(i, ())):
            joined = join(left, label)
            if joined is not None:
                add((h, j, joined), ("join", (h, i, left), fact))

    graph = nx.DiGraph()
    graph.add_nodes_from(delta.nodes)
    graph.add_edges_from((i, j) for (i, j, label) in facts if label.is_positive)
    logger.debug("reduction: %d path facts, %d edges", len(facts), graph.number_of_edges())
    return ReducedGraph(graph, facts)


@dataclass
class Witness:
    """A propagation-graph cycle and the label string it spells."""

    edges: List[Edge]

    @property
    def labels(self) -> LabelString:
        return tuple(label for _, _, label in self.edges if not label.is_epsilon)

    @property
    def nodes(self) -> List[ArgumentId]:
        return [u for u, _, _ in self.edges] + [self.edges[-1][1]] if self.edges else []

    def __str__(self) -> str:
        path = " -> ".join(str(node) for node in self.nodes)
        return f"{path} spelling {format_label_string(self.labels)}"

    def to_dict(self) -> dict:
        return {
            "edges": [[str(u), str(v), str(label)] for u, v, label in self.edges],
            "labels": format_label_string(self.labels),
        }


@dataclass
class GammaResult:
    """
    Outcome of the Gamma-acyclicity check.

    Attributes:
        acyclic_args: Arguments not depending on an increasing cycle
        arguments: All arguments of the program
        limited: Limited arguments whose incoming edges were removed
        cyclic: Arguments with a cycle in the reduced graph
        witness: One increasing cycle when some argument is excluded
    """

    acyclic_args: FrozenSet[ArgumentId]
    arguments: Tuple[ArgumentId, ...]
    limited: FrozenSet[ArgumentId]
    cyclic: List[ArgumentId] = field(default_factory=list)
    witness: Optional[Witness] = None

    @property
    def holds(self) -> bool:
        return self.acyclic_args == frozenset(self.arguments)

    @property
    def verdict(self) -> str:
        return "gamma-acyclic" if self.holds else "not-gamma-acyclic"

    def to_dict(self) -> dict:
        return {
            "acyclic_args": sorted(str(arg) for arg in self.acyclic_args),
            "cyclic": [str(arg) for arg in self.cyclic],
            "witness": self.witness.to_dict() if self.witness else None,
        }


def gamma_analysis(program: Program, limited: Optional[Iterable[ArgumentId]] = None) -> GammaResult:
    """
    Compute the Gamma-acyclic arguments with a witness cycle.

    Args:
        program: Flat program
        limited: Limited arguments; defaults to the argument-restricted ones

    Returns:
        GammaResult
    """
    limited = compute_AR(program).restricted if limited is None else frozenset(limited)
    delta = propagation_graph(program, limited)
    reduced = reduced_graph(delta)
    cyclic = reduced.cyclic_nodes()
    dependent = set()
    for node in cyclic:
        dependent.add(node)
        dependent.update(nx.descendants(delta, node))
    acyclic = frozenset(arg for arg in program.arguments if arg not in dependent)
    witness = Witness(reduced.cycle_through(cyclic[0])) if cyclic else None
    return GammaResult(acyclic, program.arguments, limited, cyclic, witness)


def gamma_acyclic_args(program: Program, limited: Optional[Iterable[ArgumentId]] = None) -> FrozenSet[ArgumentId]:
    return gamma_analysis(program, limited).acyclic_args


def is_gamma_acyclic(program: Program) -> Tuple[bool, Optional[Witness]]:
    """
    Returns:
        (True, None) when no argument depends on an increasing cycle,
        otherwise (False, witness)
    """
    result = gamma_analysis(program)
    return result.holds, result.witness


class GammaAnalyzer(BaseAnalyzer):
    """Analyzer for Gamma-acyclicity."""

    def __init__(self, config=None, analyzer_id: str = "GammaAnalyzer"):
        super().__init__(config=config, analyzer_id=analyzer_id)

    def analyze(self, program: Program, limited: Optional[Iterable[ArgumentId]] = None) -> GammaResult:
        self.require_flat(program)
        result = gamma_analysis(program, limited)
        self.trace(
            "gamma-acyclic arguments",
            excluded=sorted(str(arg) for arg in set(program.arguments) - result.acyclic_args),
        )
        if result.witness is not None:
            self.trace("increasing cycle", witness=str(result.witness))
        return result
