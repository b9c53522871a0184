"""
Activation graphs over rules.

A rule r1 activates r2 when a head atom of r1 unifies with a body atom of
r2 (after renaming the two rules apart). The k-restricted graph links r1
to r2 when a chain of k activations leads from r1 to r2, each step
unifying the head instantiated so far with a body atom of the next rule.
"""

import logging
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx

from kernel import Atom, Program, Rule, Variable
from kernel.errors import ResourceCapError
from kernel.unify import unify

logger = logging.getLogger(__name__)


def _body_atoms(rule: Rule) -> Tuple[Atom, ...]:
    return (*rule.pos_body, *rule.neg_body)


def _new_graph(program: Program, k: int) -> nx.DiGraph:
    graph = nx.DiGraph(k=k)
    graph.add_nodes_from(rule.id for rule in program.rules)
    return graph


def activation_graph(program: Program) -> nx.DiGraph:
    """
    Activation graph: nodes are rule ids, an edge r1 -> r2 when r1 activates r2.

    Args:
        program: Parsed program with numbered rules

    Returns:
        DiGraph with graph attribute k = 1
    """
    graph = _new_graph(program, 1)
    heads = [(rule, rule.renamed(f"{rule.id}.h")) for rule in program.rules]
    bodies = [(rule, rule.renamed(f"{rule.id}.b")) for rule in program.rules]
    for source, source_renamed in heads:
        for target, target_renamed in bodies:
            if any(
                unify(head, body) is not None
                for head in source_renamed.head
                for body in _body_atoms(target_renamed)
            ):
                graph.add_edge(source.id, target.id)
    return graph


def _canonical(atom: Atom) -> Atom:
    """Rename the variables of an atom to ~0, ~1, ... in order of occurrence."""
    mapping = {var: Variable(f"~{n}") for n, var in enumerate(atom.variables())}
    return atom.subst(mapping)


class _ChainSearch:
    """
    Memoised search for activation chains.

    States are canonical instantiated heads, so the set of rules reachable
    from a state in a given number of steps depends on the state alone.
    """

    def __init__(self, program: Program, max_subst_bytes: int):
        self.rules = [rule.renamed(rule.id) for rule in program.rules]
        self.max_subst_bytes = max_subst_bytes
        self.memo: Dict[Tuple[Atom, int], FrozenSet[str]] = {}

    def _check(self, state: Atom) -> None:
        size = len(str(state))
        if size > self.max_subst_bytes:
            raise ResourceCapError(
                f"instantiated head {str(state)[:60]}... needs {size} bytes, budget is {self.max_subst_bytes}"
            )

    def reach(self, state: Atom, steps: int) -> FrozenSet[str]:
        key = (state, steps)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        found: Set[str] = set()
        for rule in self.rules:
            for body in _body_atoms(rule):
                theta = unify(state, body)
                if theta is None:
                    continue
                if steps == 1:
                    found.add(rule.id)
                    break
                for head in rule.head:
                    following = _canonical(head.subst(theta))
                    self._check(following)
                    found.update(self.reach(following, steps - 1))
        result = frozenset(found)
        self.memo[key] = result
        return result


def k_restricted_activation_graph(program: Program, k: int, max_subst_bytes: int = 65536) -> nx.DiGraph:
    """
    k-restricted activation graph: r1 -> r2 when an active path of length k
    leads from r1 to r2.

    Args:
        program: Parsed program with numbered rules
        k: Path length, at least 1
        max_subst_bytes: Largest printed size of an instantiated head

    Returns:
        DiGraph with graph attribute k

    Raises:
        ResourceCapError: an instantiated head exceeds the size budget
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    graph = _new_graph(program, k)
    search = _ChainSearch(program, max_subst_bytes)
    for source in search.rules:
        for head in source.head:
            for target in search.reach(_canonical(head), k):
                graph.add_edge(source.id, target)
    logger.debug("activation graph k=%d: %d edges, %d memo entries", k, graph.number_of_edges(), len(search.memo))
    return graph


def cycle_members(graph: nx.DiGraph) -> FrozenSet[str]:
    """Nodes lying on a directed cycle, self-loops included."""
    members: Set[str] = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            members.update(component)
    members.update(u for u, _ in nx.selfloop_edges(graph))
    return frozenset(members)


def rules_depending_on_cycles(graph: nx.DiGraph) -> FrozenSet[str]:
    """Rules reachable in zero or more steps from a rule on a cycle."""
    dependent: Set[str] = set()
    for node in cycle_members(graph):
        dependent.add(node)
        dependent.update(nx.descendants(graph, node))
    return frozenset(dependent)


def activation_family(program: Program, k: int, max_subst_bytes: int = 65536) -> List[nx.DiGraph]:
    """Graphs for path lengths 1..k, in order."""
    return [
        activation_graph(program) if j == 1 else k_restricted_activation_graph(program, j, max_subst_bytes)
        for j in range(1, k + 1)
    ]

