"""
Safety Analyzer

Derives limited arguments beyond the Gamma-acyclic ones by looking at
which rules can fire infinitely often (they depend on a cycle of an
activation graph) and which head terms are held in check by limited body
arguments.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from kernel import ArgumentId, Atom, BaseAnalyzer, Program, Rule, Variable
from kernel.terms import fresh_variable_names
from kernel.validation import dependency_graph

from .activation import activation_family, rules_depending_on_cycles
from .gamma import gamma_acyclic_args

logger = logging.getLogger(__name__)

NO_CYCLE = "no-cycle-dependence"
COVERED_VARIABLES = "limited-term-cond-1"
STRONGLY_LINEAR = "limited-term-cond-2"
GAMMA_ACYCLIC = "gamma-acyclic"


@dataclass
class LimitedCheck:
    limited: bool
    condition: Optional[str] = None

    def __bool__(self) -> bool:
        return self.limited


def _recursive_components(program: Program) -> Dict:
    """Map each recursive predicate to its component in the dependency graph."""
    graph = dependency_graph(program)
    result = {}
    for component in nx.strongly_connected_components(graph):
        members = frozenset(component)
        if len(members) > 1 or any(graph.has_edge(p, p) for p in members):
            for pred in members:
                result[pred] = members
    return result


def recursive_body(rule: Rule, program: Program, components: Optional[Dict] = None) -> Tuple[Atom, ...]:
    """Body atoms whose predicate is mutually recursive with a head predicate."""
    components = _recursive_components(program) if components is None else components
    recursive_with = set()
    for head in rule.head:
        recursive_with.update(components.get(head.predicate, ()))
    return tuple(atom for atom in (*rule.pos_body, *rule.neg_body) if atom.predicate in recursive_with)


def is_strongly_linear(rule: Rule, program: Program, components: Optional[Dict] = None) -> bool:
    """
    A recursive rule with one recursive body atom, over its own head
    predicate, and no other recursive rule defining that predicate.
    """
    components = _recursive_components(program) if components is None else components
    if not rule.is_normal:
        return False
    rbody = recursive_body(rule, program, components)
    if len(rbody) != 1:
        return False
    predicate = rule.head[0].predicate
    if rbody[0].predicate != predicate:
        return False
    for other in program.rules_defining(predicate):
        if other.id != rule.id and recursive_body(other, program, components):
            return False
    return True


def relay_definition(predicate, program: Program) -> Optional[Rule]:
    """
    The single rule defining a relay predicate, or None.

    A relay predicate is defined by one standard rule whose head arguments
    are distinct variables, and occurs in exactly one body atom of the
    program. Flattening introduces such predicates when it moves a body
    behind a fresh head.
    """
    defining = program.rules_defining(predicate)
    if len(defining) != 1:
        return None
    (definition,) = defining
    head = definition.head[0]
    if not definition.is_standard or not all(isinstance(term, Variable) for term in head.args):
        return None
    if len(set(head.args)) != len(head.args):
        return None
    uses = sum(1 for rule in program.rules for atom in (*rule.pos_body, *rule.neg_body) if atom.predicate == predicate)
    return definition if uses == 1 else None


def unfold_recursive_body(rule: Rule, program: Program, components: Optional[Dict] = None) -> Rule:
    """
    Replace each recursive body atom over a relay predicate by the body of its definition.

    Args:
        rule: Normal rule
        program: Program the rule belongs to

    Returns:
        The unfolded rule, with the id of rule; rule itself when nothing unfolds
    """
    components = _recursive_components(program) if components is None else components
    if not rule.is_normal:
        return rule
    head_predicate = rule.head[0].predicate
    rbody = set(recursive_body(rule, program, components))
    taken = {var.name for var in rule.variables()}
    pos_body: List[Atom] = []
    changed = False
    for atom in rule.pos_body:
        definition = relay_definition(atom.predicate, program) if atom in rbody and atom.predicate != head_predicate else None
        if definition is None:
            pos_body.append(atom)
            continue
        params = definition.head[0].args
        mapping = dict(zip(params, atom.args))
        fresh = fresh_variable_names(taken)
        for var in definition.variables():
            if var not in mapping:
                mapping[var] = Variable(next(fresh))
                taken.add(mapping[var].name)
        pos_body.extend(inner.subst(mapping) for inner in definition.pos_body)
        changed = True
    if not changed:
        return rule
    return Rule(rule.head, tuple(pos_body), rule.neg_body, id=rule.id, line=rule.line)


def _homogeneous(atom: Atom) -> bool:
    simple = [term.is_simple for term in atom.args]
    return all(simple) or not any(simple)


def _covered(body: Iterable[Atom], limited: FrozenSet[ArgumentId]) -> Set:
    return {
        var
        for atom in body
        for j, term in enumerate(atom.args, start=1)
        if ArgumentId(atom.predicate, j) in limited
        for var in term.variables()
    }


def term_limited(rule: Rule, i: int, limited: Iterable[ArgumentId], program: Program, components: Optional[Dict] = None) -> LimitedCheck:
    """
    Decide whether the i-th head term of a normal rule is limited.

    The strongly linear condition is checked on the rule with relay
    predicates unfolded. Head variables missing from the recursive body are
    allowed when limited body arguments cover them.

    Args:
        rule: Normal rule
        i: 1-based head argument index
        limited: Arguments known to be limited
        program: Program the rule belongs to, for recursion structure

    Returns:
        LimitedCheck naming the condition that holds, if any
    """
    limited = frozenset(limited)
    components = _recursive_components(program) if components is None else components
    head = rule.head[0]
    covered = _covered(rule.pos_body, limited)
    # head variables missing from the positive body carry no edge in the argument graphs either
    body_vars = set(rule.body_variables())
    if all(var in covered for var in head.args[i - 1].variables() if var in body_vars):
        return LimitedCheck(True, COVERED_VARIABLES)

    unfolded = unfold_recursive_body(rule, program, components)
    if not is_strongly_linear(unfolded, program, components):
        return LimitedCheck(False)
    rbody = recursive_body(unfolded, program, components)
    if not all(_homogeneous(atom) for atom in (head, *rbody)):
        return LimitedCheck(False)
    head_vars = set(head.variables())
    rbody_vars = {var for atom in rbody for var in atom.variables()}
    if not rbody_vars <= head_vars or not head_vars - rbody_vars <= _covered(unfolded.pos_body, limited):
        return LimitedCheck(False)
    if any(ArgumentId(head.predicate, j) in limited for j in range(1, head.predicate.arity + 1)):
        return LimitedCheck(True, STRONGLY_LINEAR)
    return LimitedCheck(False)


def exempt_rules(graphs: Sequence[nx.DiGraph]) -> FrozenSet[str]:
    """Rules that, for some graph of the family, depend on no cycle."""
    exempt: Set[str] = set()
    for graph in graphs:
        exempt.update(set(graph.nodes) - rules_depending_on_cycles(graph))
    return frozenset(exempt)


def _psi(program: Program, limited: FrozenSet[ArgumentId], exempt: FrozenSet[str], components: Dict) -> Dict[ArgumentId, str]:
    """Arguments selected by the safety function, each with the weakest reason used."""
    selected: Dict[ArgumentId, str] = {}
    for arg in program.arguments:
        reasons = []
        for rule in program.rules_defining(arg.predicate):
            if rule.id in exempt:
                reasons.append(NO_CYCLE)
                continue
            if not rule.is_normal:
                break
            check = term_limited(rule, arg.index, limited, program, components)
            if not check:
                break
            reasons.append(check.condition)
        else:
            if STRONGLY_LINEAR in reasons:
                selected[arg] = STRONGLY_LINEAR
            elif COVERED_VARIABLES in reasons:
                selected[arg] = COVERED_VARIABLES
            else:
                selected[arg] = NO_CYCLE
    return selected


def psi(program: Program, limited: Iterable[ArgumentId], graphs: Sequence[nx.DiGraph]) -> FrozenSet[ArgumentId]:
    """
    Safety function over a family of activation graphs.

    An argument q[i] is selected when every rule defining q either depends
    on no cycle of some graph in the family or limits its i-th head term.

    Args:
        program: Normal program
        limited: Arguments known to be limited
        graphs: Activation graphs for path lengths 1..k

    Returns:
        Selected arguments
    """
    selected = _psi(program, frozenset(limited), exempt_rules(graphs), _recursive_components(program))
    return frozenset(selected)


def psi_hat(program: Program, limited: Iterable[ArgumentId], graphs: Sequence[nx.DiGraph]) -> FrozenSet[ArgumentId]:
    """Inflationary safety function: limited plus whatever psi selects."""
    limited = frozenset(limited)
    return limited | psi(program, limited, graphs)


@dataclass
class SafetyReport:
    """
    Outcome of the k-safety criterion.

    Attributes:
        k: Largest path length of the activation graphs used
        start: Gamma-acyclic arguments the iteration starts from
        chain: Argument sets computed, starting with start
        justification: Reason each safe argument joined the chain
        arguments: All arguments of the program
    """

    k: int
    start: FrozenSet[ArgumentId]
    chain: List[FrozenSet[ArgumentId]] = field(default_factory=list)
    justification: Dict[ArgumentId, str] = field(default_factory=dict)
    arguments: Tuple[ArgumentId, ...] = ()

    @property
    def safe(self) -> FrozenSet[ArgumentId]:
        return self.chain[-1] if self.chain else self.start

    @property
    def holds(self) -> bool:
        return self.safe == frozenset(self.arguments)

    @property
    def verdict(self) -> str:
        name = "safe" if self.k == 1 else f"{self.k}-safe"
        return name if self.holds else f"not-{name}"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "start": sorted(str(arg) for arg in self.start),
            "chain": [sorted(str(arg) for arg in step) for step in self.chain],
            "safe": sorted(str(arg) for arg in self.safe),
            "justification": {str(arg): reason for arg, reason in self.justification.items()},
        }


def safe_args(program: Program, k: int = 1, max_subst_bytes: int = 65536, graphs: Optional[Sequence[nx.DiGraph]] = None) -> SafetyReport:
    """
    Iterate the safety function from the Gamma-acyclic arguments to its fixpoint.

    Args:
        program: Flat normal program
        k: Largest activation path length
        max_subst_bytes: Size budget for the k-restricted activation graphs
        graphs: Precomputed activation graphs for 1..k

    Returns:
        SafetyReport with the full chain

    Raises:
        NotFlatError: the program is not flat
        ResourceCapError: an activation graph exceeds its budget
    """
    start = gamma_acyclic_args(program)
    if graphs is None:
        graphs = activation_family(program, k, max_subst_bytes)
    chain, justification = safety_chain(program, start, graphs)
    justification = {**{arg: GAMMA_ACYCLIC for arg in start}, **justification}
    return SafetyReport(k, start, chain, justification, program.arguments)


def safety_chain(
    program: Program,
    start: Iterable[ArgumentId],
    graphs: Sequence[nx.DiGraph],
) -> Tuple[List[FrozenSet[ArgumentId]], Dict[ArgumentId, str]]:
    """
    Apply the safety function from start until it stops growing.

    Args:
        program: Flat normal program
        start: First set of the chain
        graphs: Activation graphs for path lengths 1..k

    Returns:
        (chain, justification) where justification gives the reason for
        every argument added after start

    Raises:
        AssertionError: a step dropped an argument of the previous set
    """
    exempt = exempt_rules(graphs)
    components = _recursive_components(program)
    current = frozenset(start)
    chain = [current]
    justification: Dict[ArgumentId, str] = {}
    # each strict step adds an argument, so the chain is at most |args| long
    for step in range(1, len(program.arguments) + 2):
        selected = _psi(program, current, exempt, components)
        following = frozenset(selected)
        dropped = current - following
        if dropped:
            raise AssertionError(
                f"safety step {step} dropped {', '.join(sorted(str(arg) for arg in dropped))}"
            )
        if following == current:
            break
        logger.debug("safety step %d added %d arguments", step, len(following - current))
        for arg in following - current:
            justification[arg] = selected[arg]
        chain.append(following)
        current = following
    return chain, justification


def is_safe(program: Program, k: int = 1, max_subst_bytes: int = 65536) -> bool:
    """True when every argument of the flat program is k-safe."""
    return safe_args(program, k, max_subst_bytes).holds


class SafetyAnalyzer(BaseAnalyzer):
    """Analyzer for the k-safety criterion; k comes from the config."""

    def __init__(self, config=None, analyzer_id: str = "SafetyAnalyzer"):
        super().__init__(config=config, analyzer_id=analyzer_id)

    def analyze(self, program: Program) -> SafetyReport:
        self.require_flat(program)
        report = safe_args(program, self.config.k, self.config.max_subst_bytes)
        for step, args in enumerate(report.chain):
            self.trace(f"chain step {step}", arguments=sorted(str(arg) for arg in args))
        return report
