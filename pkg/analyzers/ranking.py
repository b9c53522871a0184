"""
Argument Ranking Analyzer

Builds the argument graph and computes the argument-restricted arguments of
a program by iterating the ranking operator from the all-zero ranking.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from kernel import ArgumentId, BaseAnalyzer, Program, Rule, Variable, variable_depth
from kernel.diagnostic import Diagnostic

Ranking = Dict[ArgumentId, int]


def argument_graph(program: Program) -> nx.DiGraph:
    """
    Argument graph: an edge q[j] -> p[i] when a positive body term u_j of
    a rule and a head term t_i of the same rule share a variable.

    Args:
        program: Parsed program

    Returns:
        DiGraph over program.arguments, one node per argument
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(program.arguments)
    for rule in program.rules:
        for head in rule.head:
            for i, head_term in enumerate(head.args, start=1):
                head_vars = set(head_term.variables())
                if not head_vars:
                    continue
                for body_atom in rule.pos_body:
                    for j, body_term in enumerate(body_atom.args, start=1):
                        if head_vars.intersection(body_term.variables()):
                            graph.add_edge(ArgumentId(body_atom.predicate, j), ArgumentId(head.predicate, i))
    return graph


@dataclass(frozen=True)
class _Occurrence:
    body_argument: ArgumentId
    delta: int


@dataclass(frozen=True)
class _Constraint:
    """One (rule, head argument, head variable) triple and the body positions holding the variable."""

    head_argument: ArgumentId
    occurrences: Tuple[_Occurrence, ...]


def _constraints(program: Program) -> List[_Constraint]:
    result = []
    for rule in program.rules:
        for head in rule.head:
            for i, head_term in enumerate(head.args, start=1):
                target = ArgumentId(head.predicate, i)
                for var in head_term.variables():
                    occurrences = []
                    for body_atom in rule.pos_body:
                        for j, body_term in enumerate(body_atom.args, start=1):
                            body_depth = variable_depth(var, body_term)
                            if body_depth is None:
                                continue
                            delta = variable_depth(var, head_term) - body_depth
                            occurrences.append(_Occurrence(ArgumentId(body_atom.predicate, j), delta))
                    if occurrences:
                        result.append(_Constraint(target, tuple(occurrences)))
    return result


def _bound(program: Program) -> int:
    return len(program.arguments) * max(program.d_max, 1)


def _apply(constraints: List[_Constraint], arguments, phi: Ranking, bound: int) -> Ranking:
    """
    One application of the ranking operator. Values above bound are
    absorbing: they stay at bound + 1 and propagate as unbounded.
    """
    unbounded = bound + 1
    result = {arg: 0 for arg in arguments}
    for constraint in constraints:
        best: Optional[int] = None
        for occ in constraint.occurrences:
            value = phi[occ.body_argument]
            candidate = unbounded if value > bound else value + occ.delta
            if best is None or candidate < best:
                best = candidate
        target = constraint.head_argument
        if best is not None and best > result[target]:
            result[target] = best
    return {arg: min(value, unbounded) for arg, value in result.items()}


def omega_step(program: Program, phi: Ranking) -> Ranking:
    """
    Apply the ranking operator once.

    Args:
        program: Parsed program
        phi: Total ranking over program.arguments

    Returns:
        New total ranking
    """
    missing = [str(arg) for arg in program.arguments if arg not in phi]
    if missing:
        raise ValueError(f"ranking undefined on {', '.join(missing)}")
    bound = max(_bound(program), max(phi.values(), default=0))
    return _apply(_constraints(program), program.arguments, phi, bound)


@dataclass
class ARResult:
    """
    Outcome of the argument-restriction criterion.

    Attributes:
        restricted: Arguments whose rank stabilises at or below bound
        phi_min: Stable ranks of the restricted arguments
        iterations: Operator applications until the fixpoint
        history: Every ranking computed, starting from the all-zero one
        bound: Rank bound M; larger values mean unrestricted
        arguments: All arguments of the analyzed program
    """

    restricted: FrozenSet[ArgumentId]
    phi_min: Ranking
    iterations: int
    history: List[Ranking] = field(default_factory=list)
    bound: int = 0
    arguments: Tuple[ArgumentId, ...] = ()

    @property
    def unrestricted(self) -> FrozenSet[ArgumentId]:
        return frozenset(self.arguments) - self.restricted

    @property
    def holds(self) -> bool:
        return not self.unrestricted

    @property
    def verdict(self) -> str:
        return "argument-restricted" if self.holds else "not-argument-restricted"

    def to_dict(self) -> dict:
        return {
            "restricted": sorted(str(arg) for arg in self.restricted),
            "unrestricted": sorted(str(arg) for arg in self.unrestricted),
            "phi_min": {str(arg): value for arg, value in self.phi_min.items()},
            "iterations": self.iterations,
            "bound": self.bound,
        }


def compute_AR(program: Program) -> ARResult:
    """
    Iterate the ranking operator from zero to its fixpoint.

    The fixpoint always exists: the sequence is pointwise non-decreasing
    and every value is capped at bound + 1.

    Args:
        program: Parsed program

    Returns:
        ARResult with the restricted arguments and their minimal ranks
    """
    arguments = program.arguments
    bound = _bound(program)
    constraints = _constraints(program)
    n = len(arguments)
    cap = 2 * n * bound + n
    phi: Ranking = {arg: 0 for arg in arguments}
    history = [phi]
    iterations = 0
    while iterations < cap:
        following = _apply(constraints, arguments, phi, bound)
        history.append(following)
        if following == phi:
            break
        phi = following
        iterations += 1
    restricted = frozenset(arg for arg, value in phi.items() if value <= bound)
    phi_min = {arg: phi[arg] for arg in arguments if arg in restricted}
    return ARResult(restricted, phi_min, iterations, history, bound, arguments)


def is_argument_restricted(program: Program) -> bool:
    return compute_AR(program).holds


def check_ranking(program: Program, ranks: Ranking) -> List[Diagnostic]:
    """
    Re-check the ranking inequality for every head variable whose argument is ranked.

    For a head p(t) and X in t_i with p[i] ranked, some positive body atom
    q(u) with X in u_j and q[j] ranked must satisfy
    ranks[p[i]] - ranks[q[j]] >= d(X, t_i) - d(X, u_j).

    Returns:
        One diagnostic per violated (rule, argument, variable) triple
    """
    violations = []
    for rule in program.rules:
        for head in rule.head:
            for i, head_term in enumerate(head.args, start=1):
                target = ArgumentId(head.predicate, i)
                if target not in ranks:
                    continue
                for var in head_term.variables():
                    if not _justified(rule, ranks, ranks[target], var, variable_depth(var, head_term)):
                        violations.append(
                            Diagnostic(
                                "ranking-violation",
                                f"rank {ranks[target]} of {target} not justified for {var} in '{rule}'",
                                rule_id=rule.id,
                                line=rule.line,
                            )
                        )
    return violations


def _justified(rule: Rule, ranks: Ranking, head_rank: int, var: Variable, head_depth: int) -> bool:
    for body_atom in rule.pos_body:
        for j, body_term in enumerate(body_atom.args, start=1):
            body_depth = variable_depth(var, body_term)
            source = ArgumentId(body_atom.predicate, j)
            if body_depth is None or source not in ranks:
                continue
            if head_rank - ranks[source] >= head_depth - body_depth:
                return True
    return False


class RankingAnalyzer(BaseAnalyzer):
    """Analyzer for the argument-restriction criterion."""

    def __init__(self, config=None, analyzer_id: str = "RankingAnalyzer"):
        super().__init__(config=config, analyzer_id=analyzer_id)

    def analyze(self, program: Program) -> ARResult:
        result = compute_AR(program)
        self.trace(
            "ranking fixpoint",
            iterations=result.iterations,
            bound=result.bound,
            unrestricted=sorted(str(arg) for arg in result.unrestricted),
        )
        violations = check_ranking(program, result.phi_min)
        if violations:
            # the fixpoint ranks must satisfy the inequality by construction
            raise AssertionError(str(violations[0]))
        return result
