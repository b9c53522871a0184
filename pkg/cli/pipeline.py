"""
The work behind each subcommand, kept apart from argument parsing so it can
be driven from Python.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence

import networkx as nx

from analyzers import (
    GammaAnalyzer,
    RankingAnalyzer,
    SafetyAnalyzer,
    activation_graph,
    argument_graph,
    k_restricted_activation_graph,
    labeled_argument_graph,
    propagation_graph,
    reduced_graph,
)
from kernel import AnalysisConfig, Atom, Program, is_flat
from kernel.parser import format_program
from transforms import (
    Query,
    extended_program,
    flatten_program,
    magic_rewrite,
    renamed_standard_version,
    standard_version,
)

from .report import CRITERIA, AnalysisReport, CriterionVerdict, program_digest

logger = logging.getLogger(__name__)

GRAPHS = ("argument", "labeled", "propagation", "reduced", "activation")
REWRITES = ("flatten", "magic", "st", "ST", "ext")


@dataclass
class PreparedProgram:
    """
    A program made ready for the criteria.

    Attributes:
        program: Flat program the criteria run on
        standard_version: Disjunctive heads or negation were removed first
        mapping: Rule id of program -> rule id in the input
        flattened: Some rule was split by flattening
    """

    program: Program
    standard_version: bool = False
    mapping: Dict[str, str] = field(default_factory=dict)
    flattened: bool = False


def prepare(program: Program) -> PreparedProgram:
    """
    Bring a program into the shape the Gamma and safety criteria assume.

    Disjunctive programs, and non-flat programs with negation, are replaced
    by their standard version, whose minimum model contains every stable
    model. The result is then flattened.
    """
    target = program
    through_st = False
    disjunctive = any(not rule.is_normal for rule in program.rules)
    if disjunctive or (not program.is_standard and not is_flat(program)):
        target = standard_version(program)
        through_st = True
    mapping = {rule.id: rule.id.split("_")[0] if through_st else rule.id for rule in target.rules}
    if is_flat(target):
        return PreparedProgram(target, through_st, mapping)
    flattened = flatten_program(target)
    mapping = {new: mapping[old] for new, old in flattened.source.items()}
    logger.info("flattened %d rules into %d", len(target), len(flattened.program))
    return PreparedProgram(flattened.program, through_st, mapping, flattened.changed)


def _names(arguments: Iterable) -> list:
    return sorted(str(arg) for arg in arguments)


def _timed(criterion: str, run) -> CriterionVerdict:
    started = time.perf_counter()
    verdict = run()
    verdict.seconds = round(time.perf_counter() - started, 6)
    logger.info("%s: %s in %.3fs", criterion, verdict.verdict, verdict.seconds)
    return verdict


def analyze_program(
    program: Program,
    criteria: Sequence[str] = CRITERIA,
    config: Optional[AnalysisConfig] = None,
    source: str = "-",
) -> AnalysisReport:
    """
    Run the requested criteria on the prepared program.

    Args:
        program: Parsed program
        criteria: Subset of CRITERIA; reported in CRITERIA order
        config: Analysis settings; k is used by ksafe
        source: Name of the input, for the report

    Returns:
        AnalysisReport

    Raises:
        ValueError: an unknown criterion was requested
        ResourceCapError: an activation graph exceeded the substitution budget
    """
    unknown = [name for name in criteria if name not in CRITERIA]
    if unknown:
        raise ValueError(f"unknown criteria {', '.join(unknown)}; expected some of {', '.join(CRITERIA)}")
    config = config or AnalysisConfig()
    prepared = prepare(program)
    flat = prepared.program
    verdicts = []

    def ranking() -> CriterionVerdict:
        result = RankingAnalyzer(config).run(flat)
        details = result.to_dict()
        details["history"] = [{str(arg): value for arg, value in phi.items()} for phi in result.history]
        return CriterionVerdict("ar", result.holds, result.verdict, _names(result.restricted), details)

    def gamma() -> CriterionVerdict:
        result = GammaAnalyzer(config).run(flat)
        return CriterionVerdict("gamma", result.holds, result.verdict, _names(result.acyclic_args), result.to_dict())

    def safety(criterion: str, k: int) -> CriterionVerdict:
        result = SafetyAnalyzer(config.with_k(k)).run(flat)
        return CriterionVerdict(criterion, result.holds, result.verdict, _names(result.safe), result.to_dict())

    runners = {
        "ar": ranking,
        "gamma": gamma,
        "safe": lambda: safety("safe", 1),
        "ksafe": lambda: safety("ksafe", config.k),
    }
    for criterion in CRITERIA:
        if criterion in criteria:
            verdicts.append(_timed(criterion, runners[criterion]))

    return AnalysisReport(
        source=source,
        digest=program_digest(program),
        k=config.k,
        criteria=verdicts,
        standard_version=prepared.standard_version,
        flattened=prepared.flattened,
        mapping=prepared.mapping,
        analyzed_program=str(flat),
        diagnostics=list(program.diagnostics),
    )


def build_graph(program: Program, kind: str, k: int = 1, config: Optional[AnalysisConfig] = None) -> nx.DiGraph:
    """
    One of the analysis graphs of a program.

    The labeled, propagation and reduced graphs are built on the prepared
    (flat) program; the propagation graph drops edges into the
    argument-restricted arguments.

    Raises:
        ValueError: unknown graph kind
    """
    config = config or AnalysisConfig()
    if kind == "argument":
        return argument_graph(program)
    if kind == "activation":
        if k == 1:
            return activation_graph(program)
        return k_restricted_activation_graph(program, k, config.max_subst_bytes)
    if kind not in GRAPHS:
        raise ValueError(f"unknown graph {kind!r}; expected one of {', '.join(GRAPHS)}")
    flat = prepare(program).program
    if kind == "labeled":
        return labeled_argument_graph(flat)
    delta = propagation_graph(flat)
    if kind == "propagation":
        return delta
    return reduced_graph(delta).graph


def rewrite_program(program: Program, kind: str, goal: Optional[Atom] = None, annotate: bool = False) -> str:
    """
    Program text of a rewriting.

    Args:
        program: Parsed program
        kind: One of REWRITES
        goal: Query goal, required for magic
        annotate: Precede flattened rules by the id of the rule they came from

    Raises:
        ValueError: unknown rewriting, or magic without a goal
    """
    if kind == "flatten":
        result = flatten_program(program)
        return format_program(result.program, result.source if annotate and result.changed else None)
    if kind == "magic":
        if goal is None:
            raise ValueError("magic rewriting needs a goal")
        return str(magic_rewrite(Query(goal, program)).program)
    if kind == "st":
        return str(standard_version(program))
    if kind == "ST":
        return str(renamed_standard_version(program))
    if kind == "ext":
        return str(extended_program(program))
    raise ValueError(f"unknown rewriting {kind!r}; expected one of {', '.join(REWRITES)}")
