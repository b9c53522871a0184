"""
Query Analyzer

A query terminates when its program, or the magic-set rewriting of the
program for the goal, satisfies a termination criterion. Both branches
are evaluated and recorded.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from kernel import BaseAnalyzer, Program
from kernel.config import AnalysisConfig
from transforms import Query, flatten_program, magic_rewrite, standard_version
from transforms.magic import MagicResult

from .gamma import gamma_analysis
from .ranking import compute_AR
from .safety import safe_args

logger = logging.getLogger(__name__)

CRITERIA = ("ar", "gamma", "safe", "ksafe")


def criterion_holds(program: Program, criterion: str, k: int = 1, max_subst_bytes: int = 65536) -> bool:
    """
    Check one criterion. Gamma-acyclicity and safety run on the flattened
    standard version of the program.

    Args:
        program: Program to check
        criterion: One of ar, gamma, safe, ksafe
        k: Path length for ksafe

    Returns:
        True when the program is recognised as terminating
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")
    if criterion == "ar":
        return compute_AR(program).holds
    flat = flatten_program(standard_version(program)).program
    if criterion == "gamma":
        return gamma_analysis(flat).holds
    return safe_args(flat, k if criterion == "ksafe" else 1, max_subst_bytes).holds


@dataclass
class QueryVerdict:
    """
    Attributes:
        criterion: Criterion checked on both branches
        k: Path length used for ksafe
        original: Verdict on the program itself
        rewritten: Verdict on the flattened magic-set rewriting
        magic: The rewriting
    """

    criterion: str
    k: int
    original: bool
    rewritten: bool
    magic: MagicResult

    @property
    def holds(self) -> bool:
        return self.original or self.rewritten

    @property
    def branch(self) -> Optional[str]:
        if self.original:
            return "original"
        if self.rewritten:
            return "rewritten"
        return None

    @property
    def verdict(self) -> str:
        return "terminating" if self.holds else "not-recognized"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion,
            "k": self.k,
            "original": self.original,
            "rewritten": self.rewritten,
            "branch": self.branch,
            "goal": str(self.magic.goal),
            "adornments": [f"{pred.name}/{pattern}" for pred, pattern in self.magic.adornments],
            "program": str(self.magic.program),
        }


def query_safe(query: Query, criterion: str = "safe", k: int = 1, max_subst_bytes: int = 65536) -> QueryVerdict:
    """
    Evaluate a criterion on the program and on its magic-set rewriting for the goal.

    Args:
        query: Goal and positive standard program
        criterion: One of ar, gamma, safe, ksafe
        k: Path length for ksafe

    Returns:
        QueryVerdict recording both branches
    """
    config = AnalysisConfig(k=k, max_subst_bytes=max_subst_bytes)
    verdict = QueryAnalyzer(config, criterion).run(query)
    logger.info("query %s under %s: %s via %s", query.goal, criterion, verdict.verdict, verdict.branch)
    return verdict


class QueryAnalyzer(BaseAnalyzer):
    """Analyzer for query termination; criterion and k are fixed per instance."""

    def __init__(self, config: Optional[AnalysisConfig] = None, criterion: str = "safe",
                 analyzer_id: str = "QueryAnalyzer"):
        super().__init__(config=config, analyzer_id=analyzer_id)
        if criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {criterion!r}")
        self.criterion = criterion

    def analyze(self, query: Query) -> QueryVerdict:
        k = self.config.k
        self.trace("checking original program", criterion=self.criterion)
        original = criterion_holds(query.program, self.criterion, k, self.config.max_subst_bytes)
        self.trace("rewriting for goal", goal=str(query.goal))
        magic = magic_rewrite(query)
        self.trace("checking rewritten program", rules=len(magic.program))
        rewritten = criterion_holds(magic.program, self.criterion, k, self.config.max_subst_bytes)
        return QueryVerdict(self.criterion, k, original, rewritten, magic)
