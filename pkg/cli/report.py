"""
Analysis reports: the JSON model behind `termlint analyze` and its text rendering.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import jsonschema

from kernel import Diagnostic, Program

SCHEMA = "termlint.report/1"

# weakest first; every criterion recognizes at least the programs of the ones before it
CRITERIA = ("ar", "gamma", "safe", "ksafe")


def program_digest(program: Program) -> str:
    """sha256 of the printed program, so reformatting the source does not change it."""
    return hashlib.sha256(str(program).encode("utf-8")).hexdigest()


@dataclass
class CriterionVerdict:
    """
    Verdict of one criterion on the analyzed program.

    Attributes:
        criterion: One of CRITERIA
        holds: Every argument is limited
        verdict: Human-readable verdict, e.g. "2-safe" or "not-gamma-acyclic"
        limited: Arguments the criterion proves limited
        details: Criterion-specific witness data (ranks, cycle, chain)
        seconds: Wall-clock time spent
    """

    criterion: str
    holds: bool
    verdict: str
    limited: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion,
            "holds": self.holds,
            "verdict": self.verdict,
            "limited": list(self.limited),
            "details": self.details,
            "seconds": self.seconds,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CriterionVerdict":
        return cls(
            criterion=data["criterion"],
            holds=data["holds"],
            verdict=data["verdict"],
            limited=list(data.get("limited", [])),
            details=data.get("details", {}),
            seconds=data.get("seconds", 0.0),
        )


@dataclass
class AnalysisReport:
    """
    Everything `termlint analyze` found out about one program.

    Attributes:
        source: Input path, or "-" for stdin
        digest: program_digest of the parsed input
        k: Path length used for the ksafe criterion
        criteria: Verdicts in CRITERIA order, only for requested criteria
        standard_version: Disjunctive heads or negation were removed before analysis
        flattened: The analyzed program differs from the input
        mapping: Analyzed rule id -> input rule id
        analyzed_program: Program text the criteria ran on
        diagnostics: Input findings from lenient parsing
    """

    source: str
    digest: str
    k: int = 1
    criteria: List[CriterionVerdict] = field(default_factory=list)
    standard_version: bool = False
    flattened: bool = False
    mapping: Dict[str, str] = field(default_factory=dict)
    analyzed_program: str = ""
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def strongest(self) -> Optional[CriterionVerdict]:
        """Verdict of the most general criterion that was requested."""
        return self.criteria[-1] if self.criteria else None

    @property
    def terminating(self) -> bool:
        return any(verdict.holds for verdict in self.criteria)

    def verdict_for(self, criterion: str) -> Optional[CriterionVerdict]:
        for verdict in self.criteria:
            if verdict.criterion == criterion:
                return verdict
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "source": self.source,
            "digest": self.digest,
            "k": self.k,
            "terminating": self.terminating,
            "criteria": [verdict.to_dict() for verdict in self.criteria],
            "standard_version": self.standard_version,
            "flattened": self.flattened,
            "mapping": dict(self.mapping),
            "analyzed_program": self.analyzed_program,
            "diagnostics": [diagnostic.to_dict() for diagnostic in self.diagnostics],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisReport":
        """
        Rebuild a report from its dictionary form.

        Raises:
            ValueError: the data does not follow the report schema
        """
        problems = validate_report(data)
        if problems:
            raise ValueError(f"invalid report: {problems[0]}")
        return cls(
            source=data["source"],
            digest=data["digest"],
            k=data["k"],
            criteria=[CriterionVerdict.from_dict(item) for item in data["criteria"]],
            standard_version=data.get("standard_version", False),
            flattened=data.get("flattened", False),
            mapping=dict(data.get("mapping", {})),
            analyzed_program=data.get("analyzed_program", ""),
            diagnostics=[Diagnostic.from_dict(item) for item in data.get("diagnostics", [])],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _load_schema_from_file(filename: str) -> Dict[str, Any]:
    """Load the bundled JSON Schema of the report."""
    file_path = os.path.join(os.path.dirname(__file__), filename)
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)


REPORT_SCHEMA = _load_schema_from_file("report_schema.json")
_VALIDATOR = jsonschema.Draft7Validator(REPORT_SCHEMA)


def hierarchy_violations(criteria: List[Dict[str, Any]]) -> List[str]:
    """
    Check that each criterion's limited set contains the one before it,
    and that a criterion that holds is followed only by ones that hold.
    """
    problems = []
    ordered = sorted(criteria, key=lambda item: CRITERIA.index(item["criterion"]))
    for weaker, stronger in zip(ordered, ordered[1:]):
        missing = set(weaker["limited"]) - set(stronger["limited"])
        if missing:
            problems.append(
                f"{stronger['criterion']} misses arguments limited under {weaker['criterion']}: "
                + ", ".join(sorted(missing))
            )
        if weaker["holds"] and not stronger["holds"]:
            problems.append(f"{weaker['criterion']} holds but {stronger['criterion']} does not")
    return problems


def validate_report(data: Any) -> List[str]:
    """
    Validate a report dictionary against REPORT_SCHEMA, then check that
    its verdicts are consistent with each other.

    Returns:
        One message per problem; empty when the report is valid
    """
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda error: list(map(str, error.absolute_path)))
    if errors:
        return [
            f"{'/'.join(str(part) for part in error.absolute_path) or 'report'}: {error.message}"
            for error in errors
        ]

    problems = []
    names = [item["criterion"] for item in data["criteria"]]
    for name in sorted({name for name in names if names.count(name) > 1}):
        problems.append(f"criterion {name!r} reported twice")
    if problems:
        return problems
    problems.extend(hierarchy_violations(data["criteria"]))
    if data["terminating"] != any(item["holds"] for item in data["criteria"]):
        problems.append("terminating disagrees with the criteria")
    return problems


def render_text(report: AnalysisReport) -> str:
    """Human-readable rendering of a report."""
    lines = [f"{report.source}: {'terminating' if report.terminating else 'not recognized'}"]
    if report.standard_version:
        lines.append("  analyzed through the standard version (split heads, negation dropped)")
    if report.flattened:
        lines.append(f"  analyzed the flattened program ({len(report.mapping)} rules)")
    for verdict in report.criteria:
        lines.append(f"  {verdict.criterion:<6} {verdict.verdict} ({verdict.seconds:.3f}s)")
        witness = verdict.details.get("witness")
        if witness:
            lines.append(f"         cycle spelling {witness['labels']}")
        if not verdict.holds and verdict.criterion == "ar":
            lines.append("         unrestricted: " + ", ".join(verdict.details.get("unrestricted", [])))
    for diagnostic in report.diagnostics:
        lines.append(f"  {diagnostic}")
    return "\n".join(lines) + "\n"
