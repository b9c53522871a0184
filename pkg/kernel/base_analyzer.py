"""
Base Analyzer class for all criterion implementations.
"""

import logging
from typing import Any, List, Optional

from .config import AnalysisConfig
from .diagnostic import Diagnostic
from .errors import NotFlatError
from .terms import Program
from .validation import is_flat

logger = logging.getLogger(__name__)


class BaseAnalyzer:
    """Base class for all analyzers; keeps a trace of the steps of each run."""

    def __init__(self, config: Optional[AnalysisConfig] = None, analyzer_id: Optional[str] = None):
        """
        Initialize base analyzer.

        Args:
            config: Analysis settings; defaults to AnalysisConfig()
            analyzer_id: Identifier used in traces and reports
        """
        self.config = config or AnalysisConfig()
        self.analyzer_id = analyzer_id or self.__class__.__name__
        self.history: List[Diagnostic] = []
        self._last_result: Any = None

    def analyze(self, target: Any) -> Any:
        raise NotImplementedError

    def run(self, target: Any) -> Any:
        """
        Run the analysis and record the outcome.

        Args:
            target: Program, or query carrying a program, to analyze

        Returns:
            Analyzer-specific result
        """
        program: Program = getattr(target, "program", target)
        self.trace(f"start on {len(program)} rules")
        result = self.analyze(target)
        self._last_result = result
        self.trace("done", verdict=getattr(result, "verdict", None))
        return result

    def trace(self, message: str, **metadata: Any) -> None:
        self.history.append(Diagnostic("trace", message, severity="info", metadata=metadata))
        logger.debug("[%s] %s %s", self.analyzer_id, message, metadata or "")

    def require_flat(self, program: Program) -> None:
        check = is_flat(program)
        if not check:
            raise NotFlatError(f"{self.analyzer_id} needs a flat program: {check.offending[0].message}")

    def get_history(self) -> List[Diagnostic]:
        """
        Get the trace of all runs since the last reset.

        Returns:
            List of Diagnostic objects
        """
        return self.history.copy()

    def reset_session(self) -> None:
        """Clear the trace and the last result."""
        self.history = []
        self._last_result = None

    def get_last_result(self) -> Any:
        return self._last_result
