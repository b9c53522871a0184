"""
termlint cli module

The `termlint` console script and the analysis report it emits.
"""

from .main import build_parser, main
from .pipeline import PreparedProgram, analyze_program, build_graph, prepare, rewrite_program
from .report import REPORT_SCHEMA, AnalysisReport, CriterionVerdict, hierarchy_violations, program_digest, render_text, validate_report

__all__ = [
    'AnalysisReport',
    'CriterionVerdict',
    'PreparedProgram',
    'REPORT_SCHEMA',
    'analyze_program',
    'build_graph',
    'build_parser',
    'hierarchy_violations',
    'main',
    'prepare',
    'program_digest',
    'render_text',
    'rewrite_program',
    'validate_report',
]
