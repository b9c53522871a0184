"""
termlint kernel module

Program representation, parsing, unification and evaluation oracles.
"""

from .base_analyzer import BaseAnalyzer
from .config import AnalysisConfig, Fuel
from .diagnostic import Diagnostic
from .engines import (
    Converged,
    EvalEngine,
    Exhausted,
    NaiveEngine,
    SemiNaiveEngine,
    active_domains,
    body_solutions,
    bottom_up_eval,
    immediate_consequence,
)
from .errors import (
    ArityConflictError,
    DeclarationConflictError,
    GroundingLimitError,
    NameCollisionError,
    NotFlatError,
    NotStandardError,
    ParseError,
    ResourceCapError,
    StableModelCapError,
    TermlintError,
    UnsafeRuleError,
)
from .grounding import enumerate_stable_models, ground_bounded, minimal_models, minimum_model
from .parser import parse_atom, parse_facts, parse_program
from .terms import (
    ArgumentId,
    Atom,
    Compound,
    Constant,
    FunctionSymbol,
    PredicateSymbol,
    Program,
    Rule,
    Term,
    Variable,
    term_depth,
    variable_depth,
)
from .unify import Substitution, UnificationError, apply, compose, match, mgu, unify
from .validation import classify_predicates, is_flat, validate

__all__ = [
    'AnalysisConfig',
    'ArgumentId',
    'ArityConflictError',
    'Atom',
    'BaseAnalyzer',
    'Compound',
    'Constant',
    'Converged',
    'DeclarationConflictError',
    'Diagnostic',
    'EvalEngine',
    'Exhausted',
    'Fuel',
    'FunctionSymbol',
    'GroundingLimitError',
    'NaiveEngine',
    'NameCollisionError',
    'NotFlatError',
    'NotStandardError',
    'ParseError',
    'PredicateSymbol',
    'Program',
    'ResourceCapError',
    'Rule',
    'SemiNaiveEngine',
    'StableModelCapError',
    'Substitution',
    'Term',
    'TermlintError',
    'UnificationError',
    'UnsafeRuleError',
    'Variable',
    'active_domains',
    'apply',
    'body_solutions',
    'bottom_up_eval',
    'classify_predicates',
    'compose',
    'enumerate_stable_models',
    'ground_bounded',
    'immediate_consequence',
    'is_flat',
    'match',
    'mgu',
    'minimal_models',
    'minimum_model',
    'parse_atom',
    'parse_facts',
    'parse_program',
    'term_depth',
    'unify',
    'validate',
    'variable_depth',
]
