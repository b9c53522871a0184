"""
termlint analyzers module

One analyzer per termination criterion, plus the graphs and label
algebra they are built on.
"""

from .activation import activation_graph, k_restricted_activation_graph, rules_depending_on_cycles
from .dot import to_dot
from .gamma import (
    GammaAnalyzer,
    GammaResult,
    gamma_acyclic_args,
    gamma_analysis,
    is_gamma_acyclic,
    labeled_argument_graph,
    propagation_graph,
    reduced_graph,
)
from .labels import Label, PathClass, classify_string, pda_accepts, reduce_label_string
from .query import QueryAnalyzer, QueryVerdict, criterion_holds, query_safe
from .ranking import ARResult, RankingAnalyzer, argument_graph, check_ranking, compute_AR, is_argument_restricted, omega_step
from .safety import SafetyAnalyzer, SafetyReport, is_safe, psi, psi_hat, safe_args, safety_chain, term_limited, unfold_recursive_body

__all__ = [
    'ARResult',
    'GammaAnalyzer',
    'GammaResult',
    'Label',
    'PathClass',
    'QueryAnalyzer',
    'QueryVerdict',
    'RankingAnalyzer',
    'SafetyAnalyzer',
    'SafetyReport',
    'activation_graph',
    'argument_graph',
    'check_ranking',
    'classify_string',
    'compute_AR',
    'criterion_holds',
    'gamma_acyclic_args',
    'gamma_analysis',
    'is_argument_restricted',
    'is_gamma_acyclic',
    'is_safe',
    'k_restricted_activation_graph',
    'labeled_argument_graph',
    'omega_step',
    'pda_accepts',
    'propagation_graph',
    'psi',
    'psi_hat',
    'query_safe',
    'reduce_label_string',
    'reduced_graph',
    'rules_depending_on_cycles',
    'safe_args',
    'safety_chain',
    'term_limited',
    'to_dot',
    'unfold_recursive_body',
]
