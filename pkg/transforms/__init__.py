"""
termlint transforms module

Program rewritings: flattening, magic sets, standard versions and extended programs.
"""

from .disjunctive import derived_renaming, extended_program, ground_extended, renamed_standard_version, standard_version
from .flatten import FlattenResult, flatten_program, flatten_rule
from .magic import MagicResult, Query, adornment, magic_rewrite

__all__ = [
    'FlattenResult',
    'MagicResult',
    'Query',
    'adornment',
    'derived_renaming',
    'extended_program',
    'flatten_program',
    'flatten_rule',
    'ground_extended',
    'magic_rewrite',
    'renamed_standard_version',
    'standard_version',
]
