"""
Corpus of worked example programs

The programs are bundled as .lp resource files and exposed as module
constants, a CORPUS dict keyed by short name, and GOALS for the programs
that come with a query.
"""

import logging
import os

from kernel import Atom, Program, parse_atom, parse_program

logger = logging.getLogger(__name__)


def _load_program_from_file(filename: str) -> str:
    """
    Load program text from a bundled .lp file.

    Raises:
        OSError: the file is missing from the installed package
    """
    file_path = os.path.join(os.path.dirname(__file__), filename)
    with open(file_path, 'r', encoding='utf-8') as f:
        text = f.read()
    logger.debug("loaded %s (%d bytes)", filename, len(text))
    return text.strip() + "\n"


# Argument ranking
RANKING_CHAIN = _load_program_from_file("ranking_chain.lp")
LIST_COUNT = _load_program_from_file("list_count.lp")

# Labeled argument graphs
LABEL_CANCEL = _load_program_from_file("label_cancel.lp")
LABEL_GROWTH = _load_program_from_file("label_growth.lp")
GUARDED_CYCLE = _load_program_from_file("guarded_cycle.lp")

# Activation graphs and safety
LOCKSTEP = _load_program_from_file("lockstep.lp")
SELF_BLOCKING = _load_program_from_file("self_blocking.lp")
UNSAFE_CYCLE = _load_program_from_file("unsafe_cycle.lp")
DELAYED_BLOCK = _load_program_from_file("delayed_block.lp")

# Queries and rewritings
QUERY_GROW = _load_program_from_file("query_grow.lp")
QUERY_SHRINK = _load_program_from_file("query_shrink.lp")
REVERSE = _load_program_from_file("reverse.lp")
LENGTH = _load_program_from_file("length.lp")
DISJUNCTIVE = _load_program_from_file("disjunctive.lp")
FLATTEN_SAMPLE = _load_program_from_file("flatten_sample.lp")

CORPUS = {
    "ranking_chain": RANKING_CHAIN,
    "list_count": LIST_COUNT,
    "label_cancel": LABEL_CANCEL,
    "label_growth": LABEL_GROWTH,
    "guarded_cycle": GUARDED_CYCLE,
    "lockstep": LOCKSTEP,
    "self_blocking": SELF_BLOCKING,
    "unsafe_cycle": UNSAFE_CYCLE,
    "delayed_block": DELAYED_BLOCK,
    "query_grow": QUERY_GROW,
    "query_shrink": QUERY_SHRINK,
    "reverse": REVERSE,
    "length": LENGTH,
    "disjunctive": DISJUNCTIVE,
    "flatten_sample": FLATTEN_SAMPLE,
}

GOALS = {
    "query_grow": "p(f(f(a)))",
    "query_shrink": "p(a)",
    "reverse": "reverse([a,b,c,d],L)",
    "length": "length([a,b,c,d],L)",
}


def load_program(name: str, strict: bool = True) -> Program:
    """
    Parse a corpus program by name.

    reverse and length are not range restricted (the first list element
    only occurs in the head) and need strict=False.
    """
    if name not in CORPUS:
        raise KeyError(f"no corpus program named {name!r}")
    return parse_program(CORPUS[name], strict=strict)


def load_goal(name: str) -> Atom:
    """Parse the query goal that comes with a corpus program."""
    return parse_atom(GOALS[name])


def chain_program(k: int) -> str:
    """
    Program text for the k-step delayed blocking family.

    The cycle through p, q1 .. qk only dies after k + 1 activations, so the
    program is (k+1)-safe but not k-safe. chain_program(1) is the
    delayed_block program up to the name of q.

    Args:
        k: Number of intermediate predicates, at least 1

    Returns:
        Program text with k + 2 rules
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    lines = ["p(X,X) :- b(X).", "q1(f(X),g(X)) :- p(X,X)."]
    lines.extend(f"q{n + 1}(X,Y) :- q{n}(X,Y)." for n in range(1, k))
    lines.append(f"p(X,Y) :- q{k}(X,Y).")
    return "\n".join(lines) + "\n"


__all__ = [
    "RANKING_CHAIN",
    "LIST_COUNT",
    "LABEL_CANCEL",
    "LABEL_GROWTH",
    "GUARDED_CYCLE",
    "LOCKSTEP",
    "SELF_BLOCKING",
    "UNSAFE_CYCLE",
    "DELAYED_BLOCK",
    "QUERY_GROW",
    "QUERY_SHRINK",
    "REVERSE",
    "LENGTH",
    "DISJUNCTIVE",
    "FLATTEN_SAMPLE",
    "CORPUS",
    "GOALS",
    "chain_program",
    "load_goal",
    "load_program",
]
