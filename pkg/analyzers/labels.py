"""
Edge labels of the labeled argument graph and the language of increasing
label strings.

A label is epsilon, a function symbol f (the term grows by f) or its
inverse ~f (the term loses an outer f). A string is increasing when,
after cancelling every adjacent pair f ~f, it is nonempty and has no
inverse label left.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from kernel import FunctionSymbol


@dataclass(frozen=True)
class Label:
    symbol: Optional[FunctionSymbol] = None
    negated: bool = False

    def __post_init__(self):
        if self.symbol is None and self.negated:
            raise ValueError("epsilon has no inverse")

    @property
    def is_epsilon(self) -> bool:
        return self.symbol is None

    @property
    def is_positive(self) -> bool:
        return self.symbol is not None and not self.negated

    def inverse(self) -> "Label":
        if self.symbol is None:
            return self
        return Label(self.symbol, not self.negated)

    def __str__(self) -> str:
        if self.symbol is None:
            return "e"
        return f"~{self.symbol.name}" if self.negated else self.symbol.name


EPSILON = Label()

LabelString = Tuple[Label, ...]


def pos(symbol: FunctionSymbol) -> Label:
    return Label(symbol, False)


def neg(symbol: FunctionSymbol) -> Label:
    return Label(symbol, True)


def cancels(first: Label, second: Label) -> bool:
    """True for the pair f ~f. The pair ~f f does not cancel."""
    return first.is_positive and second.negated and first.symbol == second.symbol


def reduce_label_string(labels: Iterable[Label]) -> LabelString:
    """
    Normal form of a label string: drop epsilons and cancel every f ~f pair.

    The rewriting system has no overlapping pairs, so a single left-to-right
    stack pass yields the unique normal form.
    """
    stack: List[Label] = []
    for label in labels:
        if label.is_epsilon:
            continue
        if stack and cancels(stack[-1], label):
            stack.pop()
        else:
            stack.append(label)
    return tuple(stack)


def join(first: Label, second: Label) -> Optional[Label]:
    """Reduced concatenation of two labels when it has length at most one."""
    if first.is_epsilon:
        return second
    if second.is_epsilon:
        return first
    if cancels(first, second):
        return EPSILON
    return None


def format_label_string(labels: Sequence[Label]) -> str:
    return " ".join(str(label) for label in labels) if labels else "e"


class PathClass(Enum):
    INCREASING = "increasing"
    FLAT = "flat"
    FAILING = "failing"


def classify_string(labels: Iterable[Label]) -> PathClass:
    reduced = reduce_label_string(labels)
    if not reduced:
        return PathClass.FLAT
    if all(label.is_positive for label in reduced):
        return PathClass.INCREASING
    return PathClass.FAILING


Q0 = "q0"
QF = "qF"
BOTTOM = "Z0"

Transitions = Dict[Tuple[str, Label, str], Tuple[str, Optional[str]]]


def _stack_symbol(symbol: FunctionSymbol) -> str:
    return f"F:{symbol.name}/{symbol.arity}"


def build_pda(symbols: Iterable[FunctionSymbol]) -> Transitions:
    """
    Transition table of the automaton recognising increasing strings.

    Keys are (state, input label, stack top); values are the next state
    and the symbol to push, or None to pop. Reading f in the final state
    with only the bottom marker on the stack is allowed, so strings that
    start with a cancelled block (g ~g f) are recognised too.
    """
    symbols = list(dict.fromkeys(symbols))
    delta: Transitions = {}
    tops = [BOTTOM] + [_stack_symbol(s) for s in symbols]
    for symbol in symbols:
        delta[(Q0, pos(symbol), BOTTOM)] = (QF, _stack_symbol(symbol))
        for top in tops:
            delta[(QF, pos(symbol), top)] = (QF, _stack_symbol(symbol))
        delta[(QF, neg(symbol), _stack_symbol(symbol))] = (QF, None)
    return delta


def pda_accepts(labels: Iterable[Label], transitions: Optional[Transitions] = None) -> bool:
    """
    Run the automaton on a label string (epsilons are skipped).

    Accepts when the run ends in the final state with at least one symbol
    above the bottom marker.
    """
    labels = [label for label in labels if not label.is_epsilon]
    if transitions is None:
        transitions = build_pda(label.symbol for label in labels)
    state = Q0
    stack = [BOTTOM]
    for label in labels:
        key = (state, label, stack[-1])
        if key not in transitions:
            return False
        state, push = transitions[key]
        if push is None:
            stack.pop()
        else:
            stack.append(push)
    return state == QF and len(stack) > 1
