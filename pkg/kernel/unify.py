"""
Substitutions and most general unifiers.

Unification works on a worklist of equations; every new binding is pushed
into the remaining equations and into the bindings found so far, so the
result is always idempotent. The occurs check is always on.
"""

from collections.abc import Mapping
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .terms import Atom, Compound, Constant, Term, Variable


class UnificationError(ValueError):
    """Raised when two terms or atoms have no unifier."""

    PREDICATE_CLASH = "predicate-clash"
    SYMBOL_CLASH = "symbol-clash"
    OCCURS_CHECK = "occurs-check"

    def __init__(self, reason: str, left, right):
        self.reason = reason
        self.left = left
        self.right = right
        super().__init__(f"{reason}: cannot unify {left} with {right}")


class Substitution(Mapping):
    """An immutable finite map from variables to terms."""

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Optional[Dict[Variable, Term]] = None):
        self._bindings: Dict[Variable, Term] = dict(bindings or {})

    def __getitem__(self, var: Variable) -> Term:
        return self._bindings[var]

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __hash__(self) -> int:
        return hash(frozenset(self._bindings.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{var}->{term}" for var, term in self._bindings.items())
        return f"{{{inner}}}"

    def is_idempotent(self) -> bool:
        domain = set(self._bindings)
        return not any(var in domain for term in self._bindings.values() for var in term.variables())

    def size(self) -> int:
        """Printed size of all bindings, used for budget checks."""
        return sum(len(str(var)) + len(str(term)) for var, term in self._bindings.items())


EMPTY = Substitution()


def apply(subst: Mapping, target: Union[Term, Atom]) -> Union[Term, Atom]:
    """Simultaneous replacement of each bound variable in a term or atom."""
    return target.subst(subst)


def compose(first: Mapping, second: Mapping) -> Substitution:
    """
    first ∘ second: applying the result equals applying first, then second.

    Bindings X/t of first become X/t·second unless trivial; bindings of
    second whose variable is already bound by first are dropped.
    """
    result: Dict[Variable, Term] = {}
    for var, term in first.items():
        image = term.subst(second)
        if image != var:
            result[var] = image
    for var, term in second.items():
        if var not in first:
            result[var] = term
    return Substitution(result)


def _occurs(var: Variable, term: Term) -> bool:
    return var in term.variables()


def _solve(equations: List[Tuple[Term, Term]]) -> Dict[Variable, Term]:
    bindings: Dict[Variable, Term] = {}
    while equations:
        left, right = equations.pop()
        if left == right:
            continue
        if isinstance(right, Variable) and not isinstance(left, Variable):
            left, right = right, left
        if isinstance(left, Variable):
            if _occurs(left, right):
                raise UnificationError(UnificationError.OCCURS_CHECK, left, right)
            step = {left: right}
            equations = [(l.subst(step), r.subst(step)) for l, r in equations]
            bindings = {var: term.subst(step) for var, term in bindings.items()}
            bindings[left] = right
            continue
        if isinstance(left, Compound) and isinstance(right, Compound) and left.symbol == right.symbol:
            equations.extend(zip(left.args, right.args))
            continue
        raise UnificationError(UnificationError.SYMBOL_CLASH, left, right)
    return bindings


def mgu(left: Union[Atom, Term], right: Union[Atom, Term]) -> Substitution:
    """
    Most general unifier of two atoms (or two terms).

    Returns:
        An idempotent Substitution

    Raises:
        UnificationError: with reason predicate-clash, symbol-clash or occurs-check
    """
    if isinstance(left, Atom) or isinstance(right, Atom):
        if not (isinstance(left, Atom) and isinstance(right, Atom)) or left.predicate != right.predicate:
            raise UnificationError(UnificationError.PREDICATE_CLASH, left, right)
        equations = list(zip(left.args, right.args))
    else:
        equations = [(left, right)]
    return Substitution(_solve(equations))


def unify(left: Union[Atom, Term], right: Union[Atom, Term]) -> Optional[Substitution]:
    """mgu, or None when the two do not unify."""
    try:
        return mgu(left, right)
    except UnificationError:
        return None


def match(pattern: Union[Atom, Term], ground: Union[Atom, Term], bindings: Optional[Dict[Variable, Term]] = None) -> Optional[Dict[Variable, Term]]:
    """
    One-way matching of a pattern against a ground atom or term.

    Returns:
        Extended copy of bindings, or None when the pattern does not match
    """
    result = dict(bindings) if bindings else {}
    if isinstance(pattern, Atom):
        if not isinstance(ground, Atom) or pattern.predicate != ground.predicate:
            return None
        pairs = list(zip(pattern.args, ground.args))
    else:
        pairs = [(pattern, ground)]
    while pairs:
        pat, value = pairs.pop()
        if isinstance(pat, Variable):
            bound = result.get(pat)
            if bound is None:
                result[pat] = value
            elif bound != value:
                return None
        elif isinstance(pat, Constant):
            if pat != value:
                return None
        else:
            if not isinstance(value, Compound) or value.symbol != pat.symbol:
                return None
            pairs.extend(zip(pat.args, value.args))
    return result
