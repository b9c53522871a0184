"""
Program representation: symbols, terms, atoms, rules and programs.

All values are immutable after construction. Terms that are not changed by
a substitution are returned as-is, so repeated instantiation shares
structure instead of copying it.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union


@dataclass(frozen=True)
class FunctionSymbol:
    """A function symbol; (name, arity) identifies it within a program."""

    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"function symbol {self.name} needs arity >= 1, got {self.arity}")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class PredicateSymbol:
    """A predicate symbol. Base/derived kind is a property of the program, see classify_predicates."""

    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"predicate {self.name} has negative arity")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


class Term(ABC):
    """Common interface of variables, constants and compound terms."""

    @property
    @abstractmethod
    def depth(self) -> int:
        ...

    @abstractmethod
    def variables(self) -> Tuple["Variable", ...]:
        """Distinct variables in order of first occurrence."""

    @abstractmethod
    def subst(self, mapping: Mapping["Variable", "Term"]) -> "Term":
        """Simultaneously replace bound variables."""

    @property
    def is_ground(self) -> bool:
        return not self.variables()

    @property
    def is_simple(self) -> bool:
        return self.depth == 0


@dataclass(frozen=True)
class Variable(Term):
    name: str

    @property
    def depth(self) -> int:
        return 0

    def variables(self) -> Tuple["Variable", ...]:
        return (self,)

    def subst(self, mapping: Mapping["Variable", Term]) -> Term:
        return mapping.get(self, self)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Constant(Term):
    name: str

    @property
    def depth(self) -> int:
        return 0

    def variables(self) -> Tuple[Variable, ...]:
        return ()

    def subst(self, mapping: Mapping[Variable, Term]) -> Term:
        return self

    def __str__(self) -> str:
        if self == NIL:
            return "[]"
        return self.name


@dataclass(frozen=True)
class Compound(Term):
    symbol: FunctionSymbol
    args: Tuple[Term, ...]

    def __post_init__(self):
        if len(self.args) != self.symbol.arity:
            raise ValueError(f"{self.symbol} applied to {len(self.args)} arguments")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.symbol, self.args))

    @cached_property
    def depth(self) -> int:
        return 1 + max(arg.depth for arg in self.args)

    @cached_property
    def _variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(self.args)

    def variables(self) -> Tuple[Variable, ...]:
        return self._variables

    def subst(self, mapping: Mapping[Variable, Term]) -> Term:
        if not mapping or not self._variables:
            return self
        new_args = tuple(arg.subst(mapping) for arg in self.args)
        if all(new is old for new, old in zip(new_args, self.args)):
            return self
        return Compound(self.symbol, new_args)

    def __str__(self) -> str:
        if self.symbol == CONS:
            return _list_to_str(self)
        if self.symbol == PLUS and not (isinstance(self.args[1], Compound) and self.args[1].symbol == PLUS):
            return f"{self.args[0]}+{self.args[1]}"
        return f"{self.symbol.name}({','.join(str(arg) for arg in self.args)})"


CONS = FunctionSymbol("cons", 2)
PLUS = FunctionSymbol("plus", 2)
NIL = Constant("nil")


def make_list(items: Iterable[Term], tail: Term = NIL) -> Term:
    """Build cons(i1, cons(i2, ... tail))."""
    result = tail
    for item in reversed(list(items)):
        result = Compound(CONS, (item, result))
    return result


def _list_to_str(term: Compound) -> str:
    items = []
    current: Term = term
    while isinstance(current, Compound) and current.symbol == CONS:
        items.append(str(current.args[0]))
        current = current.args[1]
    if current == NIL:
        return f"[{','.join(items)}]"
    return f"[{','.join(items)}|{current}]"


def _ordered_variables(terms: Iterable[Term]) -> Tuple[Variable, ...]:
    seen: Dict[Variable, None] = {}
    for term in terms:
        for var in term.variables():
            seen.setdefault(var, None)
    return tuple(seen)


def term_depth(term: Term) -> int:
    """d(t): 0 for simple terms, 1 + max over arguments otherwise."""
    return term.depth


def variable_depth(var: Union[Variable, str], term: Term) -> Optional[int]:
    """d(X, t), or None when X does not occur in t."""
    if isinstance(var, str):
        var = Variable(var)
    if term == var:
        return 0
    if isinstance(term, Compound):
        depths = [d for d in (variable_depth(var, arg) for arg in term.args) if d is not None]
        if depths:
            return 1 + max(depths)
    return None


@dataclass(frozen=True)
class Atom:
    predicate: PredicateSymbol
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        if len(self.args) != self.predicate.arity:
            raise ValueError(f"{self.predicate} applied to {len(self.args)} arguments")

    @cached_property
    def _variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(self.args)

    def variables(self) -> Tuple[Variable, ...]:
        return self._variables

    @property
    def is_ground(self) -> bool:
        return not self._variables

    @property
    def depth(self) -> int:
        return max((arg.depth for arg in self.args), default=0)

    def subst(self, mapping: Mapping[Variable, Term]) -> "Atom":
        if not mapping or not self._variables:
            return self
        new_args = tuple(arg.subst(mapping) for arg in self.args)
        if all(new is old for new, old in zip(new_args, self.args)):
            return self
        return Atom(self.predicate, new_args)

    def rename_predicate(self, predicate: PredicateSymbol) -> "Atom":
        return Atom(predicate, self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.predicate.name
        return f"{self.predicate.name}({','.join(str(arg) for arg in self.args)})"


@dataclass(frozen=True)
class ArgumentId:
    """p[i]: the i-th argument (1-based) of predicate p."""

    predicate: PredicateSymbol
    index: int

    def __post_init__(self):
        if not 1 <= self.index <= self.predicate.arity:
            raise ValueError(f"argument index {self.index} out of range for {self.predicate}")

    def __str__(self) -> str:
        return f"{self.predicate.name}[{self.index}]"


@dataclass(frozen=True)
class Rule:
    """head_1 | ... | head_m :- pos_body, not neg_body."""

    head: Tuple[Atom, ...]
    pos_body: Tuple[Atom, ...] = ()
    neg_body: Tuple[Atom, ...] = ()
    id: str = field(default="", compare=False)
    line: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.head:
            raise ValueError("rules need at least one head atom")

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.pos_body and not self.neg_body

    @property
    def is_normal(self) -> bool:
        return len(self.head) == 1

    @property
    def is_positive(self) -> bool:
        return not self.neg_body

    @property
    def is_standard(self) -> bool:
        return self.is_normal and self.is_positive

    def atoms(self) -> Iterator[Atom]:
        yield from self.head
        yield from self.pos_body
        yield from self.neg_body

    def variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(arg for atom in self.atoms() for arg in atom.args)

    def body_variables(self) -> Tuple[Variable, ...]:
        return _ordered_variables(arg for atom in self.pos_body for arg in atom.args)

    def unbound_variables(self) -> Tuple[Variable, ...]:
        """Head or negative-body variables missing from the positive body."""
        bound = set(self.body_variables())
        others = _ordered_variables(arg for atom in (*self.head, *self.neg_body) for arg in atom.args)
        return tuple(var for var in others if var not in bound)

    def subst(self, mapping: Mapping[Variable, Term]) -> "Rule":
        return Rule(
            tuple(a.subst(mapping) for a in self.head),
            tuple(a.subst(mapping) for a in self.pos_body),
            tuple(a.subst(mapping) for a in self.neg_body),
            id=self.id,
            line=self.line,
        )

    def renamed(self, suffix: str) -> "Rule":
        """Copy with every variable X renamed to X~suffix."""
        mapping = {var: Variable(f"{var.name}~{suffix}") for var in self.variables()}
        return self.subst(mapping)

    def with_id(self, rule_id: str) -> "Rule":
        return Rule(self.head, self.pos_body, self.neg_body, id=rule_id, line=self.line)

    def __str__(self) -> str:
        head = " | ".join(str(atom) for atom in self.head)
        literals = [str(atom) for atom in self.pos_body] + [f"not {atom}" for atom in self.neg_body]
        if not literals:
            return f"{head}."
        return f"{head} :- {', '.join(literals)}."


@dataclass(frozen=True)
class Program:
    """An ordered list of rules plus explicit base/derived declarations."""

    rules: Tuple[Rule, ...] = ()
    directives: Tuple[Tuple[PredicateSymbol, str], ...] = ()
    diagnostics: Tuple = field(default=(), compare=False)

    @cached_property
    def predicates(self) -> Tuple[PredicateSymbol, ...]:
        seen: Dict[PredicateSymbol, None] = {}
        for rule in self.rules:
            for atom in rule.atoms():
                seen.setdefault(atom.predicate, None)
        return tuple(seen)

    @cached_property
    def functions(self) -> Tuple[FunctionSymbol, ...]:
        seen: Dict[FunctionSymbol, None] = {}

        def walk(term: Term):
            if isinstance(term, Compound):
                seen.setdefault(term.symbol, None)
                for arg in term.args:
                    walk(arg)

        for rule in self.rules:
            for atom in rule.atoms():
                for arg in atom.args:
                    walk(arg)
        return tuple(seen)

    @cached_property
    def constants(self) -> Tuple[Constant, ...]:
        seen: Dict[Constant, None] = {}

        def walk(term: Term):
            if isinstance(term, Constant):
                seen.setdefault(term, None)
            elif isinstance(term, Compound):
                for arg in term.args:
                    walk(arg)

        for rule in self.rules:
            for atom in rule.atoms():
                for arg in atom.args:
                    walk(arg)
        return tuple(seen)

    @cached_property
    def arguments(self) -> Tuple[ArgumentId, ...]:
        """args(P) in predicate first-occurrence order."""
        return tuple(
            ArgumentId(pred, i) for pred in self.predicates for i in range(1, pred.arity + 1)
        )

    @cached_property
    def d_max(self) -> int:
        """Largest depth of a term occurring in a rule head."""
        return max((atom.depth for rule in self.rules for atom in rule.head), default=0)

    @property
    def is_standard(self) -> bool:
        return all(rule.is_standard for rule in self.rules)

    @property
    def is_positive(self) -> bool:
        return all(rule.is_positive for rule in self.rules)

    def declared(self, kind: str) -> Tuple[PredicateSymbol, ...]:
        return tuple(pred for pred, declared_kind in self.directives if declared_kind == kind)

    def rule(self, rule_id: str) -> Rule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise KeyError(rule_id)

    def rules_defining(self, predicate: PredicateSymbol) -> List[Rule]:
        return [rule for rule in self.rules if any(atom.predicate == predicate for atom in rule.head)]

    def with_rules(self, rules: Iterable[Rule]) -> "Program":
        return Program(tuple(rules), self.directives, self.diagnostics)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        lines = [f"#{kind} {pred.name}/{pred.arity}." for pred, kind in self.directives]
        lines.extend(str(rule) for rule in self.rules)
        return "\n".join(lines) + ("\n" if lines else "")


def number_rules(rules: Iterable[Rule], prefix: str = "r") -> Tuple[Rule, ...]:
    """Assign ids r1, r2, ... in order."""
    return tuple(rule.with_id(f"{prefix}{i}") for i, rule in enumerate(rules, start=1))


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """base, or base_1, base_2, ... whichever is first unused."""
    taken = set(taken)
    if base not in taken:
        return base
    n = 1
    while f"{base}_{n}" in taken:
        n += 1
    return f"{base}_{n}"


def fresh_variable_names(taken: Iterable[str]) -> Iterator[str]:
    """A, B, ..., Z, A1, B1, ... skipping taken names."""
    taken = set(taken)
    round_ = 0
    while True:
        for letter in "ABCDEFGHIJKLMNOPQRSTUVWXYZ":
            name = letter if round_ == 0 else f"{letter}{round_}"
            if name not in taken:
                taken.add(name)
                yield name
        round_ += 1
