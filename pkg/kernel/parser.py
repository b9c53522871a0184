"""
Parser for the program source format.

    rule      := head (":-" body)? "."
    head      := atom ("|" atom)*
    body      := literal ("," literal)*
    literal   := ("not")? atom
    directive := "#base" p/n "." | "#derived" p/n "."

Lists ([], [a,b], [H|T]) desugar to cons/nil and I+1 to plus(I,1).
Every _ is a variable of its own, named _1, _2, ... within its rule.
Comments start with "%".
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Set, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from .diagnostic import Diagnostic
from .errors import ArityConflictError, DeclarationConflictError, ParseError, UnsafeRuleError
from .terms import (
    NIL,
    PLUS,
    Atom,
    Compound,
    Constant,
    FunctionSymbol,
    PredicateSymbol,
    Program,
    Rule,
    Term,
    Variable,
    make_list,
    number_rules,
)
from .validation import validate

logger = logging.getLogger(__name__)


_GRAMMAR = r"""
    program: statement*
    ?statement: rule | directive

    directive: "#base" pred_spec "."     -> base_directive
             | "#derived" pred_spec "."  -> derived_directive
    pred_spec: PRED_NAME "/" INT

    rule: head (":-" body)? "."
    head: atom ("|" atom)*
    body: literal ("," literal)*
    literal: atom          -> pos_literal
           | "not" atom    -> neg_literal

    atom: PRED_NAME ("(" term ("," term)* ")")?

    ?term: term "+" primary       -> plus
         | primary
    ?primary: VARIABLE                          -> variable
            | NAME "(" term ("," term)* ")"     -> compound
            | NAME                              -> constant
            | INT                               -> number
            | "[" "]"                           -> empty_list
            | "[" term ("," term)* list_tail? "]" -> list_term
            | "(" term ")"
    list_tail: "|" term

    PRED_NAME: /[A-Za-z][A-Za-z0-9_]*/
    VARIABLE: /[A-Z_][A-Za-z0-9_]*/
    NAME: /[a-z][A-Za-z0-9_]*/
    INT: /[0-9]+/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@dataclass(frozen=True)
class _ListTail:
    term: Term


ANONYMOUS = "_"


def _anonymous_names(taken: Set[str]) -> Iterator[str]:
    n = 0
    while True:
        n += 1
        if f"_{n}" not in taken:
            yield f"_{n}"


def _name_anonymous(term: Term, fresh: Iterator[str]) -> Term:
    if isinstance(term, Variable) and term.name == ANONYMOUS:
        return Variable(next(fresh))
    if isinstance(term, Compound):
        return Compound(term.symbol, tuple(_name_anonymous(arg, fresh) for arg in term.args))
    return term


def _name_anonymous_atoms(*groups: Tuple[Atom, ...]) -> Tuple[Tuple[Atom, ...], ...]:
    """Give every occurrence of _ its own variable _1, _2, ... not used elsewhere in the groups."""
    fresh = _anonymous_names({var.name for group in groups for atom in group for var in atom.variables()})
    return tuple(
        tuple(Atom(atom.predicate, tuple(_name_anonymous(arg, fresh) for arg in atom.args)) for atom in group)
        for group in groups
    )


class ProgramTransformer(Transformer):
    """Builds the AST out of the parse tree."""

    def variable(self, children):
        return Variable(str(children[0]))

    def constant(self, children):
        return Constant(str(children[0]))

    def number(self, children):
        return Constant(str(children[0]))

    def compound(self, children):
        name, *args = children
        return Compound(FunctionSymbol(str(name), len(args)), tuple(args))

    def plus(self, children):
        return Compound(PLUS, (children[0], children[1]))

    def empty_list(self, children):
        return NIL

    def list_tail(self, children):
        return _ListTail(children[0])

    def list_term(self, children):
        if isinstance(children[-1], _ListTail):
            return make_list(children[:-1], children[-1].term)
        return make_list(children)

    def atom(self, children):
        name, *args = children
        return Atom(PredicateSymbol(str(name), len(args)), tuple(args))

    def pos_literal(self, children):
        return (True, children[0])

    def neg_literal(self, children):
        return (False, children[0])

    def head(self, children):
        return tuple(children)

    def body(self, children):
        return list(children)

    @v_args(meta=True)
    def rule(self, meta, children):
        head = children[0]
        literals = children[1] if len(children) > 1 else []
        pos_body = tuple(atom for positive, atom in literals if positive)
        neg_body = tuple(atom for positive, atom in literals if not positive)
        head, pos_body, neg_body = _name_anonymous_atoms(head, pos_body, neg_body)
        line = getattr(meta, "line", None)
        return Rule(head, pos_body, neg_body, line=line)

    def pred_spec(self, children):
        return PredicateSymbol(str(children[0]), int(children[1]))

    def base_directive(self, children):
        return (children[0], "base")

    def derived_directive(self, children):
        return (children[0], "derived")

    def program(self, children):
        return list(children)


_parser = Lark(_GRAMMAR, start=["program", "atom"], parser="lalr", propagate_positions=True)
_transformer = ProgramTransformer()


def _parse_tree(text: str, start: str):
    try:
        return _parser.parse(text, start=start)
    except UnexpectedInput as e:
        summary = str(e).strip().splitlines()[0] if str(e).strip() else "syntax error"
        raise ParseError(summary, getattr(e, "line", None), getattr(e, "column", None)) from e


def parse_program(text: str, strict: bool = True) -> Program:
    """
    Parse program text into a Program.

    Args:
        text: Source text
        strict: Raise on arity conflicts and unsafe rules; otherwise keep
            them as diagnostics on the returned program

    Returns:
        Program with rules numbered r1, r2, ... in source order
    """
    statements = _transformer.transform(_parse_tree(text, "program"))
    rules = number_rules(s for s in statements if isinstance(s, Rule))
    directives = tuple(s for s in statements if not isinstance(s, Rule))
    program = Program(rules, directives)

    diagnostics = validate(program)
    if diagnostics:
        if strict:
            _raise_first(diagnostics)
        for diagnostic in diagnostics:
            logger.warning("%s", diagnostic)
        program = Program(program.rules, program.directives, tuple(diagnostics))
    logger.debug("parsed %d rules, %d directives", len(rules), len(directives))
    return program


def _raise_first(diagnostics: List[Diagnostic]) -> None:
    for diagnostic in diagnostics:
        if diagnostic.kind == "arity-conflict":
            raise ArityConflictError(diagnostic.message)
    for diagnostic in diagnostics:
        if diagnostic.kind == "range-restriction":
            raise UnsafeRuleError(diagnostic.message)
    raise DeclarationConflictError(diagnostics[0].message)


def parse_atom(text: str) -> Atom:
    """Parse a single atom such as a query goal, e.g. "p(f(f(a)))"."""
    atom = _transformer.transform(_parse_tree(text.strip().rstrip("."), "atom"))
    ((atom,),) = _name_anonymous_atoms((atom,))
    return atom


def parse_facts(text: str) -> Tuple[Atom, ...]:
    """Parse a database: one ground fact per statement."""
    program = parse_program(text)
    facts = []
    for rule in program.rules:
        if not rule.is_fact or not rule.head[0].is_ground:
            raise ParseError(f"database entries must be ground facts, got '{rule}'", rule.line)
        facts.append(rule.head[0])
    return tuple(facts)


def format_program(program: Program, mapping: Optional[dict] = None) -> str:
    """Program text; with a rule-id mapping, each rule is preceded by a source comment."""
    if not mapping:
        return str(program)
    lines = [f"#{kind} {pred.name}/{pred.arity}." for pred, kind in program.directives]
    for rule in program.rules:
        source = mapping.get(rule.id)
        if source:
            lines.append(f"% from {source}")
        lines.append(str(rule))
    return "\n".join(lines) + ("\n" if lines else "")
