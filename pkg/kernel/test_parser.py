"""
Tests for the program parser and AST printing.
"""

import pytest

from kernel.errors import ArityConflictError, ParseError, UnsafeRuleError
from kernel.parser import parse_atom, parse_facts, parse_program
from kernel.terms import (
    CONS,
    NIL,
    PLUS,
    Compound,
    Constant,
    FunctionSymbol,
    PredicateSymbol,
    Variable,
    make_list,
    term_depth,
    variable_depth,
)


def test_single_rule():
    program = parse_program("p(f(X)) :- p(X), b(X).")
    assert len(program) == 1
    rule = program.rules[0]
    assert rule.id == "r1"
    assert rule.head[0].predicate == PredicateSymbol("p", 1)
    assert [a.predicate for a in rule.pos_body] == [PredicateSymbol("p", 1), PredicateSymbol("b", 1)]


def test_zero_ary_fact():
    program = parse_program("q.")
    rule = program.rules[0]
    assert rule.is_fact
    assert rule.head[0].predicate == PredicateSymbol("q", 0)
    assert rule.pos_body == ()


def test_lists_and_plus_desugar():
    program = parse_program("count([X|L], I+1) :- list([X|L]), count(L,I).")
    head = program.rules[0].head[0]
    assert head.args[0] == Compound(CONS, (Variable("X"), Variable("L")))
    assert head.args[1] == Compound(PLUS, (Variable("I"), Constant("1")))


def test_closed_list():
    atom = parse_atom("reverse([a,b], [])")
    assert atom.args[0] == make_list([Constant("a"), Constant("b")])
    assert atom.args[1] == NIL


def test_disjunction_and_negation():
    program = parse_program("p(X) | q(X) :- r(X), not a(X).")
    rule = program.rules[0]
    assert len(rule.head) == 2
    assert [str(a) for a in rule.neg_body] == ["a(X)"]


def test_comments_and_directives():
    program = parse_program("% a comment\n#base b/1.\np(X) :- b(X). % trailing\n")
    assert program.declared("base") == (PredicateSymbol("b", 1),)
    assert len(program) == 1


def test_predicate_named_like_keyword_prefix():
    program = parse_program("nothing(X) :- b(X), not notable(X).")
    rule = program.rules[0]
    assert rule.head[0].predicate.name == "nothing"
    assert rule.neg_body[0].predicate.name == "notable"


def test_uppercase_predicates_parse():
    program = parse_program("P(X) :- R(X), r(X).")
    assert program.rules[0].head[0].predicate.name == "P"


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_program("p(X :- q(X).")
    assert info.value.line == 1
    assert info.value.column is not None


def test_arity_conflict_strict():
    with pytest.raises(ArityConflictError):
        parse_program("p(a). p(a,b).")


def test_unsafe_rule_strict_and_lenient():
    with pytest.raises(UnsafeRuleError):
        parse_program("p(X) :- q(Y).")
    program = parse_program("p(X) :- q(Y).", strict=False)
    assert [d.kind for d in program.diagnostics] == ["range-restriction"]


def test_round_trip_printing():
    text = (
        "#base b/1.\n"
        "count([],0).\n"
        "count([X|L],I+1) :- list([X|L]), count(L,I).\n"
        "p(X) | q(X) :- r(X), not a(X).\n"
        "rev([a,b,c],L) :- b(L).\n"
    )
    program = parse_program(text)
    assert str(program) == text
    assert parse_program(str(program)) == program


def test_parse_facts_rejects_rules():
    assert len(parse_facts("b(a). b(f(a)).")) == 2
    with pytest.raises(ParseError):
        parse_facts("p(X) :- b(X).")


@pytest.mark.parametrize("text, depth", [("X", 0), ("f(g(a), X)", 2), ("f(a)", 1)])
def test_term_depth(text, depth):
    term = parse_atom(f"t({text})").args[0]
    assert term_depth(term) == depth


@pytest.mark.parametrize("var, text, depth", [("X", "X", 0), ("X", "f(X)", 1), ("Y", "f(g(X))", None)])
def test_variable_depth(var, text, depth):
    term = parse_atom(f"t({text})").args[0]
    assert variable_depth(var, term) == depth


def test_function_symbol_arity_must_be_positive():
    with pytest.raises(ValueError):
        FunctionSymbol("f", 0)


def test_each_underscore_is_a_fresh_variable():
    rule = parse_program("p(X) :- q(X,_,_), r(_).").rule("r1")
    assert str(rule) == "p(X) :- q(X,_1,_2), r(_3)."
    assert len(set(rule.pos_body[0].args)) == 3


def test_underscore_names_skip_variables_in_use():
    rule = parse_program("p(_1) :- q(_1,f(_)).").rule("r1")
    assert str(rule) == "p(_1) :- q(_1,f(_2))."


def test_underscore_in_goal():
    goal = parse_atom("p(_,_)")
    assert goal.args[0] != goal.args[1]
