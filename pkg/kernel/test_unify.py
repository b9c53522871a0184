import itertools
import random

import pytest

from kernel.generators import ground_terms, random_unifiable_pair
from kernel.parser import parse_atom
from kernel.terms import Constant, Variable
from kernel.unify import Substitution, UnificationError, apply, compose, match, mgu, unify

X, Y, Z, U, V = (Variable(n) for n in "XYZUV")
a, b = Constant("a"), Constant("b")


def term(text):
    return parse_atom(f"t({text})").args[0]


def test_apply_simple():
    assert apply(Substitution({X: a}), term("f(X,Y)")) == term("f(a,Y)")


def test_apply_empty_is_identity():
    t = term("f(X,g(Y))")
    assert apply(Substitution(), t) is t


def test_apply_is_simultaneous():
    s = Substitution({X: term("f(Y)"), Y: b})
    assert apply(s, parse_atom("p(X,Y)")) == parse_atom("p(f(Y),b)")


def test_compose_chains_bindings():
    assert compose(Substitution({X: Y}), Substitution({Y: a})) == {X: a, Y: a}


def test_compose_with_empty():
    theta = Substitution({X: term("f(Z)")})
    assert compose(theta, Substitution()) == theta


def test_compose_shadows_second_binding():
    assert compose(Substitution({X: a}), Substitution({X: b})) == {X: a}


def test_mgu_clash_through_shared_variable():
    with pytest.raises(UnificationError) as info:
        mgu(parse_atom("p(X,X)"), parse_atom("p(f(Y),g(Y))"))
    assert info.value.reason == UnificationError.SYMBOL_CLASH


def test_mgu_of_identical_atoms_is_empty():
    assert mgu(parse_atom("p(X,X)"), parse_atom("p(X,X)")) == {}


def test_mgu_binds_variables():
    theta = mgu(parse_atom("p(f(X),g(X))"), parse_atom("p(U,V)"))
    assert theta == {U: term("f(X)"), V: term("g(X)")}


def test_predicate_clash():
    with pytest.raises(UnificationError) as info:
        mgu(parse_atom("p(X)"), parse_atom("q(X)"))
    assert info.value.reason == UnificationError.PREDICATE_CLASH


def test_occurs_check():
    with pytest.raises(UnificationError) as info:
        mgu(parse_atom("p(X)"), parse_atom("p(f(X))"))
    assert info.value.reason == UnificationError.OCCURS_CHECK
    assert unify(parse_atom("p(X)"), parse_atom("p(f(X))")) is None


def test_match_is_one_way():
    assert match(parse_atom("p(X,f(X))"), parse_atom("p(a,f(a))")) == {X: a}
    assert match(parse_atom("p(X,f(X))"), parse_atom("p(a,f(b))")) is None


def test_random_pairs_unify_and_are_most_general():
    rng = random.Random(7)
    universe = ground_terms(1)
    checked = 0
    for _ in range(300):
        left, right = random_unifiable_pair(rng)
        theta = unify(left, right)
        assert (theta is None) == (unify(right, left) is None)
        variables = sorted(set(left.variables()) | set(right.variables()), key=str)
        if theta is None:
            for values in itertools.product(universe, repeat=len(variables)):
                sigma = dict(zip(variables, values))
                assert apply(sigma, left) != apply(sigma, right)
            continue
        assert theta.is_idempotent()
        assert apply(theta, left) == apply(theta, right)
        for values in itertools.product(universe, repeat=len(variables)):
            sigma = Substitution(dict(zip(variables, values)))
            if apply(sigma, left) == apply(sigma, right):
                checked += 1
                # sigma is an instance of theta
                assert apply(compose(theta, sigma), left) == apply(sigma, left)
                for var in variables:
                    assert apply(sigma, apply(theta, var)) == apply(sigma, var)
    assert checked > 0
