"""
Seeded random programs, databases and atoms for property tests.
"""

import random
from typing import List, Optional, Sequence, Tuple

from .terms import Atom, Compound, Constant, FunctionSymbol, PredicateSymbol, Program, Rule, Term, Variable, number_rules

VARIABLE_NAMES = ("X", "Y", "Z", "W", "V", "U")


def random_term(rng: random.Random, variables: Sequence[Variable], functions: Sequence[FunctionSymbol],
                constants: Sequence[Constant], depth: int) -> Term:
    """A term of depth at most depth."""
    if depth == 0 or not functions or rng.random() < 0.4:
        pool = list(variables) + list(constants)
        return rng.choice(pool)
    symbol = rng.choice(functions)
    return Compound(symbol, tuple(random_term(rng, variables, functions, constants, depth - 1)
                                  for _ in range(symbol.arity)))


def random_atom(rng: random.Random, predicate: PredicateSymbol, variables: Sequence[Variable],
                functions: Sequence[FunctionSymbol], constants: Sequence[Constant], depth: int) -> Atom:
    return Atom(predicate, tuple(random_term(rng, variables, functions, constants, depth)
                                 for _ in range(predicate.arity)))


def _covering_head(rng: random.Random, predicate: PredicateSymbol, body_vars: List[Variable],
                   functions: Sequence[FunctionSymbol], constants: Sequence[Constant], depth: int) -> Atom:
    args = []
    for _ in range(predicate.arity):
        if depth and functions and body_vars and rng.random() < 0.5:
            args.append(random_term(rng, body_vars, functions, (), depth))
        elif body_vars:
            args.append(rng.choice(body_vars))
        else:
            args.append(rng.choice(list(constants)))
    return Atom(predicate, tuple(args))


def random_flat_program(rng: random.Random, n_rules: int = 4, n_predicates: int = 3,
                        n_functions: int = 2, max_arity: int = 2) -> Program:
    """
    A flat, standard, range-restricted program, possibly recursive.

    Each rule either builds complex terms in the head out of plain body
    variables, or takes complex terms apart in the body and copies
    variables to the head, or only copies variables.
    """
    functions = [FunctionSymbol(name, 1) for name in ("f", "g", "h")[:n_functions]]
    derived = [PredicateSymbol(f"p{i}", rng.randint(1, max_arity)) for i in range(n_predicates)]
    base = PredicateSymbol("b", 1)
    constants = [Constant("a")]
    rules = []
    for _ in range(n_rules):
        body_size = rng.randint(1, 2)
        body_preds = [rng.choice(derived + [base]) for _ in range(body_size)]
        head_pred = rng.choice(derived)
        mode = rng.choice(("grow", "shrink", "copy"))
        body = []
        used: List[Variable] = []
        for pred in body_preds:
            args = []
            for _ in range(pred.arity):
                var = Variable(rng.choice(VARIABLE_NAMES[:3]))
                used.append(var)
                if mode == "shrink" and rng.random() < 0.5:
                    args.append(Compound(rng.choice(functions), (var,)))
                else:
                    args.append(var)
            body.append(Atom(pred, tuple(args)))
        body_vars = list(dict.fromkeys(used))
        head = _covering_head(rng, head_pred, body_vars, functions if mode == "grow" else (), constants,
                              1 if mode == "grow" else 0)
        rules.append(Rule((head,), tuple(body)))
    return Program(number_rules(rules))


def random_nonrecursive_program(rng: random.Random, n_rules: int = 4, n_predicates: int = 3,
                                depth: int = 2) -> Program:
    """
    A standard range-restricted program whose head predicate always ranks
    above its body predicates, so evaluation terminates.
    """
    functions = [FunctionSymbol("f", 1), FunctionSymbol("g", 2)]
    base = PredicateSymbol("b", 1)
    layers = [base] + [PredicateSymbol(f"p{i}", rng.randint(1, 2)) for i in range(1, n_predicates + 1)]
    rules = []
    for _ in range(n_rules):
        level = rng.randint(1, len(layers) - 1)
        head_pred = layers[level]
        body = []
        for _ in range(rng.randint(1, 2)):
            pred = layers[rng.randint(0, level - 1)]
            body.append(random_atom(rng, pred, [Variable(v) for v in VARIABLE_NAMES[:3]], functions, (), depth))
        body_vars = list(dict.fromkeys(v for atom in body for v in atom.variables()))
        head = _covering_head(rng, head_pred, body_vars, functions, [Constant("a")], depth)
        rules.append(Rule((head,), tuple(body)))
    return Program(number_rules(rules))


def random_database(rng: random.Random, predicates: Sequence[PredicateSymbol], n_facts: int = 10,
                    constants: Sequence[Constant] = (Constant("a"), Constant("b"), Constant("c")),
                    functions: Sequence[FunctionSymbol] = (), depth: int = 0) -> Tuple[Atom, ...]:
    """Ground facts over the given predicates."""
    facts = []
    for _ in range(n_facts):
        pred = rng.choice(list(predicates))
        facts.append(random_atom(rng, pred, (), functions, constants, depth))
    return tuple(dict.fromkeys(facts))


def random_ground_disjunctive(rng: random.Random, n_atoms: int = 5, n_rules: int = 5,
                              allow_negation: bool = True) -> Program:
    """A propositional disjunctive program over atoms a0 .. a{n-1}."""
    atoms = [Atom(PredicateSymbol(f"a{i}", 0)) for i in range(n_atoms)]
    rules = []
    for _ in range(n_rules):
        head = tuple(rng.sample(atoms, rng.randint(1, 2)))
        pos = tuple(rng.sample(atoms, rng.randint(0, 2)))
        neg = tuple(rng.sample(atoms, rng.randint(0, 1))) if allow_negation else ()
        rules.append(Rule(head, pos, neg))
    return Program(number_rules(rules))


def random_unifiable_pair(rng: random.Random, depth: int = 2) -> Tuple[Atom, Atom]:
    """Two small atoms over p/2 sharing variable names, often unifiable."""
    predicate = PredicateSymbol("p", 2)
    functions = [FunctionSymbol("f", 1), FunctionSymbol("g", 2)]
    constants = [Constant("a"), Constant("b")]
    variables = [Variable(v) for v in VARIABLE_NAMES[:3]]
    left = random_atom(rng, predicate, variables, functions, constants, depth)
    right = random_atom(rng, predicate, variables, functions, constants, depth)
    return left, right


def ground_terms(depth: int, constants: Optional[Sequence[Constant]] = None) -> List[Term]:
    """All ground terms over a, b, f/1, g/2 up to the given depth."""
    constants = list(constants or (Constant("a"), Constant("b")))
    universe: List[Term] = list(constants)
    f, g = FunctionSymbol("f", 1), FunctionSymbol("g", 2)
    for _ in range(depth):
        layer = [Compound(f, (t,)) for t in universe]
        layer += [Compound(g, (s, t)) for s in universe for t in universe]
        universe = list(dict.fromkeys(universe + layer))
    return universe
