import random

import pytest

import corpus
from analyzers.safety import is_safe
from corpus import CORPUS, GOALS, chain_program, load_goal, load_program
from kernel import Converged, Exhausted, Fuel, bottom_up_eval, classify_predicates, is_flat, parse_program
from kernel.generators import random_database
from transforms import Query, flatten_program, magic_rewrite

NOT_RANGE_RESTRICTED = {"reverse", "length"}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_every_program_loads(name):
    program = load_program(name, strict=name not in NOT_RANGE_RESTRICTED)
    assert len(program) > 0


@pytest.mark.parametrize("name", sorted(GOALS))
def test_goals_use_program_predicates(name):
    program = load_program(name, strict=False)
    assert load_goal(name).predicate in program.predicates


def test_unknown_program():
    with pytest.raises(KeyError):
        load_program("fibonacci")


def test_chain_program():
    program = parse_program(chain_program(3))
    assert [str(rule) for rule in program.rules] == [
        "p(X,X) :- b(X).",
        "q1(f(X),g(X)) :- p(X,X).",
        "q2(X,Y) :- q1(X,Y).",
        "q3(X,Y) :- q2(X,Y).",
        "p(X,Y) :- q3(X,Y).",
    ]
    with pytest.raises(ValueError):
        chain_program(0)


def _safe_flat_programs():
    for name in sorted(CORPUS):
        if name in NOT_RANGE_RESTRICTED:
            continue
        program = load_program(name)
        if program.is_standard and is_flat(program) and is_safe(program, k=2):
            yield name, program


def test_recognized_programs_converge_on_random_databases():
    rng = random.Random(53)
    checked = []
    for name, program in _safe_flat_programs():
        base = sorted(classify_predicates(program).base, key=str)
        for _ in range(5):
            database = random_database(rng, base, n_facts=rng.randint(1, 20),
                                       functions=program.functions, depth=1) if base else ()
            outcome = bottom_up_eval(program, database, Fuel(max_iterations=500, max_atoms=50_000))
            assert isinstance(outcome, Converged), name
        checked.append(name)
    assert {"label_cancel", "lockstep", "delayed_block"} <= set(checked)


def test_growing_program_runs_out_of_fuel():
    program = load_program("query_grow")
    assert not is_safe(program, k=2)
    assert isinstance(bottom_up_eval(program, fuel=Fuel(max_iterations=50)), Exhausted)


@pytest.mark.parametrize("name", ["length", "reverse"])
def test_safe_list_queries_converge(name):
    magic = magic_rewrite(Query(load_goal(name), load_program(name, strict=False)))
    flat = flatten_program(magic.program).program
    assert is_safe(flat)
    outcome = bottom_up_eval(flat, fuel=Fuel(max_iterations=500, max_atoms=50_000))
    assert isinstance(outcome, Converged)
    assert any(atom.predicate == magic.goal.predicate for atom in outcome.model)


def test_missing_resource_file_is_an_error():
    with pytest.raises(OSError):
        corpus._load_program_from_file("absent.lp")
