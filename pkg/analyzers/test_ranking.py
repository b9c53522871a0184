import random

import pytest

from analyzers.ranking import (
    RankingAnalyzer,
    argument_graph,
    check_ranking,
    compute_AR,
    is_argument_restricted,
    omega_step,
)
from corpus import load_program
from kernel.generators import random_flat_program
from kernel.parser import parse_program


def by_name(ranking):
    return {str(arg): value for arg, value in ranking.items()}


def names(args):
    return {str(arg) for arg in args}


def test_argument_graph_of_list_count():
    graph = argument_graph(load_program("list_count"))
    edges = {(str(u), str(v)) for u, v in graph.edges}
    assert edges == {
        ("input[1]", "list[1]"),
        ("list[1]", "list[1]"),
        ("list[1]", "count[1]"),
        ("count[1]", "count[1]"),
        ("count[2]", "count[2]"),
    }


def test_argument_graph_of_facts_has_no_edges():
    graph = argument_graph(parse_program("p(a). q(f(b),c)."))
    assert graph.number_of_edges() == 0
    assert names(graph.nodes) == {"p[1]", "q[1]", "q[2]"}


def test_argument_graph_join():
    graph = argument_graph(parse_program("p(X,Y) :- q(X), r(Y)."))
    assert {(str(u), str(v)) for u, v in graph.edges} == {("q[1]", "p[1]"), ("r[1]", "p[2]")}


def test_omega_steps_on_ranking_chain():
    program = load_program("ranking_chain")
    zero = {arg: 0 for arg in program.arguments}
    first = omega_step(program, zero)
    assert by_name(first) == {"b[1]": 0, "p[1]": 1, "t[1]": 1, "s[1]": 0}
    second = omega_step(program, first)
    assert by_name(second) == {"b[1]": 0, "p[1]": 1, "t[1]": 2, "s[1]": 0}


def test_omega_step_on_facts_is_zero():
    program = parse_program("p(f(a)). q(a,b).")
    zero = {arg: 0 for arg in program.arguments}
    assert omega_step(program, zero) == zero


def test_omega_step_needs_total_ranking():
    program = load_program("ranking_chain")
    with pytest.raises(ValueError):
        omega_step(program, {})


def test_compute_ar_on_ranking_chain():
    result = compute_AR(load_program("ranking_chain"))
    assert result.holds
    assert result.verdict == "argument-restricted"
    assert by_name(result.phi_min) == {"b[1]": 0, "p[1]": 1, "t[1]": 2, "s[1]": 1}
    assert result.iterations == 3
    assert len(result.history) == 5


@pytest.mark.parametrize(
    "name,restricted",
    [
        ("label_cancel", {"b[1]"}),
        ("guarded_cycle", {"b[1]", "n[1]"}),
        ("unsafe_cycle", {"r[1]", "t[1]", "s[1]", "p[2]"}),
    ],
)
def test_compute_ar_restricted_sets(name, restricted):
    result = compute_AR(load_program(name))
    assert names(result.restricted) == restricted
    assert not result.holds


def test_self_blocking_pair_is_unrestricted():
    result = compute_AR(load_program("self_blocking"))
    assert {"p[1]", "p[2]"} <= names(result.unrestricted)
    assert not is_argument_restricted(load_program("self_blocking"))


def test_history_is_non_decreasing():
    result = compute_AR(load_program("label_cancel"))
    for before, after in zip(result.history, result.history[1:]):
        assert all(before[arg] <= after[arg] for arg in before)


def test_omega_is_monotone_on_random_programs():
    rng = random.Random(7)
    for _ in range(100):
        program = random_flat_program(rng, n_rules=rng.randint(1, 5))
        top = len(program.arguments)
        low = {arg: rng.randint(0, top) for arg in program.arguments}
        high = {arg: rng.randint(value, top) for arg, value in low.items()}
        stepped_low = omega_step(program, low)
        stepped_high = omega_step(program, high)
        assert all(stepped_low[arg] <= stepped_high[arg] for arg in program.arguments)


def test_fixpoint_ranks_satisfy_inequality():
    rng = random.Random(11)
    for _ in range(100):
        program = random_flat_program(rng, n_rules=rng.randint(1, 6))
        result = compute_AR(program)
        assert check_ranking(program, result.phi_min) == []


def test_check_ranking_reports_violation():
    program = load_program("ranking_chain")
    ranks = {arg: 0 for arg in program.arguments}
    violations = check_ranking(program, ranks)
    assert violations
    assert {v.kind for v in violations} == {"ranking-violation"}
    assert {v.rule_id for v in violations} == {"r1", "r2"}


def test_ranking_analyzer_traces():
    analyzer = RankingAnalyzer()
    result = analyzer.run(load_program("ranking_chain"))
    assert result.holds
    assert any("ranking fixpoint" in entry.message for entry in analyzer.get_history())
