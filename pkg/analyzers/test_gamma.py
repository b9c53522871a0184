import random

import networkx as nx
import pytest

from analyzers.gamma import (
    GammaAnalyzer,
    gamma_acyclic_args,
    gamma_analysis,
    is_gamma_acyclic,
    labeled_argument_graph,
    labeled_edges,
    propagation_graph,
    reduced_graph,
)
from analyzers.labels import EPSILON, PathClass, classify_string, neg, pos, reduce_label_string
from analyzers.ranking import compute_AR
from corpus import load_program
from kernel.errors import NotFlatError
from kernel.generators import random_flat_program
from kernel.parser import parse_program
from kernel.terms import FunctionSymbol

F = FunctionSymbol("f", 1)
G = FunctionSymbol("g", 1)
H = FunctionSymbol("h", 1)


def edge_names(edges):
    return {(str(u), str(v), str(label)) for u, v, label in edges}


def names(args):
    return {str(arg) for arg in args}


def test_labeled_graph_of_label_cancel():
    graph = labeled_argument_graph(load_program("label_cancel"))
    assert edge_names(labeled_edges(graph)) == {
        ("b[1]", "s[1]", "e"),
        ("s[1]", "r[1]", "f"),
        ("r[1]", "q[1]", "f"),
        ("q[1]", "s[1]", "~g"),
    }
    assert graph.number_of_nodes() == 4


def test_labeled_graph_of_label_growth():
    edges = edge_names(labeled_edges(labeled_argument_graph(load_program("label_growth"))))
    assert ("r[1]", "q[1]", "g") in edges
    assert ("r[1]", "q[1]", "f") not in edges


def test_labeled_graph_records_rule():
    graph = labeled_argument_graph(load_program("label_cancel"))
    rules = {str(u): data["rule"] for u, v, data in graph.edges(data=True)}
    assert rules["b[1]"] == "r1"
    assert rules["q[1]"] == "r4"


def test_labeled_graph_of_facts_is_edgeless():
    assert labeled_argument_graph(parse_program("p(a). q(f(a)).")).number_of_edges() == 0


def test_labeled_graph_rejects_deep_terms():
    with pytest.raises(NotFlatError):
        labeled_argument_graph(parse_program("p(f(f(X))) :- q(X)."))


def test_propagation_graph_drops_edges_into_limited():
    program = load_program("guarded_cycle")
    delta = propagation_graph(program)
    targets = {str(v) for _, v, _ in labeled_edges(delta)}
    assert "n[1]" not in targets
    assert ("n[1]", "s[1]", "e") in edge_names(labeled_edges(delta))


def test_propagation_graph_extremes():
    program = load_program("label_growth")
    full = sorted(edge_names(labeled_edges(labeled_argument_graph(program))))
    assert sorted(edge_names(labeled_edges(propagation_graph(program, ())))) == full
    assert propagation_graph(program, program.arguments).number_of_edges() == 0


def test_reduced_graph_of_label_growth_has_self_loop():
    reduced = reduced_graph(propagation_graph(load_program("label_growth"), ()))
    s = next(arg for arg in reduced.graph.nodes if str(arg) == "s[1]")
    assert reduced.graph.has_edge(s, s)
    assert {"s[1]", "r[1]"} <= names(reduced.cyclic_nodes())


def test_reduced_graph_of_label_cancel_is_acyclic():
    reduced = reduced_graph(propagation_graph(load_program("label_cancel")))
    assert nx.is_directed_acyclic_graph(reduced.graph)


def test_reduced_graph_of_edgeless_graph():
    delta = nx.MultiDiGraph()
    delta.add_nodes_from(["a", "b"])
    reduced = reduced_graph(delta)
    assert reduced.graph.number_of_edges() == 0
    assert reduced.cyclic_nodes() == []


def test_reduced_graph_does_not_depend_on_split_point():
    delta = nx.MultiDiGraph()
    cycle = [("n0", "n1", pos(F)), ("n1", "n2", pos(G)), ("n2", "n3", neg(G)), ("n3", "n4", neg(F)), ("n4", "n0", pos(H))]
    for u, v, label in cycle:
        delta.add_edge(u, v, label=label)
    reduced = reduced_graph(delta)
    assert set(reduced.cyclic_nodes()) == {"n0", "n1", "n2", "n3", "n4"}


@pytest.mark.parametrize(
    "name,acyclic",
    [
        ("label_cancel", {"b[1]", "s[1]", "r[1]", "q[1]"}),
        ("label_growth", {"b[1]"}),
        ("guarded_cycle", {"b[1]", "s[1]", "r[1]", "q[1]", "n[1]"}),
        ("unsafe_cycle", {"r[1]", "t[1]", "s[1]", "p[2]"}),
    ],
)
def test_gamma_acyclic_args(name, acyclic):
    assert names(gamma_acyclic_args(load_program(name))) == acyclic


def test_is_gamma_acyclic():
    holds, witness = is_gamma_acyclic(load_program("label_cancel"))
    assert holds and witness is None
    holds, _ = is_gamma_acyclic(load_program("guarded_cycle"))
    assert holds


def test_witness_of_label_growth():
    holds, witness = is_gamma_acyclic(load_program("label_growth"))
    assert not holds
    assert str(witness) == "s[1] -> r[1] -> q[1] -> s[1] spelling f g ~g"
    assert reduce_label_string(witness.labels) == (pos(F),)
    assert witness.to_dict()["labels"] == "f g ~g"


def test_gamma_result_report():
    result = gamma_analysis(load_program("label_growth"))
    assert result.verdict == "not-gamma-acyclic"
    assert result.to_dict()["acyclic_args"] == ["b[1]"]


def test_gamma_analyzer_requires_flat_program():
    with pytest.raises(NotFlatError):
        GammaAnalyzer().run(parse_program("p(f(f(X))) :- q(X)."))


def test_restricted_arguments_are_gamma_acyclic():
    rng = random.Random(13)
    for _ in range(200):
        program = random_flat_program(rng, n_rules=rng.randint(1, 6))
        assert compute_AR(program).restricted <= gamma_acyclic_args(program)


LABELS = [EPSILON, pos(F), pos(G), neg(F), neg(G)]


def _random_delta(rng):
    nodes = [f"n{i}" for i in range(rng.randint(1, 7))]
    delta = nx.MultiDiGraph()
    delta.add_nodes_from(nodes)
    for _ in range(rng.randint(0, 10)):
        delta.add_edge(rng.choice(nodes), rng.choice(nodes), label=rng.choice(LABELS))
    return delta


def _increasing_walk_exists(delta, start, max_height):
    """Search (node, reduced word, moved) states for a closed walk through start whose label string is increasing."""
    seen = set()
    pending = [(start, (), False)]
    while pending:
        state = pending.pop()
        if state in seen:
            continue
        seen.add(state)
        node, word, moved = state
        if moved and node == start and word:
            return True
        for _, successor, data in delta.out_edges(node, data=True):
            extended = reduce_label_string(word + (data["label"],))
            # a reduced inverse label never cancels later
            if len(extended) > max_height or any(label.negated for label in extended):
                continue
            pending.append((successor, extended, True))
    return False


def test_reduction_against_walk_search():
    rng = random.Random(17)
    for _ in range(150):
        delta = _random_delta(rng)
        reduced = reduced_graph(delta)
        cyclic = set(reduced.cyclic_nodes())
        for node in delta.nodes:
            if _increasing_walk_exists(delta, node, 8):
                assert node in cyclic
        for node in cyclic:
            edges = reduced.cycle_through(node)
            assert edges[0][0] == node and edges[-1][1] == node
            for (u, v, label), (x, _, _) in zip(edges, edges[1:] + edges[:1]):
                assert v == x
                assert any(data["label"] == label for data in delta.get_edge_data(u, v).values())
            assert classify_string(label for _, _, label in edges) is PathClass.INCREASING
