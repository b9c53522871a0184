import networkx as nx

from analyzers.activation import activation_graph
from analyzers.dot import to_dot
from analyzers.gamma import labeled_argument_graph
from analyzers.ranking import argument_graph
from corpus import load_program
from kernel.parser import parse_program


def test_labeled_graph_dot():
    text = to_dot(labeled_argument_graph(load_program("label_cancel")), "labeled")
    lines = text.splitlines()
    assert lines[0] == 'digraph "labeled" {'
    assert lines[-1] == "}"
    assert sum(1 for line in lines if "->" in line) == 4
    assert sum(1 for line in lines if line.strip().endswith(";") and "->" not in line) == 4
    assert '  "q[1]" -> "s[1]" [label="~g"];' in lines
    assert '  "b[1]" -> "s[1]" [label="e"];' in lines


def test_activation_graph_dot():
    text = to_dot(activation_graph(load_program("self_blocking")), "activation")
    assert text == 'digraph "activation" {\n  "r1";\n  "r2";\n  "r1" -> "r2";\n}\n'


def test_facts_give_isolated_nodes():
    text = to_dot(argument_graph(parse_program("p(a). q(b,c).")))
    assert "->" not in text
    assert '  "q[2]";' in text.splitlines()


def test_output_is_stable():
    program = load_program("guarded_cycle")
    assert to_dot(labeled_argument_graph(program)) == to_dot(labeled_argument_graph(program))


def test_quotes_are_escaped():
    graph = nx.DiGraph()
    graph.add_edge('a"b', "c")
    assert '"a\\"b" -> "c";' in to_dot(graph)
