"""
DOT rendering of argument, labeled, propagation, reduced and activation graphs.

Node order follows the graph's insertion order (program order), edges are
sorted by endpoint position and then by label, so output is stable.
"""

from typing import Dict, List, Optional, Tuple

import networkx as nx


def _quote(value) -> str:
    return '"' + str(value).replace('"', '\\"') + '"'


def _edges(graph: nx.DiGraph) -> List[Tuple[object, object, Optional[str]]]:
    position: Dict[object, int] = {node: n for n, node in enumerate(graph.nodes)}
    rendered = [
        (u, v, None if data.get("label") is None else str(data["label"]))
        for u, v, data in graph.edges(data=True)
    ]
    return sorted(rendered, key=lambda e: (position[e[0]], position[e[1]], e[2] or ""))


def to_dot(graph: nx.DiGraph, name: str = "G") -> str:
    """
    Render a graph as DOT text.

    Edge 'label' attributes are printed with str(), which gives e, f and ~f
    for labeled argument graphs.

    Args:
        graph: DiGraph or MultiDiGraph
        name: Graph name

    Returns:
        DOT source ending with a newline
    """
    out = f"digraph {_quote(name)} {{\n"
    for node in graph.nodes:
        out += f"  {_quote(node)};\n"
    for u, v, label in _edges(graph):
        if label is None:
            out += f"  {_quote(u)} -> {_quote(v)};\n"
        else:
            out += f"  {_quote(u)} -> {_quote(v)} [label={_quote(label)}];\n"
    out += "}\n"
    return out
