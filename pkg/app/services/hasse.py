"""
Hasse diagrams of truncated universes.
"""

import json
import logging

import networkx as nx

from app.services import poset_core
from app.utils.serialization import dumps

logger = logging.getLogger(__name__)


def hasse_graph(kind, universe):
    """
    The cover relation of a universe as a DiGraph.

    Nodes are positions in the universe carrying the condition under
    "condition" and its canonical JSON under "label"; an edge q -> p means p
    is covered by q, i.e. p is an immediate strengthening of q.
    """
    poset = poset_core.get_poset(kind)
    order = nx.DiGraph()
    for i, p in enumerate(universe):
        order.add_node(i, condition=p, label=dumps(p))
    for i, q in enumerate(universe):
        for j, p in enumerate(universe):
            if i != j and poset.leq(q, p):
                order.add_edge(i, j)
    cover = nx.transitive_reduction(order)
    cover.add_nodes_from(order.nodes(data=True))
    logger.debug(f"Hasse diagram: {cover.number_of_nodes()} nodes, {cover.number_of_edges()} edges")
    return cover


def to_dot(graph, name="universe"):
    """DOT text with canonical-JSON labels, nodes and edges in canonical order."""
    labels = {node: data["label"] for node, data in graph.nodes(data=True)}
    ordered = sorted(labels, key=lambda node: labels[node])
    position = {node: k for k, node in enumerate(ordered)}
    lines = [f"digraph {json.dumps(name)} {{"]
    for node in ordered:
        lines.append(f"  n{position[node]} [label={json.dumps(labels[node])}];")
    edges = sorted((position[a], position[b]) for a, b in graph.edges())
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
