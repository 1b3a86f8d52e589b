"""Tests for Hasse diagram export."""

from app.models import Truncation
from app.services import poset_core
from app.services.hasse import hasse_graph, to_dot


def cohen_universe():
    return poset_core.enumerate_universe("cohen", Truncation((0, 1), 1, 2))


class TestHasseGraph:
    def test_cover_relation_of_cohen_square(self):
        graph = hasse_graph("cohen", cohen_universe())
        assert graph.number_of_nodes() == 9
        # top covers four singletons, each full condition covers two of them
        assert graph.number_of_edges() == 12

    def test_edges_point_to_strengthenings(self):
        universe = cohen_universe()
        poset = poset_core.get_poset("cohen")
        graph = hasse_graph(poset, universe)
        for a, b in graph.edges():
            assert poset.leq(graph.nodes[a]["condition"], graph.nodes[b]["condition"])


class TestDot:
    def test_canonical_output(self):
        universe = cohen_universe()
        text = to_dot(hasse_graph("cohen", universe), "cohen")
        lines = text.splitlines()
        assert lines[0] == 'digraph "cohen" {'
        assert lines[-1] == "}"
        assert sum(1 for line in lines if "[label=" in line) == 9
        assert sum(1 for line in lines if "->" in line) == 12

    def test_independent_of_universe_order(self):
        universe = cohen_universe()
        forward = to_dot(hasse_graph("cohen", universe))
        backward = to_dot(hasse_graph("cohen", list(reversed(universe))))
        assert forward == backward
