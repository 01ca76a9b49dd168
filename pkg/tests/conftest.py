import itertools

import pytest

from src.graph.core import Graph, build_from_edges


def complete_edges(vertices: list[int]) -> list[tuple[int, int]]:
    return list(itertools.combinations(vertices, 2))


def two_cliques_bridged() -> Graph:
    edges = complete_edges(list(range(5))) + complete_edges(list(range(5, 10))) + [(4, 5)]
    return build_from_edges(10, edges)


def path_graph(n: int) -> Graph:
    return build_from_edges(n, [(i, i + 1) for i in range(n - 1)])


@pytest.fixture
def bridged_cliques() -> Graph:
    return two_cliques_bridged()


@pytest.fixture
def complete6() -> Graph:
    return build_from_edges(6, complete_edges(list(range(6))))


@pytest.fixture
def path10() -> Graph:
    return path_graph(10)
