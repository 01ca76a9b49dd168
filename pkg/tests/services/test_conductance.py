from fractions import Fraction

import pytest

from src.conf.constants import (
    CONDUCTANCE_TRIVIAL_SET,
    CONDUCTANCE_ZERO_VOLUME,
    VERTEX_SET_GRAPH_MISMATCH,
)
from src.conf.errors import InvalidVertexSetError, UndefinedConductanceError
from src.graph.core import VertexSet, build_from_edges
from src.services.conductance import conductance, conductance_fraction, cut_and_volumes


def test_bridged_cliques(bridged_cliques):
    s = VertexSet(10, range(5))
    assert cut_and_volumes(bridged_cliques, s) == (1, 21, 21)
    assert conductance_fraction(bridged_cliques, s) == Fraction(1, 21)
    assert conductance(bridged_cliques, s) == pytest.approx(1 / 21)


def test_complete_graph_triple(complete6):
    s = VertexSet(6, [0, 1, 2])
    assert conductance_fraction(complete6, s) == Fraction(3, 5)


def test_symmetric_under_complement(bridged_cliques):
    s = VertexSet(10, [0, 1, 7])
    assert conductance_fraction(bridged_cliques, s) == conductance_fraction(
        bridged_cliques, s.complement()
    )


@pytest.mark.parametrize("members", [[], list(range(10))])
def test_trivial_sets(bridged_cliques, members):
    with pytest.raises(UndefinedConductanceError) as e:
        conductance(bridged_cliques, VertexSet(10, members))
    assert e.value.detail == CONDUCTANCE_TRIVIAL_SET


def test_zero_volume_side():
    g = build_from_edges(3, [(1, 2)])
    with pytest.raises(UndefinedConductanceError) as e:
        conductance(g, VertexSet(3, [0]))
    assert e.value.detail == CONDUCTANCE_ZERO_VOLUME


def test_set_of_another_graph(bridged_cliques):
    with pytest.raises(InvalidVertexSetError) as e:
        conductance(bridged_cliques, VertexSet(5, [0]))
    assert e.value.detail == VERTEX_SET_GRAPH_MISMATCH
