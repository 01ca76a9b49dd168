from fractions import Fraction

import numpy as np

from src.conf.constants import (
    CONDUCTANCE_TRIVIAL_SET,
    CONDUCTANCE_ZERO_VOLUME,
    VERTEX_SET_GRAPH_MISMATCH,
)
from src.conf.errors import InvalidVertexSetError, UndefinedConductanceError
from src.graph.core import Graph, VertexSet


def cut_and_volumes(g: Graph, s: VertexSet) -> tuple[int, int, int]:
    """
    Cut size of ``s`` and the degree sums of both sides.

    :param g: the graph
    :type g: Graph
    :param s: vertex set of ``g``
    :type s: VertexSet
    :return: ``(|E(S, S')|, vol(S), vol(S'))``
    :rtype: tuple[int, int, int]
    :raise: InvalidVertexSetError if ``s`` refers to another graph
    """
    if s.node_count != g.node_count:
        raise InvalidVertexSetError(detail=VERTEX_SET_GRAPH_MISMATCH)
    _, dst = g.incident_edges(s.members)
    cut = int(np.count_nonzero(~s.mask[dst]))
    volume = int(dst.shape[0])
    return cut, volume, 2 * g.edge_count - volume


def conductance_fraction(g: Graph, s: VertexSet) -> Fraction:
    """
    Exact conductance ``|E(S, S')| / min(vol(S), vol(S'))``.

    :param g: the graph
    :type g: Graph
    :param s: a non-empty proper vertex subset
    :type s: VertexSet
    :return: the conductance as a fraction
    :rtype: Fraction
    :raise: UndefinedConductanceError if ``s`` is empty, all of ``V`` or a side has zero degree
    """
    if s.size == 0 or s.size == g.node_count:
        raise UndefinedConductanceError(detail=CONDUCTANCE_TRIVIAL_SET)
    cut, inside, outside = cut_and_volumes(g, s)
    denominator = min(inside, outside)
    if denominator == 0:
        raise UndefinedConductanceError(detail=CONDUCTANCE_ZERO_VOLUME)
    return Fraction(cut, denominator)


def conductance(g: Graph, s: VertexSet) -> float:
    """
    Conductance of ``s``, a value in ``[0, 1]`` symmetric under complement.

    :param g: the graph
    :type g: Graph
    :param s: a non-empty proper vertex subset
    :type s: VertexSet
    :return: the conductance
    :rtype: float
    :raise: UndefinedConductanceError as :func:`conductance_fraction`
    """
    value = conductance_fraction(g, s)
    return value.numerator / value.denominator
