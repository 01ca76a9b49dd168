"""
Connected components, diameter and effective diameter, densification.
"""

import re

import numpy as np
from scipy.sparse.csgraph import connected_components, shortest_path

from src.conf.constants import (
    BFS_CHUNK,
    DIAMETER_EXACT,
    DIAMETER_SAMPLED,
    DIAMETER_BAD_MODE,
    EFFECTIVE_DIAMETER_QUANTILE,
    EMPTY_GRAPH,
)
from src.conf.errors import EmptyGraphError, ParameterError
from src.conf.logger import logger
from src.graph.core import Graph, VertexSet, induced_subgraph
from src.graph.infected import InfectedGraph
from src.schemas.metrics import DiameterReport

SAMPLED_MODE = re.compile(rf"^{DIAMETER_SAMPLED}[:(](\d+)\)?$")


def parse_diameter_mode(mode: str) -> int | None:
    """
    Parse ``exact`` or ``sampled:<k>`` (also ``sampled(<k>)``).

    :param mode: the mode string
    :type mode: str
    :return: ``None`` for exact mode, else the number of BFS sources
    :rtype: int | None
    :raise: ParameterError on anything else
    """
    if mode == DIAMETER_EXACT:
        return None
    match = SAMPLED_MODE.match(mode)
    if match is None or int(match.group(1)) < 1:
        raise ParameterError(detail=DIAMETER_BAD_MODE)
    return int(match.group(1))


def largest_component(g: Graph) -> VertexSet:
    """
    Vertices of the largest connected component; ties go to the component holding the
    smallest vertex ID.

    :param g: the graph
    :type g: Graph
    :return: vertex set of ``g``
    :rtype: VertexSet
    :raise: EmptyGraphError if ``g`` has no vertices
    """
    if g.node_count == 0:
        raise EmptyGraphError(detail=EMPTY_GRAPH)
    _, labels = connected_components(g.to_scipy(), directed=False)
    return VertexSet(g.node_count, np.flatnonzero(labels == np.argmax(np.bincount(labels))))


def _effective_diameter(histogram: np.ndarray, quantile: float) -> float:
    pairs = histogram[1:]
    total = pairs.sum()
    if total == 0:
        return 0.0
    cumulative = np.concatenate(([0.0], np.cumsum(pairs) / total))
    hop = int(np.searchsorted(cumulative, quantile - 1e-12))
    below, above = cumulative[hop - 1], cumulative[hop]
    return (hop - 1) + (quantile - below) / (above - below)


def diameter(g: Graph, mode: str = DIAMETER_EXACT, seed: int | None = 0) -> DiameterReport:
    """
    Diameter and 90% effective diameter of the largest connected component.

    Exact mode runs BFS from every vertex of the component; sampled mode from ``k``
    uniform sources, which makes the diameter a lower bound. The effective diameter
    interpolates linearly between integer hop counts at the 90th percentile of the
    distances between distinct connected pairs.

    :param g: the graph
    :type g: Graph
    :param mode: ``exact`` or ``sampled:<k>``
    :type mode: str
    :param seed: PRNG seed for the sampled sources
    :type seed: int | None
    :return: the report
    :rtype: DiameterReport
    :raise: EmptyGraphError if ``g`` has no vertices
    """
    samples = parse_diameter_mode(mode)
    component = largest_component(g)
    sub, _ = induced_subgraph(g, component)
    size = sub.node_count
    if samples is None or samples >= size:
        sources = np.arange(size)
    else:
        sources = np.sort(np.random.default_rng(seed).choice(size, samples, replace=False))

    matrix = sub.to_scipy()
    histogram = np.zeros(size, dtype=np.int64)
    for start in range(0, sources.shape[0], BFS_CHUNK):
        chunk = sources[start : start + BFS_CHUNK]
        distances = shortest_path(matrix, directed=False, unweighted=True, indices=chunk)
        histogram += np.bincount(distances.astype(np.int64).ravel(), minlength=size)[:size]

    reached = np.flatnonzero(histogram)
    report = DiameterReport(
        exact=sources.shape[0] == size,
        diameter=int(reached[-1]),
        effective_diameter_90=_effective_diameter(histogram, EFFECTIVE_DIAMETER_QUANTILE),
        sample_size=int(sources.shape[0]),
        component_size=size,
    )
    logger.debug(
        f"Diameter {report.diameter}, effective {report.effective_diameter_90:.3f} "
        f"from {report.sample_size} sources on {size} vertices"
    )
    return report


def densification_series(snapshots: list[InfectedGraph]) -> list[tuple[int, float]]:
    """
    Size and average degree ``2|E_H| / |V_H|`` of every snapshot.

    :param snapshots: snapshots of one run, increasing sizes
    :type snapshots: list[InfectedGraph]
    :return: ``(size, average degree)`` pairs
    :rtype: list[tuple[int, float]]
    """
    return [(s.size, 2 * s.edge_count / s.size if s.size else 0.0) for s in snapshots]
