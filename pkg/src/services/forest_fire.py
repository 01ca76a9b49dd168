"""
Forest Fire growth model with pluggable burn distributions.
"""

from collections import deque

import numpy as np

from src.conf.constants import (
    BURN_PROBABILITY_OUT_OF_RANGE,
    BURN_TRIALS_TOO_SMALL,
    NEGATIVE_NODE_COUNT,
)
from src.conf.errors import ParameterError
from src.conf.logger import logger
from src.graph.core import Graph, VertexSet, build_from_edges, induced_subgraph
from src.graph.infected import InfectedGraph
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.services.abstract import AbstractBurnDistribution


def _check_burn_probability(p: float) -> None:
    if not 0.0 <= p < 1.0:
        raise ParameterError(detail=BURN_PROBABILITY_OUT_OF_RANGE)


class GeometricBurn(AbstractBurnDistribution):
    """
    Number of failures before the first success, with mean ``1 / (1 - p)``.
    """

    def __init__(self, p: float):
        _check_burn_probability(p)
        self.p = p
        self._success = 1.0 / (1.0 + self.mean)

    @property
    def mean(self) -> float:
        return 1.0 / (1.0 - self.p)

    def sample(self, rng: np.random.Generator) -> int:
        return int(rng.geometric(self._success)) - 1


class BinomialBurn(AbstractBurnDistribution):
    """
    ``Binomial(trials, mean / trials)`` with the same mean as :class:`GeometricBurn`
    but a bounded tail.
    """

    def __init__(self, p: float, trials: int | None):
        _check_burn_probability(p)
        self.p = p
        self.trials = trials
        if trials is None or trials < self.mean:
            raise ParameterError(detail=BURN_TRIALS_TOO_SMALL)
        self._prob = self.mean / trials

    @property
    def mean(self) -> float:
        return 1.0 / (1.0 - self.p)

    def sample(self, rng: np.random.Generator) -> int:
        return int(rng.binomial(self.trials, self._prob))


def forest_fire(
    n: int,
    p: float,
    seed: int | None = None,
    burn: AbstractBurnDistribution | None = None,
) -> Graph:
    """
    Grow a graph vertex by vertex. Each arrival links to a uniform ambassador, then
    spreads breadth-first: every newly linked vertex burns a random number of its
    not-yet-linked neighbours, and the arrival links to all of them.

    :param n: final number of vertices
    :type n: int
    :param p: burning probability, ``0 <= p < 1``
    :type p: float
    :param seed: PRNG seed
    :type seed: int | None
    :param burn: burn distribution, geometric with mean ``1 / (1 - p)`` by default
    :type burn: AbstractBurnDistribution | None
    :return: the grown graph
    :rtype: Graph
    :raise: ParameterError if ``p`` is outside ``[0, 1)`` or ``n`` is not positive
    """
    _check_burn_probability(p)
    if n < 1:
        raise ParameterError(detail=NEGATIVE_NODE_COUNT)
    burn = burn or GeometricBurn(p)
    rng = np.random.default_rng(seed)
    adjacency: list[list[int]] = [[]]
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        ambassador = int(rng.integers(v))
        linked = [ambassador]
        seen = {ambassador}
        queue = deque([ambassador])
        while queue:
            w = queue.popleft()
            candidates = [x for x in adjacency[w] if x not in seen]
            count = min(burn.sample(rng), len(candidates))
            if count == 0:
                continue
            for i in rng.choice(len(candidates), size=count, replace=False).tolist():
                x = candidates[i]
                seen.add(x)
                linked.append(x)
                queue.append(x)
        adjacency.append(linked)
        for x in linked:
            adjacency[x].append(v)
            edges.append((x, v))
    logger.debug(f"Forest Fire grew {n} vertices and {len(edges)} edges (p={p})")
    return build_from_edges(n, edges)


def growth_snapshots(
    g: Graph, schedule: SnapshotSchedule, params: CascadeParams, seed: int
) -> list[InfectedGraph]:
    """
    Forest Fire graphs as they were when the first ``c`` vertices had arrived, for every
    checkpoint ``c``. Vertex IDs follow arrival order, so each is an induced prefix.

    :param g: graph grown by :func:`forest_fire`
    :type g: Graph
    :param schedule: checkpoints, at most ``g.node_count``
    :type schedule: SnapshotSchedule
    :param params: parameters the graph was grown with
    :type params: CascadeParams
    :param seed: seed the graph was grown with
    :type seed: int
    :return: one snapshot per checkpoint
    :rtype: list[InfectedGraph]
    """
    snapshots = []
    for checkpoint in schedule.checkpoints:
        prefix = VertexSet(g.node_count, np.arange(checkpoint))
        h, to_underlying = induced_subgraph(g, prefix)
        snapshots.append(
            InfectedGraph(
                graph=h,
                to_underlying=to_underlying,
                rounds_elapsed=checkpoint - 1,
                model=CascadeModel.FOREST_FIRE,
                params=params,
                seed=seed,
                checkpoint=checkpoint,
            )
        )
    return snapshots
