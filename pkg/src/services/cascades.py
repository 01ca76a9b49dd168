"""
Cascade engines: the induced-graph model (RETIG), random edge transmission with one or
many seeds (RET / RETMIV) and random edge transmission with exploration (RETWE).
"""

import numpy as np

from src.conf.constants import (
    CASCADE_STALLED,
    CONTAINMENT_VIOLATED,
    UNKNOWN_CASCADE_MODEL,
)
from src.conf.errors import CascadeStalledError, GraphConstructionError, ParameterError
from src.conf.logger import logger
from src.graph.core import Graph, VertexSet, build_from_edges, induced_subgraph
from src.graph.infected import InfectedGraph, CascadeRun
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.services.abstract import AbstractCascadeEngine


class CutEdgeBag:
    """
    Set of edge keys supporting O(1) insertion, removal and uniform choice.
    """

    def __init__(self):
        self._items: list[int] = []
        self._positions: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, key: int) -> bool:
        return key in self._positions

    def add(self, key: int) -> None:
        if key not in self._positions:
            self._positions[key] = len(self._items)
            self._items.append(key)

    def remove(self, key: int) -> None:
        position = self._positions.pop(key)
        last = self._items.pop()
        if position != len(self._items):
            self._items[position] = last
            self._positions[last] = position

    def choose(self, rng: np.random.Generator) -> int:
        return self._items[int(rng.integers(len(self._items)))]


class InducedGraphEngine(AbstractCascadeEngine):
    """
    RETIG: infect one uniformly chosen vertex, then repeatedly infect the far endpoint
    of a uniformly chosen cut edge. The contagious network is the induced subgraph.
    """

    def start(self) -> None:
        self._infected = bytearray(self.graph.node_count)
        self._order: list[int] = []
        self._cut = CutEdgeBag()
        self._infect(int(self.rng.integers(self.graph.node_count)))

    @property
    def infected_count(self) -> int:
        return len(self._order)

    def _infect(self, v: int) -> None:
        n = self.graph.node_count
        self._infected[v] = 1
        self._order.append(v)
        for w in self.graph.neighbors(v).tolist():
            if self._infected[w]:
                self._cut.remove(w * n + v)
            else:
                self._cut.add(v * n + w)

    def step(self) -> bool:
        if not len(self._cut):
            return False
        key = self._cut.choose(self.rng)
        self._infect(key % self.graph.node_count)
        self.rounds += 1
        return True

    def snapshot(
        self, checkpoint: int | None = None, stalled: bool = False
    ) -> InfectedGraph:
        infected = VertexSet(self.graph.node_count, np.array(self._order))
        h, to_underlying = induced_subgraph(self.graph, infected)
        return InfectedGraph(
            graph=h,
            to_underlying=to_underlying,
            rounds_elapsed=self.rounds,
            model=self.params.tag,
            params=self.params,
            seed=self.seed,
            checkpoint=checkpoint,
            stalled=stalled,
        )


class RandomEdgeTransmissionEngine(AbstractCascadeEngine):
    """
    RET / RETMIV: synchronous rounds over a snapshot of the state at the round start.

    Every potential edge with both endpoints infected and not yet in H joins H with
    probability ``alpha``; every edge from an infected to a susceptible vertex transmits
    with probability ``beta``, adding the vertex and the edge. A vertex reached over
    several edges gets all of them.

    Rounds go on while either kind of growth is possible, so a cascade that can no
    longer spread still discovers the remaining edges inside its infected set before
    it stalls.
    """

    def start(self) -> None:
        n = self.graph.node_count
        seeds = self.rng.choice(n, size=self.params.s, replace=False)
        self._infected = np.zeros(n, dtype=bool)
        self._infected[seeds] = True
        self._members = np.sort(seeds).astype(np.int64)
        self._edge_keys = np.zeros(0, dtype=np.int64)
        self._exploration_keys = np.zeros(0, dtype=np.int64)

    @property
    def infected_count(self) -> int:
        return int(self._members.shape[0])

    def step(self) -> bool:
        n = np.int64(self.graph.node_count)
        src, dst = self.graph.incident_edges(self._members)
        inside = self._infected[dst]
        boundary = ~inside
        internal = inside & (src < dst)
        keys = src[internal] * n + dst[internal]
        pending = keys[~np.isin(keys, self._edge_keys, assume_unique=True)]

        spreading = self.params.beta > 0 and boundary.any()
        discovering = self.params.alpha > 0 and pending.shape[0] > 0
        if not (spreading or discovering):
            return False

        discovered = pending[self.rng.random(pending.shape[0]) < self.params.alpha]

        out_src, out_dst = src[boundary], dst[boundary]
        hit = self.rng.random(out_src.shape[0]) < self.params.beta
        out_src, out_dst = out_src[hit], out_dst[hit]
        transmitted = np.minimum(out_src, out_dst) * n + np.maximum(out_src, out_dst)

        reached = np.unique(out_dst)
        self._infected[reached] = True
        self._members = np.union1d(self._members, reached)
        self._edge_keys = np.union1d(
            self._edge_keys, np.concatenate((discovered, transmitted))
        )
        self.rounds += 1
        self._explore()
        return True

    def _explore(self) -> None:
        pass

    def snapshot(
        self, checkpoint: int | None = None, stalled: bool = False
    ) -> InfectedGraph:
        n = np.int64(self.graph.node_count)
        members = self._members

        def to_h(keys: np.ndarray) -> np.ndarray:
            return np.column_stack(
                (np.searchsorted(members, keys // n), np.searchsorted(members, keys % n))
            )

        explored = self._exploration_keys
        outside = ~self.graph.has_edges(explored // n, explored % n)
        return InfectedGraph(
            graph=build_from_edges(members.shape[0], to_h(self._edge_keys)),
            to_underlying=members.copy(),
            rounds_elapsed=self.rounds,
            model=self.params.tag,
            params=self.params,
            seed=self.seed,
            checkpoint=checkpoint,
            stalled=stalled,
            exploration_edges=to_h(explored),
            exploration_edges_outside=int(outside.sum()),
        )


class ExplorationEngine(RandomEdgeTransmissionEngine):
    """
    RETWE: a RET round followed by triadic closure on the contagious network.

    For every vertex ``w`` of H each unordered pair of its H-neighbours is linked with
    probability ``gamma``. The pair count per vertex is drawn as
    ``Binomial(C(deg_H(w), 2), gamma)`` and the pairs are then picked uniformly, which is
    the same law as flipping one coin per pair. Closing edges need not exist in the
    potential graph.
    """

    def _explore(self) -> None:
        gamma = self.params.gamma
        if gamma == 0 or self._edge_keys.size == 0:
            return
        n = np.int64(self.graph.node_count)
        lo, hi = self._edge_keys // n, self._edge_keys % n
        src = np.concatenate((lo, hi))
        dst = np.concatenate((hi, lo))
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        _, starts, counts = np.unique(src, return_index=True, return_counts=True)
        pairs = counts * (counts - 1) // 2
        closures = self.rng.binomial(pairs, gamma)

        found = []
        for i in np.flatnonzero(closures).tolist():
            k = int(counts[i])
            neighbours = dst[starts[i] : starts[i] + k]
            picks = self.rng.choice(int(pairs[i]), size=int(closures[i]), replace=False)
            rows, cols = np.triu_indices(k, 1)
            found.append(neighbours[rows[picks]] * n + neighbours[cols[picks]])
        if not found:
            return
        candidates = np.unique(np.concatenate(found))
        fresh = candidates[~np.isin(candidates, self._edge_keys, assume_unique=True)]
        self._edge_keys = np.union1d(self._edge_keys, fresh)
        self._exploration_keys = np.union1d(self._exploration_keys, fresh)
        logger.debug(f"Exploration closed {fresh.shape[0]} triples")


ENGINES: dict[CascadeModel, type[AbstractCascadeEngine]] = {
    CascadeModel.RETIG: InducedGraphEngine,
    CascadeModel.RET: RandomEdgeTransmissionEngine,
    CascadeModel.RETMIV: RandomEdgeTransmissionEngine,
    CascadeModel.RETWE: ExplorationEngine,
}


def cascade_engine(g: Graph, params: CascadeParams, seed: int) -> AbstractCascadeEngine:
    """
    Engine for the transmission model of ``params``.

    :param g: potential graph
    :type g: Graph
    :param params: transmission parameters
    :type params: CascadeParams
    :param seed: PRNG seed
    :type seed: int
    :return: an engine ready to start
    :rtype: AbstractCascadeEngine
    :raise: ParameterError for models that are not cascades over a potential graph
    """
    engine = ENGINES.get(params.model)
    if engine is None:
        raise ParameterError(detail=f"{UNKNOWN_CASCADE_MODEL}: {params.model}")
    return engine(g, params, seed)


def run_with_snapshots(
    g: Graph, params: CascadeParams, schedule: SnapshotSchedule, seed: int
) -> CascadeRun:
    """
    Run one cascade, capturing H the first time each checkpoint is reached.

    A stalled run is reported in the result rather than raised.

    :param g: potential graph
    :type g: Graph
    :param params: transmission parameters
    :type params: CascadeParams
    :param schedule: infected-count checkpoints
    :type schedule: SnapshotSchedule
    :param seed: PRNG seed
    :type seed: int
    :return: snapshots and stall report
    :rtype: CascadeRun
    """
    return cascade_engine(g, params, seed).run(schedule)


def _run_to_target(g: Graph, params: CascadeParams, seed: int) -> InfectedGraph:
    result = run_with_snapshots(g, params, SnapshotSchedule(checkpoints=[params.m]), seed)
    if result.stalled:
        raise CascadeStalledError(
            detail=f"{CASCADE_STALLED}: {result.reached} of {params.m}",
            reached=result.reached,
            partial=result.partial,
        )
    return result.snapshots[-1]


def retig(g: Graph, m: int, seed: int) -> InfectedGraph:
    """
    Grow H by single infections along uniformly chosen cut edges until ``m`` vertices
    are infected; H is the subgraph of ``g`` induced by them.

    :param g: potential graph
    :type g: Graph
    :param m: target infected count
    :type m: int
    :param seed: PRNG seed
    :type seed: int
    :return: the contagious network
    :rtype: InfectedGraph
    :raise: CascadeStalledError if the seed's component has fewer than ``m`` vertices
    """
    return _run_to_target(g, CascadeParams(model=CascadeModel.RETIG, m=m), seed)


def ret(
    g: Graph, m: int, alpha: float, beta: float, s: int, seed: int
) -> InfectedGraph:
    """
    Random edge transmission from ``s`` distinct uniform seeds, stopping after the first
    round that brings the infected count to at least ``m``.

    :param g: potential graph
    :type g: Graph
    :param m: target infected count
    :type m: int
    :param alpha: internal edge discovery probability
    :type alpha: float
    :param beta: transmission probability
    :type beta: float
    :param s: number of initial seeds
    :type s: int
    :param seed: PRNG seed
    :type seed: int
    :return: the contagious network, tagged RETMIV when ``s > 1``
    :rtype: InfectedGraph
    :raise: CascadeStalledError once no boundary edge can transmit and no internal
        edge is left to discover before ``m`` is reached
    """
    params = CascadeParams(model=CascadeModel.RET, m=m, alpha=alpha, beta=beta, s=s)
    return _run_to_target(g, params, seed)


def retwe(
    g: Graph, m: int, alpha: float, beta: float, gamma: float, seed: int
) -> InfectedGraph:
    """
    RET with a triadic-closure exploration phase after each round.

    :param g: potential graph
    :type g: Graph
    :param m: target infected count
    :type m: int
    :param alpha: internal edge discovery probability
    :type alpha: float
    :param beta: transmission probability
    :type beta: float
    :param gamma: exploration probability per open pair
    :type gamma: float
    :param seed: PRNG seed
    :type seed: int
    :return: the contagious network
    :rtype: InfectedGraph
    :raise: CascadeStalledError as :func:`ret`
    """
    params = CascadeParams(
        model=CascadeModel.RETWE, m=m, alpha=alpha, beta=beta, gamma=gamma
    )
    return _run_to_target(g, params, seed)


def assert_containment(g: Graph, infected: InfectedGraph) -> None:
    """
    Check that every non-exploration edge of H is an edge of the potential graph.

    :param g: potential graph
    :type g: Graph
    :param infected: contagious network grown on ``g``
    :type infected: InfectedGraph
    :raise: GraphConstructionError on the first edge outside ``g``
    """
    edges = infected.graph.edges()
    if infected.exploration_edges.shape[0]:
        size = np.int64(infected.size)
        explored = infected.exploration_edges[:, 0] * size + infected.exploration_edges[:, 1]
        keep = ~np.isin(edges[:, 0] * size + edges[:, 1], explored)
        edges = edges[keep]
    mapped = infected.to_underlying[edges]
    present = g.has_edges(mapped[:, 0], mapped[:, 1])
    if not present.all():
        u, v = mapped[np.argmin(present)].tolist()
        raise GraphConstructionError(detail=f"{CONTAINMENT_VIOLATED}: ({u}, {v})")
