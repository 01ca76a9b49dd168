"""
Contagious networks captured from a running cascade.
"""

from dataclasses import dataclass, field

import numpy as np

from src.graph.core import Graph, VertexSet
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotMeta


def _no_edges() -> np.ndarray:
    return np.zeros((0, 2), dtype=np.int64)


@dataclass(frozen=True)
class InfectedGraph:
    """
    The contagious network H, with the map from its vertex IDs back to the potential graph.

    Attributes:
        graph (Graph): H on the dense IDs ``0..|V_H|-1``.
        to_underlying (np.ndarray): potential-graph ID of every H vertex (increasing).
        rounds_elapsed (int): rounds (single infections for RETIG) at capture.
        model (CascadeModel): effective model tag.
        params (CascadeParams): transmission parameters.
        seed (int): cascade seed.
        checkpoint (int | None): checkpoint that triggered the capture.
        stalled (bool): the run stalled before this capture's target.
        exploration_edges (np.ndarray): edges added by exploration, in H IDs.
        exploration_edges_outside (int): exploration edges absent from the potential graph.
    """

    graph: Graph
    to_underlying: np.ndarray
    rounds_elapsed: int
    model: CascadeModel
    params: CascadeParams
    seed: int
    checkpoint: int | None = None
    stalled: bool = False
    exploration_edges: np.ndarray = field(default_factory=_no_edges)
    exploration_edges_outside: int = 0

    @property
    def size(self) -> int:
        return self.graph.node_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def underlying_set(self, node_count: int) -> VertexSet:
        """
        Infected vertices as a vertex set of the potential graph.

        :param node_count: number of vertices of the potential graph
        :type node_count: int
        :return: the infected set
        :rtype: VertexSet
        """
        return VertexSet(node_count, self.to_underlying)

    def meta(self) -> SnapshotMeta:
        return SnapshotMeta(
            model=self.model,
            params=self.params,
            seed=self.seed,
            rounds=self.rounds_elapsed,
            size=self.size,
            edges=self.edge_count,
            checkpoint=self.checkpoint,
            stalled=self.stalled,
            exploration_edges=int(self.exploration_edges.shape[0]),
            exploration_edges_outside=self.exploration_edges_outside,
        )


@dataclass(frozen=True)
class CascadeRun:
    """
    Result of one cascade run with snapshots.

    Attributes:
        snapshots (list[InfectedGraph]): one capture per reached checkpoint, in order.
        stalled (bool): the run stopped before the final checkpoint.
        reached (int): infected count when the run ended.
        partial (InfectedGraph | None): the last state of a stalled run.
    """

    snapshots: list[InfectedGraph]
    stalled: bool
    reached: int
    partial: InfectedGraph | None = None
