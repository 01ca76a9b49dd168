import abc

import numpy as np

from src.conf.constants import TARGET_TOO_LARGE, SCHEDULE_EXCEEDS_TARGET
from src.conf.errors import ParameterError
from src.conf.logger import logger
from src.graph.core import Graph
from src.graph.infected import InfectedGraph, CascadeRun
from src.schemas.cascades import CascadeParams, SnapshotSchedule


class AbstractCascadeEngine(abc.ABC):
    """
    Abstract class for cascade engines growing a contagious network over a potential graph.
    """

    def __init__(self, graph: Graph, params: CascadeParams, seed: int):
        """
        Constructor.

        :param graph: potential graph
        :type graph: Graph
        :param params: transmission parameters
        :type params: CascadeParams
        :param seed: PRNG seed; the whole run draws from one generator
        :type seed: int
        """
        if params.m > graph.node_count:
            raise ParameterError(detail=TARGET_TOO_LARGE)
        self.graph = graph
        self.params = params
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.rounds = 0

    @property
    @abc.abstractmethod
    def infected_count(self) -> int:
        """
        Number of infected vertices.

        :return: current size of the contagious network
        :rtype: int
        """
        pass

    @abc.abstractmethod
    def start(self) -> None:
        """
        Infect the initial seed vertices.

        :return: None
        """
        pass

    @abc.abstractmethod
    def step(self) -> bool:
        """
        Advance by one infection (RETIG) or one synchronous round (RET family).

        :return: False if the cascade can no longer grow
        :rtype: bool
        """
        pass

    @abc.abstractmethod
    def snapshot(
        self, checkpoint: int | None = None, stalled: bool = False
    ) -> InfectedGraph:
        """
        Capture the current contagious network.

        :param checkpoint: checkpoint that triggered the capture
        :type checkpoint: int | None
        :param stalled: whether the run stalled
        :type stalled: bool
        :return: immutable snapshot
        :rtype: InfectedGraph
        """
        pass

    def run(self, schedule: SnapshotSchedule) -> CascadeRun:
        """
        Start the cascade and capture a snapshot the first time each checkpoint is reached.

        The run stops at the final checkpoint or when the cascade stalls.

        :param schedule: checkpoints to capture
        :type schedule: SnapshotSchedule
        :return: captured snapshots and stall report
        :rtype: CascadeRun
        :raise: ParameterError if the final checkpoint exceeds the target size
        """
        if schedule.final > self.params.m:
            raise ParameterError(detail=SCHEDULE_EXCEEDS_TARGET)
        logger.debug(
            f"Starting {self.params.tag} on {self.graph!r} towards {schedule.final}"
        )
        self.start()
        pending = list(schedule.checkpoints)
        snapshots = []
        while True:
            while pending and self.infected_count >= pending[0]:
                snapshots.append(self.snapshot(checkpoint=pending.pop(0)))
                logger.debug(
                    f"Captured {self.infected_count} infected after {self.rounds} rounds"
                )
            if not pending:
                return CascadeRun(snapshots, stalled=False, reached=self.infected_count)
            if not self.step():
                logger.warning(
                    f"{self.params.tag} stalled at {self.infected_count} infected "
                    f"(next checkpoint {pending[0]})"
                )
                return CascadeRun(
                    snapshots,
                    stalled=True,
                    reached=self.infected_count,
                    partial=self.snapshot(stalled=True),
                )


class AbstractBurnDistribution(abc.ABC):
    """
    Abstract class for the number of neighbours a Forest Fire arrival burns through.
    """

    @property
    @abc.abstractmethod
    def mean(self) -> float:
        """
        Expected number of burned neighbours.

        :return: the mean
        :rtype: float
        """
        pass

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator) -> int:
        """
        Draw the number of neighbours to burn.

        :param rng: random generator
        :type rng: np.random.Generator
        :return: a non-negative integer
        :rtype: int
        """
        pass
