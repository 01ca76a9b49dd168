import abc
from pathlib import Path

import pandas as pd
from pydantic import BaseModel

from src.graph.core import Graph
from src.graph.infected import InfectedGraph


class AbstractArtifactRepo(abc.ABC):
    """
    Abstract class for experiment artifact storage
    """

    @property
    @abc.abstractmethod
    def files(self) -> list[str]:
        """
        Returns every file written through this repository

        :return: sorted paths relative to the experiment root
        :rtype: list[str]
        """
        pass

    @abc.abstractmethod
    def write_table(self, name: str, frame: pd.DataFrame) -> Path:
        """
        Writes a metrics table as CSV

        :param name: file name relative to the repository root
        :type name: str
        :param frame: table to write
        :type frame: pd.DataFrame
        :return: written path
        :rtype: Path
        """
        pass

    @abc.abstractmethod
    def write_graph(self, name: str, graph: Graph, comments: list[str] | None = None) -> Path:
        """
        Writes a graph as an edge list

        :param name: file name relative to the repository root
        :type name: str
        :param graph: graph to write
        :type graph: Graph
        :param comments: comment lines for the header
        :type comments: list[str] | None
        :return: written path
        :rtype: Path
        """
        pass

    @abc.abstractmethod
    def write_snapshot(self, label: str, infected: InfectedGraph) -> list[Path]:
        """
        Writes a contagious network with its vertex map and metadata sidecar

        :param label: base name of the three files
        :type label: str
        :param infected: snapshot to write
        :type infected: InfectedGraph
        :return: written paths
        :rtype: list[Path]
        """
        pass

    @abc.abstractmethod
    def write_model(self, name: str, model: BaseModel) -> Path:
        """
        Writes a pydantic model as JSON

        :param name: file name relative to the repository root
        :type name: str
        :param model: model to write
        :type model: BaseModel
        :return: written path
        :rtype: Path
        """
        pass
