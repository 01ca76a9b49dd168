from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel

from src.conf.constants import (
    EDGE_LIST_SUFFIX,
    FLOAT_FORMAT,
    SIDECAR_SUFFIX,
    VERTEX_MAP_SUFFIX,
)
from src.graph.core import Graph
from src.graph.edge_list import write_edge_list
from src.graph.infected import InfectedGraph
from src.repository.abstract import AbstractArtifactRepo


class FileArtifactRepo(AbstractArtifactRepo):
    """
    This class is an implementation of the AbstractArtifactRepo interface writing to a local directory.
    """

    def __init__(self, root: Path, base: Path | None = None):
        """
        Constructor.

        :param root: directory the names are resolved against
        :param base: experiment root the recorded paths are relative to, ``root`` by default
        """
        self.root = Path(root)
        self.base = Path(base) if base is not None else self.root
        self._written: set[Path] = set()

    @property
    def files(self) -> list[str]:
        return sorted(p.relative_to(self.base).as_posix() for p in self._written)

    def _target(self, name: str) -> Path:
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        self._written.add(path)
        return path

    def write_table(self, name: str, frame: pd.DataFrame) -> Path:
        path = self._target(name)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return path

    def write_graph(self, name: str, graph: Graph, comments: list[str] | None = None) -> Path:
        return write_edge_list(graph, self._target(name), comments)

    def write_snapshot(self, label: str, infected: InfectedGraph) -> list[Path]:
        meta = infected.meta()
        edges = self.write_graph(
            label + EDGE_LIST_SUFFIX,
            infected.graph,
            [f"model={meta.model}", f"size={meta.size}", f"rounds={meta.rounds}"],
        )
        vertices = self._target(label + VERTEX_MAP_SUFFIX)
        np.savetxt(vertices, infected.to_underlying, fmt="%d")
        sidecar = self.write_model(label + SIDECAR_SUFFIX, meta)
        return [edges, vertices, sidecar]

    def write_model(self, name: str, model: BaseModel) -> Path:
        path = self._target(name)
        path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path
