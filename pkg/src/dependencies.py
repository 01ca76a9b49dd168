"""
This module contains the factories choosing concrete implementations.
"""

from pathlib import Path

from src.graph.core import Graph
from src.repository.abstract import AbstractArtifactRepo
from src.repository.artifacts import FileArtifactRepo
from src.schemas.cascades import CascadeParams
from src.services.abstract import AbstractBurnDistribution, AbstractCascadeEngine
from src.services.cascades import cascade_engine
from src.services.forest_fire import BinomialBurn, GeometricBurn


def get_cascade_engine(g: Graph, params: CascadeParams, seed: int) -> AbstractCascadeEngine:
    """
    Function to get the cascade engine for a transmission model.

    :return: engine inherited from AbstractCascadeEngine
    """
    return cascade_engine(g, params, seed)


def get_burn_distribution(
    kind: str, p: float, trials: int | None = None
) -> AbstractBurnDistribution:
    """
    Function to get a Forest Fire burn distribution.

    :return: burn distribution inherited from AbstractBurnDistribution
    """
    if kind == "binomial":
        return BinomialBurn(p, trials)
    return GeometricBurn(p)


def get_artifact_repository(root: Path, base: Path | None = None) -> AbstractArtifactRepo:
    """
    Function to get the artifact repository.

    :return: repository inherited from AbstractArtifactRepo
    """
    return FileArtifactRepo(root, base)
