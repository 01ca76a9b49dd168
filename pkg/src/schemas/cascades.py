from enum import StrEnum

from pydantic import BaseModel, Field, field_validator, model_validator

from src.conf.constants import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_GAMMA,
    DEFAULT_SEEDS,
    DEFAULT_BURN_PROBABILITY,
    SCHEDULE_NOT_INCREASING,
    SEEDS_REQUIRE_RET,
    TARGET_TOO_SMALL,
)


class CascadeModel(StrEnum):
    """
    Transmission models and the Forest Fire growth model.
    """

    RETIG = "retig"
    RET = "ret"
    RETMIV = "retmiv"
    RETWE = "retwe"
    FOREST_FIRE = "forestfire"


class CascadeParams(BaseModel):
    """
    Transmission parameters.

    :param model: transmission model
    :type model: CascadeModel
    :param m: target number of infected vertices (node count for Forest Fire)
    :type m: int
    :param alpha: probability of discovering an internal edge per round
    :type alpha: float
    :param beta: probability of transmitting across a boundary edge per round
    :type beta: float
    :param gamma: probability of closing an open triple per round
    :type gamma: float
    :param s: number of initial seeds
    :type s: int
    :param p: Forest Fire burning probability
    :type p: float
    """

    model: CascadeModel
    m: int = Field(..., ge=1)
    alpha: float = Field(DEFAULT_ALPHA, ge=0.0, le=1.0)
    beta: float = Field(DEFAULT_BETA, ge=0.0, le=1.0)
    gamma: float = Field(DEFAULT_GAMMA, ge=0.0, le=1.0)
    s: int = Field(DEFAULT_SEEDS, ge=1)
    p: float = Field(DEFAULT_BURN_PROBABILITY, ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def validate_seeds(self) -> "CascadeParams":
        """
        Multiple seeds are a RET/RETMIV feature and cannot exceed the target.

        :return: the validated parameters
        :raise: ValueError if the seed count is not allowed
        """
        if self.s > 1 and self.model not in (CascadeModel.RET, CascadeModel.RETMIV):
            raise ValueError(SEEDS_REQUIRE_RET)
        if self.s > self.m:
            raise ValueError(TARGET_TOO_SMALL)
        return self

    @property
    def tag(self) -> CascadeModel:
        """
        Model tag recorded in metadata: RET with several seeds is RETMIV.

        :return: the effective model
        :rtype: CascadeModel
        """
        if self.model == CascadeModel.RET and self.s > 1:
            return CascadeModel.RETMIV
        return self.model


class SnapshotSchedule(BaseModel):
    """
    Infected-count checkpoints at which a running cascade is captured.

    :param checkpoints: strictly increasing positive counts
    :type checkpoints: list[int]
    """

    checkpoints: list[int] = Field(..., min_length=1)

    @field_validator("checkpoints")
    def validate_increasing(cls, checkpoints: list[int]) -> list[int]:
        """
        Validate checkpoints.

        :param checkpoints: checkpoint counts
        :return: checkpoint counts
        :raise: ValueError if not positive and strictly increasing
        """
        if checkpoints[0] < 1 or any(
            b <= a for a, b in zip(checkpoints, checkpoints[1:])
        ):
            raise ValueError(SCHEDULE_NOT_INCREASING)
        return checkpoints

    @property
    def final(self) -> int:
        return self.checkpoints[-1]


class SnapshotMeta(BaseModel):
    """
    Sidecar metadata written next to every snapshot edge list.

    :param model: effective model tag
    :type model: CascadeModel
    :param params: transmission parameters of the run
    :type params: CascadeParams
    :param seed: cascade seed
    :type seed: int
    :param rounds: rounds (or single infections for RETIG) elapsed at capture
    :type rounds: int
    :param size: actual number of infected vertices
    :type size: int
    :param edges: number of edges of the contagious network
    :type edges: int
    :param checkpoint: checkpoint that triggered the capture, if any
    :type checkpoint: int | None
    :param stalled: whether the run stalled before its final checkpoint
    :type stalled: bool
    :param exploration_edges: edges added by exploration
    :type exploration_edges: int
    :param exploration_edges_outside: exploration edges absent from the potential graph
    :type exploration_edges_outside: int
    """

    model: CascadeModel
    params: CascadeParams
    seed: int
    rounds: int
    size: int
    edges: int
    checkpoint: int | None = None
    stalled: bool = False
    exploration_edges: int = 0
    exploration_edges_outside: int = 0
