from datetime import datetime
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from src.conf.constants import (
    DEFAULT_SNAPSHOTS,
    DIAMETER_BAD_MODE,
    DIAMETER_EXACT,
    FIT_BAD_RANGE,
    LOG_BIN_RATIO,
    MODEL_PCM,
    NCP_SCOPE_LARGEST,
    NCP_SCOPE_WHOLE,
    RNG_ALGORITHM,
)
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotMeta, SnapshotSchedule
from src.schemas.generators import GeneratorParams
from src.schemas.metrics import NcpConfig

PIPELINE_CASCADE = "cascade"
PIPELINE_THEOREM = "theorem"


class ExperimentSection(BaseModel):
    """
    ``[experiment]`` section.

    :param name: experiment name, used as the default output directory
    :type name: str
    :param kind: pipeline kind, ``cascade`` or ``theorem``
    :type kind: str
    :param runs: number of independent runs
    :type runs: int
    :param base_seed: seed of run 0; run ``i`` uses ``base_seed + i``
    :type base_seed: int
    :param output_dir: output directory, relative to the output root unless absolute
    :type output_dir: str | None
    :param workers: parallel runs, the settings default when omitted
    :type workers: int | None
    """

    name: str
    kind: Literal["cascade", "theorem"] = PIPELINE_CASCADE
    runs: int = Field(1, ge=1)
    base_seed: int = 0
    output_dir: str | None = None
    workers: int | None = Field(None, ge=1)


class GeneratorSection(GeneratorParams):
    """
    ``[generator]`` section; the seed is derived per run and ignored here.
    """


class CascadeSection(CascadeParams):
    """
    ``[cascade]`` section.

    :param burn: Forest Fire burn distribution
    :type burn: str
    :param burn_trials: trials of the binomial burn distribution
    :type burn_trials: int | None
    """

    burn: Literal["geometric", "binomial"] = "geometric"
    burn_trials: int | None = Field(None, ge=1)

    def params(self) -> CascadeParams:
        return CascadeParams(**self.model_dump(exclude={"burn", "burn_trials"}))


class MetricsSection(BaseModel):
    """
    ``[metrics]`` section: which metrics to compute on every snapshot.
    """

    degrees: bool = True
    fit_range: tuple[float, float] | None = None
    log_bin_ratio: float = Field(LOG_BIN_RATIO, gt=1.0)
    clustering: bool = False
    diameter: str | None = None
    densify: bool = True
    ncp: bool = False
    ncp_scope: Literal["whole", "largest_component"] = NCP_SCOPE_LARGEST
    ncp_config: NcpConfig = Field(default_factory=NcpConfig)
    underlying: bool = False

    @field_validator("diameter")
    def validate_diameter(cls, mode: str | None) -> str | None:
        """
        Validate the diameter mode.

        :param mode: ``exact``, ``sampled:<k>`` or empty
        :return: the mode, ``None`` when empty
        :raise: ValueError on an unknown mode
        """
        if not mode:
            return None
        if mode != DIAMETER_EXACT:
            prefix, _, count = mode.partition(":")
            if prefix != "sampled" or not count.isdigit() or int(count) < 1:
                raise ValueError(DIAMETER_BAD_MODE)
        return mode

    @field_validator("fit_range")
    def validate_fit_range(
        cls, fit_range: tuple[float, float] | None
    ) -> tuple[float, float] | None:
        if fit_range is not None and not 1 <= fit_range[0] < fit_range[1]:
            raise ValueError(FIT_BAD_RANGE)
        return fit_range


class ExperimentConfig(BaseModel):
    """
    A complete experiment: what to generate, how to spread, when to capture and what to measure.
    """

    experiment: ExperimentSection
    generator: GeneratorSection | None = None
    cascade: CascadeSection
    snapshots: SnapshotSchedule = Field(
        default_factory=lambda: SnapshotSchedule(checkpoints=list(DEFAULT_SNAPSHOTS))
    )
    metrics: MetricsSection = Field(default_factory=MetricsSection)

    @model_validator(mode="after")
    def validate_pipeline(self) -> "ExperimentConfig":
        """
        Cross-section checks, reporting all violations at once.

        :return: the validated config
        :raise: ValueError listing every violation
        """
        problems = []
        forest_fire = self.cascade.model == CascadeModel.FOREST_FIRE
        if self.generator is None and not forest_fire:
            problems.append("generator: required unless cascade.model is forestfire")
        if self.generator is not None and self.cascade.m > self.generator.n:
            problems.append("cascade.m: exceeds generator.n")
        if self.snapshots.final > self.cascade.m:
            problems.append("snapshots.checkpoints: last checkpoint exceeds cascade.m")
        if self.cascade.burn == "binomial" and self.cascade.burn_trials is None:
            problems.append("cascade.burn_trials: required for the binomial burn")
        if self.experiment.kind == PIPELINE_THEOREM:
            if self.generator is None or self.generator.model != MODEL_PCM:
                problems.append("generator.model: theorem pipeline requires pcm")
            if self.cascade.model != CascadeModel.RETIG:
                problems.append("cascade.model: theorem pipeline requires retig")
            if self.generator is not None and self.generator.r <= 0:
                problems.append("generator.r: theorem pipeline requires r > 0")
        if problems:
            raise ValueError("; ".join(problems))
        return self

    @property
    def ncp_whole(self) -> bool:
        return self.metrics.ncp_scope == NCP_SCOPE_WHOLE


class RunRecord(BaseModel):
    """
    Manifest entry of one run.
    """

    index: int
    seed: int
    generator_seed: int
    cascade_seed: int
    stalled: bool = False
    reached: int | None = None
    error: str | None = None
    snapshots: list[SnapshotMeta] = Field(default_factory=list)
    files: list[str] = Field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return self.stalled or self.error is not None


class Manifest(BaseModel):
    """
    Everything needed to audit and replay an experiment.
    """

    name: str
    config: ExperimentConfig
    config_sha256: str
    rng: str = RNG_ALGORITHM
    seed_derivation: str = "run seed = base_seed + index; generator and cascade seeds spawned by SeedSequence"
    versions: dict[str, str]
    runs: list[RunRecord]
    files: list[str]
    created_at: datetime

    @property
    def flagged(self) -> bool:
        return any(run.flagged for run in self.runs)
