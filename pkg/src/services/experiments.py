"""
Config-driven experiment pipelines: generate, spread, capture, measure, aggregate.

Runs are independent and may execute in worker processes; each writes only below its own
``run-NNN`` directory, and the parent process writes the aggregates and the manifest.
"""

import hashlib
import platform
import tomllib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import metadata, resources
from itertools import repeat
from pathlib import Path

import pandas as pd
from pydantic import ValidationError

from src.conf.config import settings
from src.conf.constants import (
    AGGREGATE_DIR,
    CLIQUISH_CSV,
    CLUSTERING_CSV,
    CONFIG_INVALID,
    CONFIG_NOT_FOUND,
    DENSIFY_CSV,
    DIAMETER_CSV,
    FITS_CSV,
    MANIFEST_FILE,
    NCP_DIPS_CSV,
    OCCUPANCY_CSV,
    PLOTS_DIR,
    RUN_DIR_TEMPLATE,
    THEOREM_CSV,
    YULE_CSV,
)
from src.conf.errors import ConfigValidationError, FitUndefinedError
from src.conf.logger import logger
from src.dependencies import (
    get_artifact_repository,
    get_burn_distribution,
    get_cascade_engine,
)
from src.graph.core import Graph, induced_subgraph
from src.graph.infected import InfectedGraph
from src.repository.abstract import AbstractArtifactRepo
from src.schemas.cascades import CascadeModel
from src.schemas.experiments import (
    PIPELINE_THEOREM,
    ExperimentConfig,
    Manifest,
    RunRecord,
)
from src.schemas.metrics import DegreeHistogram, DiameterReport, NcpDip, SlopeFit
from src.schemas.oracles import TheoremRun
from src.services.cascades import assert_containment
from src.services.degrees import (
    average_clustering,
    degree_distribution,
    fit_power_law_slope,
    log_binned,
)
from src.services.diameter import densification_series, diameter, largest_component
from src.services.forest_fire import forest_fire, growth_snapshots
from src.services.generators import generate
from src.services.ncp import ncp_dip, ncp_heuristic
from src.services.oracles import summarize_theorem, theorem_run
from src.services.plot_data import (
    degrees_table,
    densify_table,
    diameter_table,
    emit_plot_data,
    fits_table,
    ncp_dips_table,
    ncp_table,
    occupancy_table,
)
from src.services.seeding import run_seed, spawn_seeds

VERSIONED_PACKAGES = ["numpy", "scipy", "networkx", "pandas", "pydantic"]


@dataclass
class Measurement:
    histogram: DegreeHistogram | None = None
    fit: SlopeFit | None = None
    diameter: DiameterReport | None = None
    dip: NcpDip | None = None
    clustering: float | None = None


@dataclass
class RunOutcome:
    """
    What a worker hands back: the manifest record plus in-memory histograms for aggregation.
    """

    record: RunRecord
    histograms: dict[int, DegreeHistogram] = field(default_factory=dict)
    dips: list[tuple[str, NcpDip]] = field(default_factory=list)
    theorem: TheoremRun | None = None


def validate_config(data: dict) -> ExperimentConfig:
    """
    Validate a parsed config.

    :param data: parsed TOML
    :type data: dict
    :return: the config
    :rtype: ExperimentConfig
    :raise: ConfigValidationError listing every violation
    """
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        violations = [
            f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
            for error in e.errors()
        ]
        raise ConfigValidationError(detail=CONFIG_INVALID, violations=violations)


def load_config(source: str | Path) -> ExperimentConfig:
    """
    Load a config from a TOML file or by the name of a bundled config.

    :param source: file path or bundled name such as ``fig1b-desk``
    :type source: str | Path
    :return: the validated config
    :rtype: ExperimentConfig
    :raise: ConfigValidationError if not found, not TOML or invalid
    """
    path = Path(source)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
    else:
        bundled = resources.files("src.configs").joinpath(f"{source}.toml")
        if not bundled.is_file():
            raise ConfigValidationError(detail=f"{CONFIG_NOT_FOUND}: {source}")
        text = bundled.read_text(encoding="utf-8")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigValidationError(detail=CONFIG_INVALID, violations=[str(e)])
    return validate_config(data)


def bundled_configs() -> list[str]:
    return sorted(
        entry.name.removesuffix(".toml")
        for entry in resources.files("src.configs").iterdir()
        if entry.name.endswith(".toml")
    )


def config_digest(config: ExperimentConfig) -> str:
    return hashlib.sha256(config.model_dump_json().encode("utf-8")).hexdigest()


def output_directory(config: ExperimentConfig, output_root: Path | None = None) -> Path:
    """
    Directory of an experiment: ``output_dir`` if absolute, else below the output root.

    :param config: the config
    :type config: ExperimentConfig
    :param output_root: overrides the configured output root
    :type output_root: Path | None
    :return: the directory
    :rtype: Path
    """
    target = Path(config.experiment.output_dir or config.experiment.name)
    if target.is_absolute():
        return target
    return Path(output_root or settings.output_root) / target


def _versions() -> dict[str, str]:
    versions = {"python": platform.python_version()}
    for package in VERSIONED_PACKAGES + ["contagion-lab"]:
        try:
            versions[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            versions[package] = "unknown"
    return versions


def _fit_or_none(
    hist: DegreeHistogram, fit_range: tuple[float, float], ratio: float
) -> SlopeFit | None:
    try:
        return fit_power_law_slope(log_binned(hist, ratio), fit_range, hist)
    except FitUndefinedError as e:
        logger.info(f"Fit undefined: {e.detail}")
        return None


def measure(
    config: ExperimentConfig, repo: AbstractArtifactRepo, label: str, graph: Graph, seed: int
) -> Measurement:
    """
    Compute the selected metrics of one graph and write its per-graph CSVs.

    :param config: experiment config
    :type config: ExperimentConfig
    :param repo: run repository
    :type repo: AbstractArtifactRepo
    :param label: checkpoint or ``underlying``, used in file names
    :type label: str
    :param graph: graph to measure
    :type graph: Graph
    :param seed: seed of sampled metrics
    :type seed: int
    :return: the measurement
    :rtype: Measurement
    """
    metrics = config.metrics
    result = Measurement()
    if metrics.degrees:
        result.histogram = degree_distribution(graph)
        repo.write_table(f"degrees-{label}.csv", degrees_table(result.histogram))
        if metrics.fit_range is not None:
            result.fit = _fit_or_none(result.histogram, metrics.fit_range, metrics.log_bin_ratio)
    if graph.node_count == 0:
        return result
    if metrics.clustering:
        result.clustering = average_clustering(graph)
    if metrics.diameter:
        result.diameter = diameter(graph, metrics.diameter, seed)
    if metrics.ncp:
        target = graph
        if not config.ncp_whole:
            target, _ = induced_subgraph(graph, largest_component(graph))
        curve = ncp_heuristic(
            target,
            metrics.ncp_config.model_copy(update={"seed": seed}),
            scope=metrics.ncp_scope,
        )
        repo.write_table(f"ncp-{label}.csv", ncp_table(curve))
        if curve.bins:
            result.dip = ncp_dip(curve)
    return result


def _cascade_snapshots(
    config: ExperimentConfig,
    repo: AbstractArtifactRepo,
    record: RunRecord,
) -> tuple[list[InfectedGraph], Graph | None]:
    cascade = config.cascade
    if cascade.model == CascadeModel.FOREST_FIRE:
        burn = get_burn_distribution(cascade.burn, cascade.p, cascade.burn_trials)
        grown = forest_fire(cascade.m, cascade.p, record.cascade_seed, burn)
        return growth_snapshots(grown, config.snapshots, cascade.params(), record.cascade_seed), None

    g = generate(config.generator.model_copy(update={"seed": record.generator_seed}))
    engine = get_cascade_engine(g, cascade.params(), record.cascade_seed)
    result = engine.run(config.snapshots)
    for snapshot in result.snapshots:
        assert_containment(g, snapshot)
    record.stalled = result.stalled
    record.reached = result.reached
    if result.stalled:
        repo.write_snapshot("partial", result.partial)
        record.snapshots.append(result.partial.meta())
    return result.snapshots, g


def _run_cascade(config: ExperimentConfig, repo: AbstractArtifactRepo, outcome: RunOutcome) -> None:
    record = outcome.record
    snapshots, g = _cascade_snapshots(config, repo, record)
    fits: list[tuple[str, SlopeFit | None]] = []
    diameters: list[tuple[int, DiameterReport]] = []
    clustering: list[tuple[str, int, float]] = []

    def collect(label: str, measured: Measurement, size: int) -> None:
        if measured.histogram is not None and config.metrics.fit_range is not None:
            fits.append((f"degrees-{label}", measured.fit))
        if measured.dip is not None:
            outcome.dips.append((f"{RUN_DIR_TEMPLATE.format(index=record.index)}-{label}", measured.dip))
        if measured.clustering is not None:
            clustering.append((label, size, measured.clustering))

    if g is not None and config.metrics.underlying:
        collect("underlying", measure(config, repo, "underlying", g, record.seed), g.node_count)

    for snapshot in snapshots:
        label = str(snapshot.checkpoint)
        repo.write_snapshot(f"snapshot-{label}", snapshot)
        if snapshot.meta() not in record.snapshots:
            record.snapshots.append(snapshot.meta())
        measured = measure(config, repo, label, snapshot.graph, record.seed)
        if measured.histogram is not None:
            outcome.histograms[snapshot.checkpoint] = measured.histogram
        if measured.diameter is not None:
            diameters.append((snapshot.size, measured.diameter))
        collect(label, measured, snapshot.size)

    if fits:
        repo.write_table(FITS_CSV, fits_table(fits))
    if diameters:
        repo.write_table(DIAMETER_CSV, diameter_table(diameters))
    if config.metrics.densify and snapshots:
        repo.write_table(DENSIFY_CSV, densify_table(densification_series(snapshots)))
    if clustering:
        repo.write_table(
            CLUSTERING_CSV,
            pd.DataFrame(clustering, columns=["label", "size", "average_clustering"]),
        )


def _run_theorem(config: ExperimentConfig, repo: AbstractArtifactRepo, outcome: RunOutcome) -> None:
    record = outcome.record
    generator = config.generator
    run, infected = theorem_run(
        generator.n,
        generator.k,
        generator.r,
        config.cascade.m,
        record.generator_seed,
        record.cascade_seed,
    )
    record.stalled = run.stalled
    record.reached = infected.size
    label = "partial" if run.stalled else f"snapshot-{config.cascade.m}"
    repo.write_snapshot(label, infected)
    record.snapshots.append(infected.meta())
    repo.write_table(OCCUPANCY_CSV, occupancy_table(run.occupancy))
    repo.write_table(CLIQUISH_CSV, degrees_table(run.cliquish))
    repo.write_table(f"degrees-{config.cascade.m}.csv", degrees_table(run.total))
    outcome.theorem = run


def execute_run(config: ExperimentConfig, index: int, out_dir: Path) -> RunOutcome:
    """
    Run one pipeline instance. Failures are recorded on the returned record.

    :param config: experiment config
    :type config: ExperimentConfig
    :param index: run index
    :type index: int
    :param out_dir: experiment directory
    :type out_dir: Path
    :return: record and aggregation inputs
    :rtype: RunOutcome
    """
    seed = run_seed(config.experiment.base_seed, index)
    generator_seed, cascade_seed = spawn_seeds(seed)
    outcome = RunOutcome(
        record=RunRecord(
            index=index,
            seed=seed,
            generator_seed=generator_seed,
            cascade_seed=cascade_seed,
        )
    )
    repo = get_artifact_repository(out_dir / RUN_DIR_TEMPLATE.format(index=index), out_dir)
    logger.info(f"Run {index} of {config.experiment.name} started (seed {seed})")
    try:
        if config.experiment.kind == PIPELINE_THEOREM:
            _run_theorem(config, repo, outcome)
        else:
            _run_cascade(config, repo, outcome)
    except Exception as e:
        logger.exception(f"Run {index} of {config.experiment.name} failed")
        outcome.record.error = f"{type(e).__name__}: {getattr(e, 'detail', None) or e}"
    outcome.record.files = repo.files
    logger.info(
        f"Run {index} finished: stalled={outcome.record.stalled}, error={outcome.record.error}"
    )
    return outcome


def _aggregate_cascade(
    config: ExperimentConfig, repo: AbstractArtifactRepo, outcomes: list[RunOutcome]
) -> list[Path]:
    plot_inputs = []
    merged: dict[int, DegreeHistogram] = {}
    for outcome in outcomes:
        for checkpoint, hist in outcome.histograms.items():
            merged[checkpoint] = merged.get(checkpoint, DegreeHistogram()).merge(hist)
    fits = []
    for checkpoint in sorted(merged):
        plot_inputs.append(repo.write_table(f"degrees-{checkpoint}.csv", degrees_table(merged[checkpoint])))
        if config.metrics.fit_range is not None:
            fit = _fit_or_none(merged[checkpoint], config.metrics.fit_range, config.metrics.log_bin_ratio)
            fits.append((f"degrees-{checkpoint}", fit))
    if fits:
        plot_inputs.append(repo.write_table(FITS_CSV, fits_table(fits)))
    dips = [dip for outcome in outcomes for dip in outcome.dips]
    if dips:
        repo.write_table(NCP_DIPS_CSV, ncp_dips_table(dips))
    return plot_inputs


def _aggregate_theorem(
    config: ExperimentConfig, repo: AbstractArtifactRepo, outcomes: list[RunOutcome]
) -> list[Path]:
    runs = [o.theorem for o in outcomes if o.theorem is not None]
    if not runs:
        return []
    generator = config.generator
    m = config.cascade.m
    report = summarize_theorem(
        runs,
        generator.n,
        generator.k,
        generator.r,
        m,
        config.experiment.base_seed,
        config.metrics.fit_range,
    )
    repo.write_model("theorem.json", report)
    row = {
        "runs": report.runs,
        "stalled_runs": report.stalled_runs,
        "yule_alpha": report.yule_alpha,
        "tv_distance": report.tv_distance,
        "predicted_exponent": report.predicted_exponent,
        "cliquish_exponent": report.cliquish_fit.exponent if report.cliquish_fit else None,
        "total_exponent": report.total_fit.exponent if report.total_fit else None,
    }
    repo.write_table(THEOREM_CSV, pd.DataFrame([row]))
    return [
        repo.write_table(OCCUPANCY_CSV, occupancy_table(report.occupancy)),
        repo.write_table(YULE_CSV, occupancy_table(report.genus_sizes)),
        repo.write_table(CLIQUISH_CSV, degrees_table(report.cliquish)),
        repo.write_table(f"degrees-{m}.csv", degrees_table(report.total)),
        repo.write_table(
            FITS_CSV,
            fits_table([("cliquish-degrees", report.cliquish_fit), (f"degrees-{m}", report.total_fit)]),
        ),
    ]


def run_experiment(
    config: ExperimentConfig, output_root: Path | None = None, workers: int | None = None
) -> Manifest:
    """
    Execute every run of an experiment, aggregate, emit plot tables and write the manifest.

    Run ``i`` is seeded with ``base_seed + i``. A failing run is recorded in the manifest
    and does not stop its siblings.

    :param config: validated config
    :type config: ExperimentConfig
    :param output_root: overrides the configured output root
    :type output_root: Path | None
    :param workers: parallel runs, overriding the config and settings
    :type workers: int | None
    :return: the manifest, also written as ``manifest.json``
    :rtype: Manifest
    """
    out_dir = output_directory(config, output_root)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = workers or config.experiment.workers or settings.workers
    runs = config.experiment.runs
    logger.info(f"Experiment {config.experiment.name}: {runs} runs, {workers} workers -> {out_dir}")

    if workers > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=min(workers, runs)) as pool:
            outcomes = list(pool.map(execute_run, repeat(config), range(runs), repeat(out_dir)))
    else:
        outcomes = [execute_run(config, index, out_dir) for index in range(runs)]

    aggregate = get_artifact_repository(out_dir / AGGREGATE_DIR, out_dir)
    if config.experiment.kind == PIPELINE_THEOREM:
        plot_inputs = _aggregate_theorem(config, aggregate, outcomes)
    else:
        plot_inputs = _aggregate_cascade(config, aggregate, outcomes)
        for outcome in outcomes:
            run_dir = out_dir / RUN_DIR_TEMPLATE.format(index=outcome.record.index)
            plot_inputs += [
                run_dir / name
                for name in (DIAMETER_CSV, DENSIFY_CSV)
                if (run_dir / name).is_file()
            ]

    plots = get_artifact_repository(out_dir / PLOTS_DIR, out_dir)
    if plot_inputs:
        emit_plot_data(plot_inputs, plots, ratio=config.metrics.log_bin_ratio)

    files = sorted(
        [f for outcome in outcomes for f in outcome.record.files]
        + aggregate.files
        + plots.files
        + [MANIFEST_FILE]
    )
    manifest = Manifest(
        name=config.experiment.name,
        config=config,
        config_sha256=config_digest(config),
        versions=_versions(),
        runs=[outcome.record for outcome in outcomes],
        files=files,
        created_at=datetime.now(timezone.utc),
    )
    get_artifact_repository(out_dir).write_model(MANIFEST_FILE, manifest)
    flagged = [r.index for r in manifest.runs if r.flagged]
    if flagged:
        logger.warning(f"Flagged runs: {flagged}")
    logger.info(f"Manifest written to {out_dir / MANIFEST_FILE}")
    return manifest
