"""
Brute-force and analytic references: the species/genus growth process, clique occupancy
of planted clique graphs and exhaustive minimum conductance.
"""

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy import stats

from src.conf.constants import (
    EXHAUSTIVE_NODE_LIMIT,
    ENUMERATION_TOO_LARGE,
    ENUMERATION_BAD_SIZE,
    CONDUCTANCE_ZERO_VOLUME,
    PARTITION_MISMATCH,
    POWER_LAW_BAD_EXPONENT,
    YULE_BAD_ALPHA,
)
from src.conf.errors import (
    EnumerationGuardError,
    FitUndefinedError,
    ParameterError,
    PartitionMismatchError,
    UndefinedConductanceError,
)
from src.conf.logger import logger
from src.graph.core import Graph, VertexSet
from src.graph.infected import InfectedGraph
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.schemas.metrics import DegreeHistogram, SlopeFit
from src.schemas.oracles import OccupancyHistogram, TheoremReport, TheoremRun, YuleParams
from src.services.cascades import run_with_snapshots
from src.services.degrees import degree_distribution, fit_power_law_slope, log_binned
from src.services.generators import clique_partition, planted_clique_model
from src.services.seeding import run_seed, spawn_seeds


def _histogram(sizes: np.ndarray) -> dict[int, int]:
    tally = np.bincount(sizes)
    return {int(s): int(tally[s]) for s in np.flatnonzero(tally)}


def yule_process(params: YuleParams) -> OccupancyHistogram:
    """
    Grow ``steps`` species from a single one. Each new species picks a uniform existing
    species; with probability ``1 - alpha_yule`` it joins that species' genus, otherwise
    it founds a new genus.

    :param params: process parameters
    :type params: YuleParams
    :return: histogram of genus sizes
    :rtype: OccupancyHistogram
    """
    rng = np.random.default_rng(params.seed)
    picks = rng.random(params.steps)
    coins = rng.random(params.steps)
    genus_of = [0]
    sizes = [1]
    for t in range(1, params.steps):
        if coins[t] < params.alpha_yule:
            genus = len(sizes)
            sizes.append(1)
        else:
            genus = genus_of[int(picks[t] * t)]
            sizes[genus] += 1
        genus_of.append(genus)
    logger.debug(f"Yule process: {len(sizes)} genera from {params.steps} species")
    return OccupancyHistogram(counts=_histogram(np.array(sizes)))


def clique_occupancy(partition: np.ndarray, infected: VertexSet) -> OccupancyHistogram:
    """
    Number of infected vertices in every clique, cliques without infection excluded.

    :param partition: clique label of every vertex
    :type partition: np.ndarray
    :param infected: infected vertices
    :type infected: VertexSet
    :return: occupancy histogram
    :rtype: OccupancyHistogram
    :raise: PartitionMismatchError if the partition does not cover the vertices
    """
    partition = np.asarray(partition, dtype=np.int64)
    if partition.shape[0] != infected.node_count:
        raise PartitionMismatchError(detail=PARTITION_MISMATCH)
    per_clique = np.bincount(partition[infected.members])
    return OccupancyHistogram(counts=_histogram(per_clique[per_clique > 0]))


def cliquish_degrees(partition: np.ndarray, infected: VertexSet) -> np.ndarray:
    """
    Number of infected clique-mates of every infected vertex.

    :param partition: clique label of every vertex
    :type partition: np.ndarray
    :param infected: infected vertices
    :type infected: VertexSet
    :return: one value per member of ``infected``, in member order
    :rtype: np.ndarray
    :raise: PartitionMismatchError if the partition does not cover the vertices
    """
    partition = np.asarray(partition, dtype=np.int64)
    if partition.shape[0] != infected.node_count:
        raise PartitionMismatchError(detail=PARTITION_MISMATCH)
    labels = partition[infected.members]
    return np.bincount(labels)[labels] - 1


def occupancy_tv_distance(a: OccupancyHistogram, b: OccupancyHistogram) -> float:
    """
    Total-variation distance between the normalised histograms.

    :param a: first histogram
    :type a: OccupancyHistogram
    :param b: second histogram
    :type b: OccupancyHistogram
    :return: a value in ``[0, 1]``
    :rtype: float
    """
    pa, pb = a.pmf(), b.pmf()
    return 0.5 * sum(abs(pa.get(s, 0.0) - pb.get(s, 0.0)) for s in set(pa) | set(pb))


def exhaustive_min_conductance(g: Graph, size: int) -> tuple[Fraction, VertexSet]:
    """
    Exact minimum conductance over all vertex subsets of the given size.

    Conductance is evaluated from a dense adjacency matrix, independently of the metrics
    code. Ties go to the lexicographically first subset.

    :param g: graph with at most 20 vertices
    :type g: Graph
    :param size: subset size in ``[1, n - 1]``
    :type size: int
    :return: the minimum and a witness
    :rtype: tuple[Fraction, VertexSet]
    :raise: EnumerationGuardError if ``g`` is too large
    :raise: UndefinedConductanceError if every subset has a zero-degree side
    """
    n = g.node_count
    if n > EXHAUSTIVE_NODE_LIMIT:
        raise EnumerationGuardError(detail=ENUMERATION_TOO_LARGE)
    if not 1 <= size <= n - 1:
        raise ParameterError(detail=ENUMERATION_BAD_SIZE)
    adjacency = nx.to_numpy_array(g.to_networkx(), nodelist=range(n), dtype=np.int64)
    degrees = adjacency.sum(axis=1)
    total = int(degrees.sum())

    subsets = np.array(list(itertools.combinations(range(n), size)), dtype=np.int64)
    masks = np.zeros((subsets.shape[0], n), dtype=np.int64)
    np.put_along_axis(masks, subsets, 1, axis=1)
    volumes = masks @ degrees
    cuts = volumes - ((masks @ adjacency) * masks).sum(axis=1)
    denominators = np.minimum(volumes, total - volumes)
    defined = np.flatnonzero(denominators > 0)
    if defined.size == 0:
        raise UndefinedConductanceError(detail=CONDUCTANCE_ZERO_VOLUME)

    approx = cuts[defined] / denominators[defined]
    near = defined[approx <= approx.min() * (1 + 1e-9)]
    best = min(near.tolist(), key=lambda i: (Fraction(int(cuts[i]), int(denominators[i])), i))
    return Fraction(int(cuts[best]), int(denominators[best])), VertexSet(n, subsets[best])


def sample_discrete_power_law(exponent: float, size: int, seed: int | None = None) -> np.ndarray:
    """
    Draw from ``P(x) = x**-a / zeta(a)`` on ``x >= 1``.

    :param exponent: ``a`` or ``-a``, with ``a > 1``
    :type exponent: float
    :param size: number of draws
    :type size: int
    :param seed: PRNG seed
    :type seed: int | None
    :return: integer samples
    :rtype: np.ndarray
    """
    a = abs(exponent)
    if a <= 1:
        raise ParameterError(detail=POWER_LAW_BAD_EXPONENT)
    return stats.zipf.rvs(a, size=size, random_state=np.random.default_rng(seed))


def theorem_run(
    n: int, k: int, r: float, m: int, generator_seed: int, cascade_seed: int
) -> tuple[TheoremRun, InfectedGraph]:
    """
    One RETIG run on ``PCM(n, k, r)`` stopped at ``m`` infected vertices.

    :return: occupancy and degree histograms of the run, and the contagious network
    :rtype: tuple[TheoremRun, InfectedGraph]
    """
    g = planted_clique_model(n, k, r, generator_seed)
    result = run_with_snapshots(
        g,
        CascadeParams(model=CascadeModel.RETIG, m=m),
        SnapshotSchedule(checkpoints=[m]),
        cascade_seed,
    )
    infected = result.partial if result.stalled else result.snapshots[-1]
    members = infected.underlying_set(n)
    partition = clique_partition(n, k)
    run = TheoremRun(
        occupancy=clique_occupancy(partition, members),
        cliquish=DegreeHistogram.from_degrees(cliquish_degrees(partition, members)),
        total=degree_distribution(infected.graph),
        stalled=result.stalled,
    )
    return run, infected


def _fit_or_none(hist: DegreeHistogram, fit_range: tuple[float, float]) -> SlopeFit | None:
    try:
        return fit_power_law_slope(log_binned(hist), fit_range, hist)
    except FitUndefinedError as e:
        logger.warning(f"Fit undefined: {e.detail}")
        return None


def summarize_theorem(
    runs: list[TheoremRun],
    n: int,
    k: int,
    r: float,
    m: int,
    seed: int,
    fit_range: tuple[float, float] | None = None,
) -> TheoremReport:
    """
    Merge per-run histograms and compare clique occupancy with the growth process at
    ``alpha_yule = r / (1 + r)``, simulated once per run with ``m`` species.

    :param runs: per-run outcomes
    :type runs: list[TheoremRun]
    :param seed: base seed of the reference simulations
    :type seed: int
    :param fit_range: degree range of the slope fits, ``(1, k)`` by default
    :type fit_range: tuple[float, float] | None
    :return: the report
    :rtype: TheoremReport
    """
    alpha = r / (1 + r)
    if not 0 < alpha <= 1:
        raise ParameterError(detail=YULE_BAD_ALPHA)
    fit_range = fit_range or (1, k)
    occupancy, cliquish, total = OccupancyHistogram(runs=0), DegreeHistogram(), DegreeHistogram()
    genus_sizes = OccupancyHistogram(runs=0)
    for i, run in enumerate(runs):
        occupancy = occupancy.merge(run.occupancy)
        cliquish = cliquish.merge(run.cliquish)
        total = total.merge(run.total)
        genus_sizes = genus_sizes.merge(
            yule_process(YuleParams(alpha_yule=alpha, steps=m, seed=run_seed(seed, i)))
        )
    report = TheoremReport(
        n=n,
        k=k,
        r=r,
        m=m,
        runs=len(runs),
        stalled_runs=sum(run.stalled for run in runs),
        yule_alpha=alpha,
        tv_distance=occupancy_tv_distance(occupancy, genus_sizes),
        predicted_exponent=-1 - r,
        occupancy=occupancy,
        genus_sizes=genus_sizes,
        cliquish=cliquish,
        total=total,
        cliquish_fit=_fit_or_none(cliquish, fit_range),
        total_fit=_fit_or_none(total, fit_range),
    )
    logger.info(
        f"Occupancy vs growth process: TV {report.tv_distance:.4f} over {len(runs)} runs"
    )
    return report


def pcm_theorem_check(
    n: int,
    k: int,
    r: float,
    m: int,
    runs: int,
    base_seed: int = 0,
    fit_range: tuple[float, float] | None = None,
) -> TheoremReport:
    """
    Run ``runs`` independent RETIG cascades on planted clique graphs and summarise them.

    Run ``i`` uses the seed ``base_seed + i``; its generator and cascade seeds are spawned
    from it.

    :param n: number of vertices
    :type n: int
    :param k: clique size
    :type k: int
    :param r: random-degree ratio
    :type r: float
    :param m: infected count at which runs stop
    :type m: int
    :param runs: number of runs
    :type runs: int
    :param base_seed: seed of run 0
    :type base_seed: int
    :return: the report
    :rtype: TheoremReport
    """
    outcomes = []
    for i in range(runs):
        generator_seed, cascade_seed = spawn_seeds(run_seed(base_seed, i))
        outcome, _ = theorem_run(n, k, r, m, generator_seed, cascade_seed)
        outcomes.append(outcome)
    return summarize_theorem(outcomes, n, k, r, m, base_seed, fit_range)
